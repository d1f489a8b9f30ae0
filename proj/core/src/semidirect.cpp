#include <cmath>
#include <numbers>

#include "tracekit/groups/lie.hpp"
#include "tracekit/groups/random.hpp"
#include "tracekit/orbits/semidirect.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {
namespace {

struct Slot {
    int r, c;
};

std::vector<Slot> n_slots(HFamily f) {
    if (f == HFamily::HEIS3) return {{0, 3}, {1, 3}, {2, 3}};
    return {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
}

Eigen::MatrixXd plain_action(const GroupElement& h) { return Eigen::MatrixXd(h.m); }

}  // namespace

std::string_view hfamily_name(HFamily f) {
    switch (f) {
        case HFamily::SL2R: return "SL2R";
        case HFamily::SL3R: return "SL3R";
        case HFamily::SO12: return "SO12";
        case HFamily::O11: return "O11";
        case HFamily::SO2: return "SO2";
        case HFamily::O12_COMPACTDEMO: return "O12_COMPACTDEMO";
        case HFamily::HEIS3: return "HEIS3";
        case HFamily::UNIP4: return "UNIP4";
        case HFamily::ADJ_SL2R: return "ADJ_SL2R";
    }
    return "?";
}

Mat n_matrix(HFamily f, const Eigen::VectorXd& b) {
    if (f != HFamily::HEIS3 && f != HFamily::UNIP4)
        fail(ErrorCode::UnsupportedFamily, "n_matrix is defined for HEIS3 and UNIP4");
    const auto slots = n_slots(f);
    if (b.size() != static_cast<Eigen::Index>(slots.size()))
        fail(ErrorCode::InvalidArgument, "wrong number of N-parameters");
    Mat m = Mat::Identity(4, 4);
    for (std::size_t i = 0; i < slots.size(); ++i) m(slots[i].r, slots[i].c) = b(static_cast<Eigen::Index>(i));
    return m;
}

GroupElement h_element(HFamily f, double p0, double p1) {
    Mat m = Mat::Identity(4, 4);
    if (f == HFamily::HEIS3) {
        m(0, 2) = p0;
        m(1, 2) = p1;
        return {Family::HEIS3, m};
    }
    if (f == HFamily::UNIP4) {
        m(0, 1) = p0;
        m(2, 3) = p1;
        return {Family::UNIP4, m};
    }
    fail(ErrorCode::UnsupportedFamily, "h_element is defined for HEIS3 and UNIP4");
}

Eigen::MatrixXd conjugation_action(HFamily f, const GroupElement& h) {
    const auto slots = n_slots(f);
    const int d = static_cast<int>(slots.size());
    const Mat inv = h.m.inverse();
    Eigen::MatrixXd a(d, d);
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e(j) = 1.0;
        const Mat c = h.m * (n_matrix(f, e) - Mat::Identity(4, 4)) * inv;
        for (int i = 0; i < d; ++i) a(i, j) = c(slots[i].r, slots[i].c);
    }
    return a;
}

SemidirectDescriptor make_semidirect(HFamily f) {
    SemidirectDescriptor sd;
    sd.h_family = f;
    switch (f) {
        case HFamily::SL2R:
            sd.n_dim = 2;
            sd.group_family = Family::SL2R;
            sd.action = plain_action;
            sd.pairing = Eigen::MatrixXd::Identity(2, 2);
            break;
        case HFamily::SL3R:
            sd.n_dim = 3;
            sd.group_family = Family::SL3R;
            sd.action = plain_action;
            sd.pairing = Eigen::MatrixXd::Identity(3, 3);
            break;
        case HFamily::SO12:
        case HFamily::O12_COMPACTDEMO:
            sd.n_dim = 3;
            sd.group_family = f == HFamily::SO12 ? Family::SO12 : Family::O12;
            sd.action = plain_action;
            sd.pairing = Eigen::MatrixXd(lorentz_form(3));
            break;
        case HFamily::O11:
            sd.n_dim = 2;
            sd.group_family = Family::O11;
            sd.action = plain_action;
            sd.pairing = Eigen::MatrixXd(lorentz_form(2));
            break;
        case HFamily::SO2:
            sd.n_dim = 2;
            sd.group_family = Family::SO2;
            sd.action = plain_action;
            sd.pairing = Eigen::MatrixXd::Identity(2, 2);
            break;
        case HFamily::HEIS3:
        case HFamily::UNIP4:
            sd.n_dim = f == HFamily::HEIS3 ? 3 : 4;
            sd.group_family = f == HFamily::HEIS3 ? Family::HEIS3 : Family::UNIP4;
            sd.action = [f](const GroupElement& h) { return conjugation_action(f, h); };
            sd.pairing = Eigen::MatrixXd::Identity(sd.n_dim, sd.n_dim);
            break;
        case HFamily::ADJ_SL2R:
            sd.n_dim = 3;
            sd.group_family = Family::SL2R;
            sd.action = [](const GroupElement& h) { return Eigen::MatrixXd(sl2_Ad_coords(h.m)); };
            sd.pairing = Eigen::MatrixXd(sl2_trace_pairing());
            break;
    }
    return sd;
}

GroupElement random_h(const SemidirectDescriptor& sd, std::mt19937_64& rng, double scale) {
    return random_group_element(sd.group_family, rng, scale);
}

CharacterPoint character_point(const SemidirectDescriptor& sd, const Eigen::VectorXd& xi) {
    if (xi.size() != sd.n_dim) fail(ErrorCode::InvalidArgument, "character point has wrong dimension");
    return {xi, sd.pairing};
}

cplx character_value(const CharacterPoint& c, const Eigen::VectorXd& x) {
    const double phase = -2.0 * std::numbers::pi * x.dot(c.pairing * c.xi);
    return {std::cos(phase), std::sin(phase)};
}

CharacterPoint dual_action(const SemidirectDescriptor& sd, const GroupElement& h,
                           const CharacterPoint& xi) {
    if (h.family != sd.group_family)
        fail(ErrorCode::FamilyMismatch, "group element does not belong to the descriptor");
    const Eigen::MatrixXd a_inv = sd.action(inverse(h));
    const Eigen::VectorXd out = sd.pairing.lu().solve(a_inv.transpose() * (sd.pairing * xi.xi));
    return {out, xi.pairing};
}

}  // namespace tracekit
