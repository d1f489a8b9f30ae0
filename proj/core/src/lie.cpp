#include <cmath>
#include <map>
#include <mutex>

#include "tracekit/groups/lie.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {
namespace {

Mat unit(int n, int r, int c) {
    Mat m = Mat::Zero(n, n);
    m(r, c) = 1.0;
    return m;
}

std::vector<Mat> build_basis(Family f) {
    const int n = matrix_dim(f);
    switch (f) {
        case Family::SL2R: {
            Mat h = unit(2, 0, 0) - unit(2, 1, 1);
            return {h, unit(2, 0, 1), unit(2, 1, 0)};
        }
        case Family::SL3R:
            return {unit(3, 0, 0) - unit(3, 1, 1), unit(3, 1, 1) - unit(3, 2, 2),
                    unit(3, 0, 1), unit(3, 0, 2), unit(3, 1, 2),
                    unit(3, 1, 0), unit(3, 2, 0), unit(3, 2, 1)};
        case Family::SO12:
        case Family::O12:
            return {unit(3, 2, 1) - unit(3, 1, 2), unit(3, 0, 1) + unit(3, 1, 0),
                    unit(3, 0, 2) + unit(3, 2, 0)};
        case Family::SO2: return {unit(2, 1, 0) - unit(2, 0, 1)};
        case Family::O11: return {unit(2, 0, 1) + unit(2, 1, 0)};
        case Family::HEIS3: return {unit(n, 0, 2), unit(n, 1, 2)};
        case Family::UNIP4: return {unit(n, 0, 1), unit(n, 2, 3)};
    }
    return {};
}

struct BasisData {
    std::vector<Mat> basis;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver;
};

const BasisData& basis_data(Family f) {
    static std::mutex mutex;
    static std::map<Family, BasisData> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    BasisData d;
    d.basis = build_basis(f);
    const int n = matrix_dim(f);
    Eigen::MatrixXd flat(n * n, static_cast<int>(d.basis.size()));
    for (std::size_t j = 0; j < d.basis.size(); ++j)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) flat(r * n + c, static_cast<int>(j)) = d.basis[j](r, c);
    d.solver.compute(flat);
    return cache.emplace(f, std::move(d)).first->second;
}

Eigen::VectorXd coords_of(Family f, const Mat& m) {
    const int n = matrix_dim(f);
    Eigen::VectorXd v(n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) v(r * n + c) = m(r, c);
    return basis_data(f).solver.solve(v);
}

}  // namespace

const std::vector<Mat>& algebra_basis(Family f) { return basis_data(f).basis; }

int algebra_rank(Family f) {
    switch (f) {
        case Family::SL3R:
        case Family::HEIS3:
        case Family::UNIP4: return 2;
        default: return 1;
    }
}

AlgebraElement adjoint_action(const GroupElement& g, const AlgebraElement& x) {
    if (g.family != x.family) fail(ErrorCode::FamilyMismatch, "adjoint_action families differ");
    return {x.family, g.m * x.m * g.m.inverse()};
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.family != y.family) fail(ErrorCode::FamilyMismatch, "bracket families differ");
    return {x.family, x.m * y.m - y.m * x.m};
}

Eigen::VectorXd algebra_coords(const AlgebraElement& x) { return coords_of(x.family, x.m); }

Eigen::MatrixXd ad_matrix(const AlgebraElement& x) {
    const auto& basis = algebra_basis(x.family);
    const int d = static_cast<int>(basis.size());
    Eigen::MatrixXd a(d, d);
    for (int j = 0; j < d; ++j) a.col(j) = coords_of(x.family, x.m * basis[j] - basis[j] * x.m);
    return a;
}

Eigen::MatrixXd Ad_matrix(const GroupElement& g) {
    const auto& basis = algebra_basis(g.family);
    const int d = static_cast<int>(basis.size());
    const Mat inv = g.m.inverse();
    Eigen::MatrixXd a(d, d);
    for (int j = 0; j < d; ++j) a.col(j) = coords_of(g.family, g.m * basis[j] * inv);
    return a;
}

std::vector<double> char_poly(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        c[n - k] = -(a * m).trace() / k;
    }
    return c;
}

double eta(const AlgebraElement& x) {
    const auto c = char_poly(ad_matrix(x));
    return c[algebra_rank(x.family)];
}

double trace_form(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.family != y.family) fail(ErrorCode::FamilyMismatch, "trace_form families differ");
    return (x.m * y.m).trace();
}

AlgebraElement sl2_from_coords(const Vec3& c) {
    Mat m(2, 2);
    m << c(0), c(1) + c(2), c(1) - c(2), -c(0);
    return {Family::SL2R, m};
}

Vec3 sl2_to_coords(const AlgebraElement& x) {
    return {x.m(0, 0), 0.5 * (x.m(0, 1) + x.m(1, 0)), 0.5 * (x.m(0, 1) - x.m(1, 0))};
}

Eigen::Matrix3d sl2_Ad_coords(const Mat& g) {
    const double a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    // g X g^{-1} with g^{-1} = [[d, -b], [-c, a]] applied to each coordinate direction.
    Eigen::Matrix3d r;
    const Mat inv = (Mat(2, 2) << d, -b, -c, a).finished();
    for (int j = 0; j < 3; ++j) {
        Vec3 e = Vec3::Zero();
        e(j) = 1.0;
        const Mat y = g * sl2_from_coords(e).m * inv;
        r.col(j) = sl2_to_coords({Family::SL2R, y});
    }
    return r;
}

Eigen::Matrix3d sl2_trace_pairing() { return Eigen::Vector3d(2.0, 2.0, -2.0).asDiagonal(); }

AlgebraElement sl2_H() { return {Family::SL2R, algebra_basis(Family::SL2R)[0]}; }
AlgebraElement sl2_E() { return {Family::SL2R, algebra_basis(Family::SL2R)[1]}; }
AlgebraElement sl2_F() { return {Family::SL2R, algebra_basis(Family::SL2R)[2]}; }

}  // namespace tracekit
