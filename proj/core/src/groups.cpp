#include <cmath>

#include "tracekit/groups/matrix.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {
namespace {

bool close(const Mat& a, const Mat& b, double tol) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool unipotent_pattern(const Mat& m, Family f, double tol) {
    // Free entries of the unipotent families, as (row, col) pairs.
    auto free = [f](int r, int c) {
        if (f == Family::HEIS3) return c == 2 && r < 2;
        return (r == 0 && c == 1) || (r == 2 && c == 3);
    };
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (free(r, c)) continue;
            const double want = r == c ? 1.0 : 0.0;
            if (std::abs(m(r, c) - want) > tol) return false;
        }
    }
    return true;
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::SL2R: return "SL2R";
        case Family::SL3R: return "SL3R";
        case Family::SO12: return "SO12";
        case Family::SO2: return "SO2";
        case Family::O11: return "O11";
        case Family::O12: return "O12";
        case Family::HEIS3: return "HEIS3";
        case Family::UNIP4: return "UNIP4";
    }
    return "?";
}

int matrix_dim(Family f) {
    switch (f) {
        case Family::SL2R:
        case Family::SO2:
        case Family::O11: return 2;
        case Family::SL3R:
        case Family::SO12:
        case Family::O12: return 3;
        case Family::HEIS3:
        case Family::UNIP4: return 4;
    }
    return 0;
}

bool in_algebra(Family f, const Mat& m, double tol) {
    const int n = matrix_dim(f);
    if (m.rows() != n || m.cols() != n) return false;
    switch (f) {
        case Family::SL2R:
        case Family::SL3R: return std::abs(m.trace()) <= tol;
        case Family::SO12:
        case Family::O12:
        case Family::O11: {
            const Mat j = lorentz_form(n);
            return close(m.transpose() * j + j * m, Mat::Zero(n, n), tol);
        }
        case Family::SO2: return close(m.transpose() + m, Mat::Zero(n, n), tol);
        case Family::HEIS3:
        case Family::UNIP4:
            return unipotent_pattern(m + Mat::Identity(n, n), f, tol) &&
                   std::abs(m.trace()) <= tol;
    }
    return false;
}

bool in_group(Family f, const Mat& m, double tol) {
    const int n = matrix_dim(f);
    if (m.rows() != n || m.cols() != n) return false;
    switch (f) {
        case Family::SL2R:
        case Family::SL3R: return std::abs(m.determinant() - 1.0) <= tol;
        case Family::SO12: {
            const Mat j = lorentz_form(n);
            return close(m.transpose() * j * m, j, tol) && m(0, 0) >= 1.0 - tol &&
                   m.determinant() > 0.0;
        }
        case Family::O12:
        case Family::O11: {
            const Mat j = lorentz_form(n);
            return close(m.transpose() * j * m, j, tol);
        }
        case Family::SO2:
            return close(m.transpose() * m, Mat::Identity(n, n), tol) && m.determinant() > 0.0;
        case Family::HEIS3:
        case Family::UNIP4: return unipotent_pattern(m, f, tol);
    }
    return false;
}

AlgebraElement make_algebra(Family f, const Mat& m, const NumericPolicy& p) {
    if (!in_algebra(f, m, p.algebra_tol))
        fail(ErrorCode::NotInFamily, "matrix is not in the Lie algebra of " + std::string(family_name(f)));
    return {f, m};
}

GroupElement make_group(Family f, const Mat& m, const NumericPolicy& p) {
    if (!in_group(f, m, p.group_tol))
        fail(ErrorCode::NotInFamily, "matrix is not in " + std::string(family_name(f)));
    return {f, m};
}

GroupElement identity(Family f) {
    const int n = matrix_dim(f);
    return {f, Mat::Identity(n, n)};
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.family != b.family) fail(ErrorCode::FamilyMismatch, "product of different families");
    return {a.family, a.m * b.m};
}

GroupElement inverse(const GroupElement& g) { return {g.family, g.m.inverse()}; }

GroupElement mat_exp(const AlgebraElement& x) { return {x.family, mat_exp(x.m)}; }

GroupElement sl2_rotation(double theta) {
    Mat m(2, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    m << c, -s, s, c;
    return {Family::SL2R, m};
}

GroupElement sl2_a(double t) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = std::exp(t);
    m(1, 1) = std::exp(-t);
    return {Family::SL2R, m};
}

GroupElement sl2_n(double x) {
    Mat m = Mat::Identity(2, 2);
    m(0, 1) = x;
    return {Family::SL2R, m};
}

GroupElement so12_rotation(double theta) {
    Mat m = Mat::Identity(3, 3);
    const double c = std::cos(theta), s = std::sin(theta);
    m(1, 1) = c;
    m(1, 2) = -s;
    m(2, 1) = s;
    m(2, 2) = c;
    return {Family::SO12, m};
}

GroupElement so12_u(double z) {
    Mat m(3, 3);
    const double h = 0.5 * z * z;
    m << 1.0 + h, z, -h,
         z, 1.0, -z,
         h, z, 1.0 - h;
    return {Family::SO12, m};
}

GroupElement so12_a(double t) {
    Mat m = Mat::Identity(3, 3);
    const double c = std::cosh(t), s = std::sinh(t);
    m(0, 0) = c;
    m(0, 2) = s;
    m(2, 0) = s;
    m(2, 2) = c;
    return {Family::SO12, m};
}

GroupElement so2_rotation(double theta) {
    GroupElement g = sl2_rotation(theta);
    g.family = Family::SO2;
    return g;
}

GroupElement o11_boost(double t) {
    Mat m(2, 2);
    const double c = std::cosh(t), s = std::sinh(t);
    m << c, s, s, c;
    return {Family::O11, m};
}

}  // namespace tracekit
