#include "tracekit/testfn/bump.hpp"

#include <algorithm>
#include <cmath>

#include "tracekit/util/error.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit {

double bump_profile(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return std::exp(-1.0 / u);
}

double bump_profile_d1(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    return std::exp(-1.0 / u) * (-2.0 * t / (u * u));
}

double bump_profile_d2(double t) {
    const double u = 1.0 - t * t;
    if (u <= 0.0) return 0.0;
    const double u2 = u * u;
    const double t2 = t * t;
    return std::exp(-1.0 / u) * (4.0 * t2 / (u2 * u2) - 2.0 / u2 - 8.0 * t2 / (u2 * u));
}

double eval_bump(const BumpND& b, const Eigen::VectorXd& x) {
    if (x.size() != b.center.size()) fail(ErrorCode::InvalidArgument, "bump: dimension mismatch");
    const double rho = (x - b.center).norm();
    return b.amplitude * bump_profile(rho / b.radius);
}

int BumpSum::dim() const {
    return terms.empty() ? 0 : static_cast<int>(terms.front().center.size());
}

BumpSum single(const BumpND& b) {
    if (!(b.radius > 0.0)) fail(ErrorCode::InvalidArgument, "bump radius must be positive");
    BumpSum s;
    s.terms.push_back(b);
    return s;
}

BumpSum scaled(const BumpSum& f, double factor) {
    BumpSum s = f;
    for (auto& t : s.terms) t.amplitude *= factor;
    return s;
}

BumpSum operator+(const BumpSum& a, const BumpSum& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.dim() != b.dim()) fail(ErrorCode::InvalidArgument, "bump sum: dimension mismatch");
    if (a.average.size() != b.average.size()) {
        fail(ErrorCode::InvalidArgument, "bump sum: cannot add averaged and plain sums");
    }
    BumpSum s = a;
    s.terms.insert(s.terms.end(), b.terms.begin(), b.terms.end());
    s.k_invariant = a.k_invariant && b.k_invariant;
    return s;
}

namespace {

Eigen::VectorXd rotate(const Eigen::VectorXd& x, const KAverage& k, double phi) {
    Eigen::VectorXd y = x;
    const double c = std::cos(phi), s = std::sin(phi);
    y(k.axis_i) = c * x(k.axis_i) - s * x(k.axis_j);
    y(k.axis_j) = s * x(k.axis_i) + c * x(k.axis_j);
    return y;
}

/// Average over the rotation angle of g_t(R x) for each term t, integrating
/// only over the angles where R x lies in the support ball of t.
template <class G>
double averaged(const BumpSum& f, const Eigen::VectorXd& x, G&& g) {
    if (f.average.empty()) {
        double v = 0.0;
        for (const auto& t : f.terms) v += g(t, x);
        return v;
    }
    const KAverage& k = f.average.front();
    const double rx = std::hypot(x(k.axis_i), x(k.axis_j));
    const double ax = std::atan2(x(k.axis_j), x(k.axis_i));
    const GaussRule& gl = gauss_legendre(std::clamp(k.nodes / 2, 16, 512));
    double total = 0.0;
    for (const auto& t : f.terms) {
        const double rc = std::hypot(t.center(k.axis_i), t.center(k.axis_j));
        const double ac = std::atan2(t.center(k.axis_j), t.center(k.axis_i));
        double delta2 = 0.0;
        for (int a = 0; a < x.size(); ++a) {
            if (a == k.axis_i || a == k.axis_j) continue;
            delta2 += (x(a) - t.center(a)) * (x(a) - t.center(a));
        }
        const double denom = 2.0 * rx * rc;
        const double num = delta2 + rx * rx + rc * rc - t.radius * t.radius;
        if (denom <= 1e-300 || num <= -denom) {
            double s = 0.0;
            for (int m = 0; m < k.nodes; ++m) s += g(t, rotate(x, k, 2.0 * M_PI * m / k.nodes));
            total += s / k.nodes;
            continue;
        }
        if (num >= denom) continue;
        const double half = std::acos(num / denom);
        const double mid = ac - ax;
        double s = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * g(t, rotate(x, k, mid + half * gl.x[i]));
        total += s * half / (2.0 * M_PI);
    }
    return total;
}

}  // namespace

double eval(const BumpSum& f, const Eigen::VectorXd& x) {
    return averaged(f, x, [](const BumpND& t, const Eigen::VectorXd& y) { return eval_bump(t, y); });
}

void support_box(const BumpSum& f, Eigen::VectorXd& lo, Eigen::VectorXd& hi) {
    if (f.empty()) fail(ErrorCode::InvalidArgument, "support_box: empty sum");
    const int d = f.dim();
    lo = Eigen::VectorXd::Constant(d, INFINITY);
    hi = Eigen::VectorXd::Constant(d, -INFINITY);
    for (const auto& t : f.terms) {
        for (int i = 0; i < d; ++i) {
            lo(i) = std::min(lo(i), t.center(i) - t.radius);
            hi(i) = std::max(hi(i), t.center(i) + t.radius);
        }
    }
    if (!f.average.empty()) {
        const KAverage& k = f.average.front();
        double rmax = 0.0;
        for (const auto& t : f.terms) {
            rmax = std::max(rmax, std::hypot(t.center(k.axis_i), t.center(k.axis_j)) + t.radius);
        }
        lo(k.axis_i) = lo(k.axis_j) = -rmax;
        hi(k.axis_i) = hi(k.axis_j) = rmax;
    }
}

double support_radius(const BumpSum& f) {
    double r = 0.0;
    for (const auto& t : f.terms) r = std::max(r, t.center.norm() + t.radius);
    return r;
}

double apply_Dx(const BumpND& b, double alpha, const Eigen::VectorXd& x) {
    if (x.size() != 3 || b.center.size() != 3) fail(ErrorCode::InvalidArgument, "D_x acts on R^3");
    if (alpha == 0.0) fail(ErrorCode::InvalidArgument, "D_x requires alpha != 0");
    const Eigen::VectorXd d = x - b.center;
    const double rho = d.norm();
    const double r = b.radius;
    const double t = rho / r;
    double lap = 0.0;
    if (t >= 1.0) return 0.0;
    if (rho < 1e-9 * r) {
        lap = 2.0 * bump_profile_d2(0.0) / (r * r);
    } else {
        const double p1 = bump_profile_d1(t);
        const double p2 = bump_profile_d2(t);
        for (int i = 1; i <= 2; ++i) {
            const double c2 = d(i) * d(i) / (rho * rho);
            lap += p2 * c2 / (r * r) + p1 / r * (1.0 - c2) / rho;
        }
    }
    return b.amplitude * lap / (2.0 * M_PI * M_PI * alpha * alpha);
}

double apply_Dx(const BumpSum& f, double alpha, const Eigen::VectorXd& x) {
    if (!f.average.empty()) {
        const KAverage& k = f.average.front();
        if (std::min(k.axis_i, k.axis_j) != 1 || std::max(k.axis_i, k.axis_j) != 2) {
            fail(ErrorCode::UnsupportedChart, "D_x of an average is defined for rotations of (x1, x2)");
        }
    }
    return averaged(f, x, [&](const BumpND& t, const Eigen::VectorXd& y) { return apply_Dx(t, alpha, y); });
}

}  // namespace tracekit
