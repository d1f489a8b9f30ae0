#include "tracekit/testfn/fourier.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "tracekit/util/error.hpp"

namespace tracekit {

namespace {

using cplx = std::complex<double>;

constexpr double kTableMax = 128.0;
constexpr double kProjectionMax = 512.0;
constexpr int kChebDegree = 24;

double sphere_area(int d) {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

/// Tensor Gauss transform of one bump at frequency eta (no pairing).
cplx tensor_transform(const BumpND& b, const Eigen::VectorXd& eta, int per_axis) {
    const int d = static_cast<int>(b.center.size());
    const GaussRule& g = gauss_legendre(per_axis);
    std::vector<std::vector<cplx>> phase(d, std::vector<cplx>(per_axis));
    std::vector<double> u(per_axis);
    for (int i = 0; i < per_axis; ++i) u[i] = b.radius * g.x[i];
    for (int a = 0; a < d; ++a) {
        for (int i = 0; i < per_axis; ++i) {
            const double x = b.center(a) + u[i];
            phase[a][i] = std::polar(g.w[i] * b.radius, -2.0 * M_PI * x * eta(a));
        }
    }
    std::vector<int> idx(d, 0);
    cplx total = 0.0;
    for (;;) {
        double rho2 = 0.0;
        for (int a = 0; a < d; ++a) rho2 += u[idx[a]] * u[idx[a]];
        const double t2 = rho2 / (b.radius * b.radius);
        if (t2 < 1.0) {
            cplx w = std::exp(-1.0 / (1.0 - t2));
            for (int a = 0; a < d; ++a) w *= phase[a][idx[a]];
            total += w;
        }
        int a = 0;
        while (a < d && ++idx[a] == per_axis) idx[a++] = 0;
        if (a == d) break;
    }
    return b.amplitude * total;
}

Eigen::VectorXd frequency(const Eigen::VectorXd& xi, const Eigen::MatrixXd& pairing) {
    if (pairing.rows() != xi.size() || pairing.cols() != xi.size()) {
        fail(ErrorCode::InvalidArgument, "fourier: pairing size mismatch");
    }
    return pairing * xi;
}

template <class F>
cplx rotation_average(const BumpSum& f, const Eigen::VectorXd& eta, F&& g) {
    if (f.average.empty()) return g(eta);
    const KAverage& k = f.average.front();
    Eigen::VectorXd e = eta;
    cplx total = 0.0;
    for (int m = 0; m < k.nodes; ++m) {
        const double phi = 2.0 * M_PI * m / k.nodes;
        const double c = std::cos(phi), s = std::sin(phi);
        e(k.axis_i) = c * eta(k.axis_i) - s * eta(k.axis_j);
        e(k.axis_j) = s * eta(k.axis_i) + c * eta(k.axis_j);
        total += g(e);
    }
    return total / static_cast<double>(k.nodes);
}

constexpr int kTablePanels = static_cast<int>(kTableMax);

/// Chebyshev coefficients of F_d on unit panels [p, p + 1], built on first use.
struct ChebTable {
    std::array<std::once_flag, kTablePanels> flags;
    std::array<std::array<double, kChebDegree + 1>, kTablePanels> coeffs;
};

void build_panel(int d, int p, std::array<double, kChebDegree + 1>& out) {
    constexpr int n = kChebDegree + 1;
    std::array<double, n> vals;
    for (int i = 0; i < n; ++i) {
        vals[i] = radial_profile_transform(d, p + 0.5 + 0.5 * std::cos(M_PI * (i + 0.5) / n));
    }
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += vals[i] * std::cos(M_PI * j * (i + 0.5) / n);
        out[j] = (j == 0 ? 1.0 : 2.0) * s / n;
    }
}

const std::array<double, kChebDegree + 1>& table_panel(int d, int p) {
    static std::array<ChebTable, 5> tables;
    ChebTable& t = tables[d];
    std::call_once(t.flags[p], [&] { build_panel(d, p, t.coeffs[p]); });
    return t.coeffs[p];
}

/// Projection of the unit radial profile onto one axis in d dimensions,
/// tabulated at composite Gauss nodes of [0, 1]:
///   A_d(x) = |S^{d-2}| * integral_0^sqrt(1-x^2) p(sqrt(x^2 + r^2)) r^(d-2) dr,
/// so that F_d(k) = 2 * integral_0^1 A_d(x) cos(2 pi k x) dx.
struct Projection {
    std::vector<double> x, w;
};

const Projection& projection(int d) {
    static std::array<std::once_flag, 5> flags;
    static std::array<Projection, 5> cache;
    std::call_once(flags[d], [d] {
        Projection& pr = cache[d];
        composite_rule(0.0, 1.0, 160, 20, pr.x, pr.w);
        const double area = 2.0 * std::pow(M_PI, 0.5 * (d - 1)) / std::tgamma(0.5 * (d - 1));
        for (std::size_t i = 0; i < pr.x.size(); ++i) {
            const double x = pr.x[i];
            const double top = std::sqrt(std::max(0.0, 1.0 - x * x));
            const double a = composite_sum<double>(
                [&](double r) { return bump_profile(std::sqrt(x * x + r * r)) * std::pow(r, d - 2); }, 0.0, top, 8,
                20);
            pr.w[i] *= 2.0 * area * a;
        }
    });
    return cache[d];
}

}  // namespace

double radial_profile_transform(int d, double k) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "radial transform: dimension must be positive");
    k = std::abs(k);
    const int panels = std::max(8, static_cast<int>(std::ceil(3.0 * k)));
    constexpr int nodes = 20;
    if (d == 1) {
        return 2.0 * composite_sum<double>(
                         [&](double r) { return bump_profile(r) * std::cos(2.0 * M_PI * k * r); }, 0.0,
                         1.0, panels, nodes);
    }
    if (k < 1e-8) {
        return sphere_area(d) * composite_sum<double>(
                                    [&](double r) { return bump_profile(r) * std::pow(r, d - 1); }, 0.0,
                                    1.0, panels, nodes);
    }
    if (d == 3) {
        return 2.0 / k *
               composite_sum<double>(
                   [&](double r) { return bump_profile(r) * r * std::sin(2.0 * M_PI * k * r); }, 0.0, 1.0,
                   panels, nodes);
    }
    if ((d == 2 || d == 4) && k < kProjectionMax) {
        const Projection& pr = projection(d);
        double total = 0.0;
        for (std::size_t i = 0; i < pr.x.size(); ++i) total += pr.w[i] * std::cos(2.0 * M_PI * k * pr.x[i]);
        return total;
    }
    const double nu = 0.5 * d - 1.0;
    return 2.0 * M_PI * std::pow(k, -nu) *
           composite_sum<double>(
               [&](double r) {
                   return bump_profile(r) * std::cyl_bessel_j(nu, 2.0 * M_PI * k * r) * std::pow(r, 0.5 * d);
               },
               0.0, 1.0, panels, nodes);
}

double radial_profile_transform_fast(int d, double k) {
    k = std::abs(k);
    if (d < 1 || d > 4 || k >= kTableMax) return radial_profile_transform(d, k);
    const int p = static_cast<int>(k);
    const double x = 2.0 * (k - p) - 1.0;
    const auto& c = table_panel(d, p);
    double b1 = 0.0, b2 = 0.0;
    for (int j = kChebDegree; j >= 1; --j) {
        const double b0 = 2.0 * x * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

FourierValue fourier(const BumpND& b, const Eigen::VectorXd& xi, const Eigen::MatrixXd& pairing,
                     const QuadratureSpec& q) {
    return fourier(single(b), xi, pairing, q);
}

FourierValue fourier(const BumpSum& f, const Eigen::VectorXd& xi, const Eigen::MatrixXd& pairing,
                     const QuadratureSpec& q) {
    if (f.empty()) return {};
    const int d = f.dim();
    if (xi.size() != d) fail(ErrorCode::InvalidArgument, "fourier: frequency dimension mismatch");
    const Eigen::VectorXd eta = frequency(xi, pairing);
    const double budget = std::pow(2.0, 25);
    auto at = [&](int per_axis) {
        return rotation_average(f, eta, [&](const Eigen::VectorXd& e) {
            cplx s = 0.0;
            for (const auto& t : f.terms) s += tensor_transform(t, e, per_axis);
            return s;
        });
    };
    const double scale = fourier_scale(f);
    int n = std::max(4, q.nodes * std::max(1, q.panels) / 4);
    cplx prev = at(n);
    for (int level = 0; level <= q.max_refine; ++level) {
        const int next = 2 * n;
        if (next > 512 || std::pow(static_cast<double>(next), d) > budget) break;
        const cplx cur = at(next);
        const double diff = std::abs(cur - prev);
        if (diff <= q.rtol * scale || diff <= q.atol) return {cur, diff};
        prev = cur;
        n = next;
    }
    fail(ErrorCode::QuadratureDidNotConverge, "fourier: tensor quadrature did not converge");
}

std::complex<double> fourier_fast(const BumpSum& f, const Eigen::VectorXd& xi, const Eigen::MatrixXd& pairing) {
    if (f.empty()) return 0.0;
    const int d = f.dim();
    if (xi.size() != d) fail(ErrorCode::InvalidArgument, "fourier: frequency dimension mismatch");
    const Eigen::VectorXd eta = frequency(xi, pairing);
    const double k = eta.norm();
    const KAverage* avg = f.average.empty() ? nullptr : &f.average.front();
    const double eta_plane = avg ? std::hypot(eta(avg->axis_i), eta(avg->axis_j)) : 0.0;
    cplx s = 0.0;
    for (const auto& t : f.terms) {
        const double mag = t.amplitude * std::pow(t.radius, d) * radial_profile_transform_fast(d, k * t.radius);
        if (!avg) {
            s += std::polar(mag, -2.0 * M_PI * t.center.dot(eta));
            continue;
        }
        double rest = t.center.dot(eta);
        rest -= t.center(avg->axis_i) * eta(avg->axis_i) + t.center(avg->axis_j) * eta(avg->axis_j);
        const double rc = std::hypot(t.center(avg->axis_i), t.center(avg->axis_j));
        const double j0 = rc * eta_plane == 0.0 ? 1.0 : std::cyl_bessel_j(0.0, 2.0 * M_PI * rc * eta_plane);
        s += std::polar(mag * j0, -2.0 * M_PI * rest);
    }
    return s;
}

double fourier_scale(const BumpSum& f) {
    double s = 0.0;
    for (const auto& t : f.terms) {
        s += std::abs(t.amplitude) * std::pow(t.radius, f.dim()) * radial_profile_transform_fast(f.dim(), 0.0);
    }
    return s;
}

double decay_radius(const BumpSum& f, double rtol) {
    if (f.empty()) return 0.0;
    const int d = f.dim();
    double rmin = INFINITY;
    for (const auto& t : f.terms) rmin = std::min(rmin, t.radius);
    const double kcap = kTableMax / rmin;
    const double step = 1.0 / (32.0 * support_radius(f) + 32.0);
    const double window = 8.0 / rmin;
    const double target = rtol * fourier_scale(f);
    double last_above = 0.0;
    for (double kk = 0.0; kk <= kcap; kk += step) {
        double e = 0.0;
        for (const auto& t : f.terms) {
            e += std::abs(t.amplitude) * std::pow(t.radius, d) * std::abs(radial_profile_transform_fast(d, kk * t.radius));
        }
        if (e > target) last_above = kk;
        if (kk - last_above > window) break;
    }
    return std::min(kcap, last_above + step);
}

}  // namespace tracekit
