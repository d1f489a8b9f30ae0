#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace tracekit {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

/// Gauss-Legendre rule with n nodes, cached per n.
const GaussRule& gauss_legendre(int n);

struct QuadratureSpec {
    int nodes = 16;       // Gauss nodes per panel (or per axis for tensor rules)
    int panels = 4;       // initial composite panels
    int max_refine = 8;   // panel doublings allowed
    double rtol = 1e-10;
    double atol = 1e-300;
    /// Optional cutoff box, one interval per integration variable.
    std::vector<std::pair<double, double>> box;
};

template <class T>
struct QuadResult {
    T value{};
    double err = 0.0;
    bool converged = false;
};

/// Fixed composite Gauss rule: appends nodes and weights for [a, b].
void composite_rule(double a, double b, int panels, int nodes, std::vector<double>& x,
                    std::vector<double>& w);

/// Composite rule on [a, b] whose panels grow geometrically away from `center`.
void graded_rule(double a, double b, double center, double first_width, int nodes,
                 std::vector<double>& x, std::vector<double>& w);

template <class T, class F>
T composite_sum(F&& f, double a, double b, int panels, int nodes) {
    const GaussRule& g = gauss_legendre(nodes);
    const double h = (b - a) / panels;
    T total{};
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        T part{};
        for (int i = 0; i < nodes; ++i) part += g.w[i] * f(mid + 0.5 * h * g.x[i]);
        total += part * (0.5 * h);
    }
    return total;
}

/// Composite Gauss quadrature with panel doubling until two successive
/// estimates agree to rtol (relative) or atol (absolute).
template <class T, class F>
QuadResult<T> integrate(F&& f, double a, double b, const QuadratureSpec& q) {
    QuadResult<T> r;
    if (a == b) {
        r.converged = true;
        return r;
    }
    int panels = std::max(1, q.panels);
    T prev = composite_sum<T>(f, a, b, panels, q.nodes);
    for (int level = 0; level < q.max_refine; ++level) {
        panels *= 2;
        T cur = composite_sum<T>(f, a, b, panels, q.nodes);
        const double diff = std::abs(cur - prev);
        r.value = cur;
        r.err = diff;
        if (diff <= q.rtol * std::abs(cur) || diff <= q.atol) {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    return r;
}

/// Periodic trapezoid rule on [a, a + period) with n points.
template <class T, class F>
T periodic_sum(F&& f, double a, double period, int n) {
    T total{};
    const double h = period / n;
    for (int i = 0; i < n; ++i) total += f(a + i * h);
    return total * h;
}

}  // namespace tracekit
