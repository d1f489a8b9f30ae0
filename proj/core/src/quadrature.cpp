#include "tracekit/util/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "tracekit/util/error.hpp"

namespace tracekit {
namespace {

GaussRule build_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 512) fail(ErrorCode::InvalidArgument, "Gauss rule order out of range");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
    return *slot;
}

void composite_rule(double a, double b, int panels, int nodes, std::vector<double>& x,
                    std::vector<double>& w) {
    const GaussRule& g = gauss_legendre(nodes);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int i = 0; i < nodes; ++i) {
            x.push_back(mid + 0.5 * h * g.x[i]);
            w.push_back(0.5 * h * g.w[i]);
        }
    }
}

void graded_rule(double a, double b, double center, double first_width, int nodes,
                 std::vector<double>& x, std::vector<double>& w) {
    if (!(b > a)) return;
    const double c = std::min(std::max(center, a), b);
    auto sweep = [&](double from, double to) {
        const double sign = to > from ? 1.0 : -1.0;
        double pos = from;
        double width = first_width;
        while (sign * (to - pos) > 0.0) {
            double next = pos + sign * width;
            if (sign * (next - to) > 0.0 || sign * (to - next) < 0.25 * width) next = to;
            composite_rule(std::min(pos, next), std::max(pos, next), 1, nodes, x, w);
            pos = next;
            width *= 2.0;
        }
    };
    sweep(c, b);
    sweep(c, a);
}

}  // namespace tracekit
