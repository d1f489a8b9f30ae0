#include "tracekit/testfn/chart_fn.hpp"

#include <algorithm>
#include <cmath>

#include "tracekit/groups/decompositions.hpp"
#include "tracekit/testfn/bump.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {

std::string_view chart_name(GroupChart c) {
    switch (c) {
        case GroupChart::Constant: return "constant";
        case GroupChart::SL2_KAM0U: return "sl2_kam0u";
        case GroupChart::SL3_KAM0U: return "sl3_kam0u";
        case GroupChart::SL2_KAN: return "sl2_kan";
        case GroupChart::SL2_CONJ: return "sl2_conj";
        case GroupChart::SO12_KUA: return "so12_kua";
        case GroupChart::SO12_CONJ: return "so12_conj";
        case GroupChart::SO2_ANGLE: return "so2_angle";
    }
    return "?";
}

int chart_coords(GroupChart c) {
    switch (c) {
        case GroupChart::Constant: return 0;
        case GroupChart::SL2_KAM0U: return 3;
        case GroupChart::SL3_KAM0U: return 6;
        case GroupChart::SL2_KAN: return 3;
        case GroupChart::SL2_CONJ: return 2;
        case GroupChart::SO12_KUA: return 3;
        case GroupChart::SO12_CONJ: return 2;
        case GroupChart::SO2_ANGLE: return 1;
    }
    return 0;
}

bool chart_is_conjugation_invariant(GroupChart c) {
    return c == GroupChart::Constant || c == GroupChart::SL2_CONJ || c == GroupChart::SO12_CONJ ||
           c == GroupChart::SO2_ANGLE;
}

GroupChartFn constant_chart_fn(double value) {
    GroupChartFn f;
    f.chart = GroupChart::Constant;
    f.amplitude = value;
    f.k_invariant = true;
    return f;
}

GroupChartFn make_chart_fn(GroupChart chart, std::vector<std::optional<ChartFactor>> factors, double amplitude) {
    if (static_cast<int>(factors.size()) != chart_coords(chart)) {
        fail(ErrorCode::InvalidArgument, "chart function: one factor slot per coordinate expected");
    }
    for (const auto& f : factors) {
        if (f && !(f->radius > 0.0)) fail(ErrorCode::InvalidArgument, "chart factor radius must be positive");
    }
    GroupChartFn g;
    g.chart = chart;
    g.factors = std::move(factors);
    g.amplitude = amplitude;
    g.k_invariant = chart_is_conjugation_invariant(chart);
    return g;
}

namespace {

double angle_mod(double theta) {
    double t = std::fmod(theta, 2.0 * M_PI);
    if (t < -M_PI) t += 2.0 * M_PI;
    if (t >= M_PI) t -= 2.0 * M_PI;
    return t;
}

double factor_value(const ChartFactor& f, double c, bool periodic) {
    double d = c - f.center;
    if (periodic) d = angle_mod(d);
    return f.amplitude * bump_profile(d / f.radius);
}

bool periodic_coordinate(GroupChart c, int i) {
    switch (c) {
        case GroupChart::SL2_KAM0U:
        case GroupChart::SL2_KAN:
        case GroupChart::SO12_KUA:
        case GroupChart::SO2_ANGLE: return i == 0;
        default: return false;
    }
}

}  // namespace

double GroupChartFn::eval_coords(std::span<const double> c) const {
    if (static_cast<int>(c.size()) != chart_coords(chart)) {
        fail(ErrorCode::InvalidArgument, "chart function: coordinate count mismatch");
    }
    double v = amplitude;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!factors[i]) continue;
        v *= factor_value(*factors[i], c[i], periodic_coordinate(chart, static_cast<int>(i)));
        if (v == 0.0) return 0.0;
    }
    return v;
}

bool GroupChartFn::coordinate_support(int i, double& lo, double& hi) const {
    if (i < 0 || i >= static_cast<int>(factors.size()) || !factors[i]) return false;
    lo = factors[i]->center - factors[i]->radius;
    hi = factors[i]->center + factors[i]->radius;
    return true;
}

std::vector<double> chart_coordinates(GroupChart chart, const GroupElement& g) {
    const Mat& m = g.m;
    switch (chart) {
        case GroupChart::Constant: return {};
        case GroupChart::SL2_KAM0U: {
            if (g.family != Family::SL2R) break;
            const double lambda = std::hypot(m(1, 1), m(0, 1));
            const double c = m(1, 1) / lambda, s = -m(0, 1) / lambda;
            const double l10 = -s * m(0, 0) + c * m(1, 0);
            return {std::atan2(s, c), lambda, l10 / lambda};
        }
        case GroupChart::SL2_KAN: {
            if (g.family != Family::SL2R) break;
            const IwasawaKAN d = iwasawa_kan(g);
            return {std::atan2(d.k.m(1, 0), d.k.m(0, 0)), std::log(d.a.m(0, 0)), d.n.m(0, 1)};
        }
        case GroupChart::SL2_CONJ:
            if (g.family != Family::SL2R) break;
            return {m(0, 0) + m(1, 1), m(0, 1) - m(1, 0)};
        case GroupChart::SO12_KUA: {
            if (g.family != Family::SO12) break;
            const IwasawaKUA d = iwasawa_so12(g);
            return {d.theta, d.z, d.t};
        }
        case GroupChart::SO12_CONJ:
            if (g.family != Family::SO12) break;
            return {m(0, 0) - 1.0, m.trace() - 3.0};
        case GroupChart::SO2_ANGLE:
            if (g.family != Family::SO2) break;
            return {std::atan2(m(1, 0), m(0, 0))};
        case GroupChart::SL3_KAM0U:
            fail(ErrorCode::UnsupportedChart, "sl3_kam0u: only coordinate evaluation is supported");
    }
    fail(ErrorCode::FamilyMismatch,
         std::string("chart ") + std::string(chart_name(chart)) + " does not apply to " +
             std::string(family_name(g.family)));
}

bool is_class_function(const GroupChartFn& f) {
    switch (f.chart) {
        case GroupChart::Constant: return true;
        case GroupChart::SO12_CONJ: return !f.factors[0];
        case GroupChart::SL2_CONJ: return !f.factors[1];
        default: return false;
    }
}

std::optional<double> so12_trace_bound(const GroupChartFn& f) {
    double lo = 0.0, hi = 0.0;
    if (f.chart == GroupChart::SO12_CONJ) {
        if (f.coordinate_support(1, lo, hi)) return 3.0 + hi;
        if (f.coordinate_support(0, lo, hi)) return 3.0 * (1.0 + hi);
        return std::nullopt;
    }
    if (f.chart == GroupChart::SO12_KUA) {
        double zlo = 0.0, zhi = 0.0, tlo = 0.0, thi = 0.0;
        if (!f.coordinate_support(1, zlo, zhi) || !f.coordinate_support(2, tlo, thi)) return std::nullopt;
        const double z = std::max(std::abs(zlo), std::abs(zhi));
        const double t = std::max(std::abs(tlo), std::abs(thi));
        return 3.0 * (std::cosh(t) + 0.5 * z * z * std::exp(t));
    }
    return std::nullopt;
}

std::optional<double> sl2_trace_bound(const GroupChartFn& f) {
    double lo = 0.0, hi = 0.0;
    auto extent = [&](int i, double& m) {
        if (!f.coordinate_support(i, lo, hi)) return false;
        m = std::max(std::abs(lo), std::abs(hi));
        return true;
    };
    double a = 0.0, x = 0.0;
    switch (f.chart) {
        case GroupChart::SL2_CONJ:
            if (extent(0, a)) return a;
            return std::nullopt;
        case GroupChart::SL2_KAN:
            if (!extent(1, a) || !extent(2, x)) return std::nullopt;
            return std::sqrt(2.0 * std::exp(2.0 * a) * (2.0 + x * x));
        case GroupChart::SL2_KAM0U: {
            if (!f.coordinate_support(1, lo, hi) || lo <= 0.0) return std::nullopt;
            const double lmin = lo, lmax = hi;
            if (!extent(2, x)) return std::nullopt;
            return std::sqrt(2.0 * (1.0 / (lmin * lmin) + lmax * lmax * (1.0 + x * x)));
        }
        default:
            return std::nullopt;
    }
}

double GroupChartFn::eval(const GroupElement& g) const {
    if (chart == GroupChart::Constant) return amplitude;
    if (conj_average_nodes <= 0) {
        const std::vector<double> c = chart_coordinates(chart, g);
        return eval_coords(c);
    }
    double total = 0.0;
    for (int i = 0; i < conj_average_nodes; ++i) {
        const double th = 2.0 * M_PI * i / conj_average_nodes;
        GroupElement k;
        if (g.family == Family::SL2R) {
            k = sl2_rotation(th);
        } else if (g.family == Family::SO12) {
            k = so12_rotation(th);
        } else {
            fail(ErrorCode::UnsupportedChart, "conjugation average needs SL(2,R) or SO0(1,2)");
        }
        const std::vector<double> c = chart_coordinates(chart, k * g * inverse(k));
        total += eval_coords(c);
    }
    return total / conj_average_nodes;
}

}  // namespace tracekit
