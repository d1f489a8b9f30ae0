#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tracekit/groups/matrix.hpp"

namespace tracekit {

enum class GroupChart {
    Constant,     // no coordinates; the function is constant
    SL2_KAM0U,    // (theta, lambda, x): g = k(theta) diag(1/lambda, lambda) u(x)
    SL3_KAM0U,    // (lambda, theta_m, t_m, y_m, x1, x2), K omitted
    SL2_KAN,      // (theta, t, x): g = k(theta) a_t n_x
    SL2_CONJ,     // (tr g, g01 - g10), invariant under conjugation by SO(2)
    SO12_KUA,     // (theta, z, t)
    SO12_CONJ,    // (h00 - 1, tr h - 3), invariant under conjugation by K
    SO2_ANGLE,    // (theta)
};

std::string_view chart_name(GroupChart c);
int chart_coords(GroupChart c);
bool chart_is_conjugation_invariant(GroupChart c);

struct ChartFactor {
    double center = 0.0;
    double radius = 1.0;
    double amplitude = 1.0;
};

/// Product of one-dimensional profile bumps in chart coordinates.
struct GroupChartFn {
    GroupChart chart = GroupChart::Constant;
    std::vector<std::optional<ChartFactor>> factors;
    double amplitude = 1.0;
    bool k_invariant = false;  // invariant under conjugation by K
    /// Number of angles for conjugation averaging over K (0 means none).
    int conj_average_nodes = 0;

    double eval_coords(std::span<const double> c) const;
    double eval(const GroupElement& g) const;
    /// When the support in coordinate i is bounded: its interval.
    bool coordinate_support(int i, double& lo, double& hi) const;
};

GroupChartFn constant_chart_fn(double value = 1.0);
GroupChartFn make_chart_fn(GroupChart chart, std::vector<std::optional<ChartFactor>> factors,
                           double amplitude = 1.0);

/// True when f depends on g only through its conjugacy class (its trace).
bool is_class_function(const GroupChartFn& f);

/// Upper bound for tr h over the support of an SO0(1,2) chart function, when the
/// chart makes it available.
std::optional<double> so12_trace_bound(const GroupChartFn& f);

/// Upper bound for |tr g| over the support of an SL(2,R) chart function.
std::optional<double> sl2_trace_bound(const GroupChartFn& f);

/// Chart coordinates of g; throws UnsupportedChart.
std::vector<double> chart_coordinates(GroupChart chart, const GroupElement& g);

}  // namespace tracekit
