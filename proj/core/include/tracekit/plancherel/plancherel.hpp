#pragma once

#include <array>
#include <complex>
#include <vector>

#include "tracekit/plancherel/torus.hpp"
#include "tracekit/testfn/separable.hpp"
#include "tracekit/trace/divergence.hpp"

namespace tracekit {

/// Node counts for the torus traces and the orbital integrals.
struct TorusQuadrature {
    int x_nodes = 640;        // N-parameter of G/A
    int t_nodes = 1280;       // log|a| on A
    int r_nodes = 400;        // radial parameter of G/B
    int theta_nodes = 1024;   // periodic trapezoid on B
    int cartan_nodes_per_unit = 24;

    int weyl_cartan_nodes = 64;
    int weyl_angle_nodes = 64;
    int weyl_chart_nodes = 192;
};

/// The a-profile of pi^A after the G/A integral: F_sigma(t), sigma = +-1.
struct SplitProfile {
    double u = 0.0;
    std::vector<double> t, w;
    std::vector<cplx> plus, minus;
    cplx orbital;  // integral over G/A of phi1-hat(Ad(g) H_u)
    double phi2_e = 0.0;
    double x_window = 0.0;
    double t_window = 0.0;
};

/// The angle profile of pi^B after the G/B integral, on a uniform grid.
struct CompactProfile {
    double v = 0.0;
    std::vector<cplx> f;
    cplx orbital;
    double phi2_e = 0.0;
    double r_window = 0.0;
};

/// Throws InvalidArgument unless phi is K-invariant in both arguments.
void require_k_invariant(const SeparableTestFn& phi);

SplitProfile split_profile(double u, const SeparableTestFn& phi, const TorusQuadrature& q = {},
                           double node_scale = 1.0, const NumericPolicy& p = default_policy());
CompactProfile compact_profile(double v, const SeparableTestFn& phi, const TorusQuadrature& q = {},
                               double node_scale = 1.0, const NumericPolicy& p = default_policy());

cplx split_trace(const SplitProfile& pr, int eps, double s);
cplx compact_trace(const CompactProfile& pr, int n);

/// sum over eps of the integral over |s| <= smax of split_trace (plain ds).
cplx split_dual_sum(const SplitProfile& pr, double smax);
/// sum over |n| <= nmax of compact_trace.
cplx compact_dual_sum(const CompactProfile& pr, int nmax);

TraceResult trace_piA(int eps, double s, double u, const SeparableTestFn& phi, const TorusQuadrature& q = {},
                      const NumericPolicy& p = default_policy());
TraceResult trace_piB(int n, double v, const SeparableTestFn& phi, const TorusQuadrature& q = {},
                      const NumericPolicy& p = default_policy());

struct Truncation {
    int n_max = 16;
    double s_max = 12.0;
    double u_max = 4.0;
    double v_max = 4.0;
};

struct Eq10Result {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_imag = 0.0;
    double rhs_imag = 0.0;
    /// Change of the rhs between the truncation and its half.
    double tail_estimate = 0.0;
};

/// Integral over G/T of phi-hat(Ad(g) H, e) against the dual-measure integral of
/// the traces: the dual of A is (1/2) ds times counting on eps, that of B counting on Z.
Eq10Result eq10_check(const TorusDescriptor& torus, const CartanElement& h, const SeparableTestFn& phi,
                      const Truncation& tr, const TorusQuadrature& q = {},
                      const NumericPolicy& p = default_policy());

/// J_A(u) = integral of f(Ad(g) H_u) over G/A, dg = dtheta/pi dx on k_theta n_x.
double split_orbital_integral(const BumpSum& f, double u, const TorusQuadrature& q = {});
/// J_B(v) = integral of f(Ad(g) H_v) over G/B, dg = 2 sinh(2r) dr dpsi on k_psi a_r.
double compact_orbital_integral(const BumpSum& f, double v, const TorusQuadrature& q = {});

/// int f = c_A int J_A(u) |u|^p_A du + c_B int J_B(v) |v|^p_B dv.
struct WeylFit {
    int p_a = 2;
    int p_b = 2;
    double c_a = 0.0;
    double c_b = 0.0;
    /// max over the family of |fit - lhs| / max |lhs|.
    double residual = 0.0;
    double condition = 0.0;
};

struct WeylRow {
    double lhs = 0.0;
    std::array<double, 2> split{};    // index p - 1
    std::array<double, 2> compact{};
};

struct WeylReport {
    std::vector<WeylRow> rows;
    std::vector<WeylFit> fits;  // every (p_A, p_B) in {1, 2}^2
    WeylFit best;
    /// The same residual for fixed predictions: |eta(H)| / |W_T| and the weights
    /// that the Plancherel formula's |u|, |v| would imply here.
    WeylFit eta_prediction;
    WeylFit plancherel_prediction;
};

WeylRow weyl_row(const BumpSum& f, const TorusQuadrature& q = {});

/// Least-squares fit over the family; throws IllConditionedFit when the
/// winning fit has condition number above policy.fit_condition_max.
WeylReport weyl_check(const std::vector<BumpSum>& family, const TorusQuadrature& q = {},
                      const NumericPolicy& p = default_policy());

std::vector<BumpSum> default_weyl_family();

enum class DensityMode { PaperWeights, FittedWeights };

/// rhs = sum_eps int int c_A |u|^p_A tr pi^A ds du + sum_n int c_B |v|^p_B tr pi^B dv.
struct DensityWeights {
    double p_a = 1.0;
    double c_a = 2.0;
    double p_b = 1.0;
    double c_b = 4.0;
};

DensityWeights paper_weights();
/// Weights implied by a Weyl fit: phi1(0) = |det P| int phi1-hat.
DensityWeights fitted_weights(const WeylFit& fit);

struct PlancherelReport {
    DensityMode mode = DensityMode::FittedWeights;
    double lhs = 0.0;
    double rhs_total = 0.0;
    double rhs_a = 0.0;
    double rhs_b = 0.0;
    double rhs_imag = 0.0;
    Truncation truncation;
    double rel_err = 0.0;
    DensityWeights density_fit;
};

/// Both density modes from one pass over the Cartan grids.
struct PlancherelPair {
    PlancherelReport fitted;
    PlancherelReport paper;
};

PlancherelPair plancherel_verify_both(const SeparableTestFn& phi, const Truncation& tr, const WeylFit& fit,
                                      const TorusQuadrature& q = {}, const NumericPolicy& p = default_policy());

PlancherelReport plancherel_verify(const SeparableTestFn& phi, const Truncation& tr, DensityMode mode,
                                   const WeylFit& fit, const TorusQuadrature& q = {},
                                   const NumericPolicy& p = default_policy());

}  // namespace tracekit
