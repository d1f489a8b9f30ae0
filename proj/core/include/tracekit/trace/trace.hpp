#pragma once

#include "tracekit/orbits/orbit_measure.hpp"
#include "tracekit/orbits/orbits.hpp"
#include "tracekit/orbits/semidirect.hpp"
#include "tracekit/testfn/separable.hpp"
#include "tracekit/trace/divergence.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit {

/// One-dimensional unitary character of a stabilizer.
struct StabRep {
    enum class Kind { Trivial, LineChar, TorusCharA, TorusCharB, SO2Char };
    Kind kind = Kind::Trivial;
    double s = 0.0;  // LineChar, TorusCharA
    int eps = 0;     // TorusCharA: sign character on the component of -1
    int n = 0;       // TorusCharB
    int m = 0;       // SO2Char

    static StabRep trivial() { return {}; }
    static StabRep line(double s) { return {Kind::LineChar, s, 0, 0, 0}; }
    static StabRep torus_a(int eps, double s) { return {Kind::TorusCharA, s, eps, 0, 0}; }
    static StabRep torus_b(int n) { return {Kind::TorusCharB, 0.0, 0, n, 0}; }
    static StabRep so2(int m) { return {Kind::SO2Char, 0.0, 0, 0, m}; }
};

/// Value on component `component` at stabilizer chart coordinates c.
///   LineChar(s): exp(-2 pi i s t);  TorusCharA(eps, s): sign^eps exp(-2 pi i s t);
///   TorusCharB(n): exp(-i n theta);  SO2Char(m): exp(i m theta).
cplx stab_rep_value(const StabRep& rho, int component, std::span<const double> c);

struct InducedRepDescriptor {
    SemidirectDescriptor sd;
    CharacterPoint chi;
    OrbitClass orbit;
    StabilizerDescriptor stab;
    StabRep stab_rep;
    /// Mackey regularity of the orbit space; stored, not verified (set when the stabilizer is compact).
    bool regular = false;
};

/// Classifies the orbit of xi, builds its stabilizer and checks that the stabilizer
/// fixes xi and that rho fits it; throws InvalidArgument or UnsupportedFamily.
InducedRepDescriptor make_induced_rep(const SemidirectDescriptor& sd, const Eigen::VectorXd& xi,
                                      const StabRep& rho, const NumericPolicy& p = default_policy());

/// Integral of phi2 against rho over the stabilizer of the orbit point xi.
cplx stabilizer_integral(const InducedRepDescriptor& rep, const GroupChartFn& phi2, const Eigen::VectorXd& xi,
                         const QuadratureSpec& q);

/// Trace of pi(phi) through the orbit form: phi1-hat on the orbit times the
/// stabilizer integral, over eps_i <= |xi| <= R_i for each schedule point.
TraceResult trace_eq1(const InducedRepDescriptor& rep, const SeparableTestFn& phi, const QuadratureSpec& q,
                      const CutoffSchedule& cs, const NumericPolicy& p = default_policy());

/// Compact-stabilizer trace with the orbit integral cut at the decay radius of phi1-hat;
/// throws NotCompactStabilizer.
TraceResult trace_compact(const InducedRepDescriptor& rep, const SeparableTestFn& phi, const QuadratureSpec& q,
                          const NumericPolicy& p = default_policy());

/// The M0U factor of R^n x| SL(n): integral of phi2 over m u(x) with Haar measure.
double sln_m0u_integral(const GroupChartFn& phi2, int n, const QuadratureSpec& q);

/// Integral of phi1-hat(lambda e1) dlambda / |lambda| over 1/R <= |lambda| <= R
/// times the M0U factor; phi2 in the KAM0U chart without a K factor.
TraceResult trace_rn_sln(const SeparableTestFn& phi, int n, const CutoffSchedule& cs, const QuadratureSpec& q,
                         const NumericPolicy& p = default_policy());

/// Haar integral of phi2 over G0 = {+-n_x}, the centralizer of E in SL(2,R).
double g0_integral(const GroupChartFn& phi2, const QuadratureSpec& q);

/// Integral of phi1-hat(mu E) dmu / mu over [1/R, R] times the G0 factor.
TraceResult nilpotent_divergence_sl2(const SeparableTestFn& phi, const CutoffSchedule& cs, const QuadratureSpec& q,
                                     const NumericPolicy& p = default_policy());

struct So12TraceOptions {
    /// Also run the unregularized evaluation with cutoffs at this multiple of the windows.
    bool brute_force = false;
    double brute_force_factor = 2.0;
    /// Minimum tensor nodes per axis for the x-integrals; raised to resolve the phase.
    int x_nodes = 48;
    int max_x_nodes = 256;
    /// The z-window ends where |phi1-hat| falls below this fraction of its scale.
    double z_decay_rtol = 1e-8;
};

/// trace pi_{s,alpha}(phi) on R^3 x| SO0(1,2) through the D_x-regularized z,t form.
/// Diagnostics: "bound" (pi C), "max_Dx", "t_window", "z_window", and with
/// brute force "brute_force_re", "brute_force_im".
TraceResult trace_r3_so12(double s, double alpha, const SeparableTestFn& phi, const QuadratureSpec& q,
                          const So12TraceOptions& opt = {});

}  // namespace tracekit
