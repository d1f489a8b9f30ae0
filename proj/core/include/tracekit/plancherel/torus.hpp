#pragma once

#include <complex>

#include "tracekit/groups/matrix.hpp"

namespace tracekit {

enum class TorusId { SplitA, CompactB };

/// A = {diag(a, 1/a) : a != 0} charted by (sign, x = log|a|); B = rotations charted by the angle.
struct TorusDescriptor {
    TorusId id = TorusId::SplitA;
    int weyl_order = 1;

    GroupElement element_a(int sign, double x) const;
    GroupElement element_b(double phi) const;
};

TorusDescriptor split_torus();
TorusDescriptor compact_torus();

/// rho^A_{eps,s}(diag(a, 1/a)) = |a|^{-2 pi i s} sgn(a)^eps, rho^B_n(k_phi) = e^{-i n phi}.
struct TorusCharacter {
    TorusId torus = TorusId::SplitA;
    int eps = 0;
    double s = 0.0;
    int n = 0;

    static TorusCharacter split(int eps, double s);
    static TorusCharacter compact(int n);

    std::complex<double> value(const GroupElement& t, const NumericPolicy& p = default_policy()) const;
};

/// H_u = [[u, 0], [0, -u]] in the split Cartan, H_v = [[0, v], [-v, 0]] in the compact one.
struct CartanElement {
    TorusId torus = TorusId::SplitA;
    double param = 0.0;
    AlgebraElement matrix;
};

CartanElement cartan_u(double u);
CartanElement cartan_v(double v);

/// True when the torus element commutes with the Cartan element.
bool centralizes(const GroupElement& t, const CartanElement& h, double tol);

/// chi(X) = e^{-2 pi i tr(X H)}.
std::complex<double> chi_g(const AlgebraElement& x, const CartanElement& h);

/// Sl(2) coordinates of Ad(g) H for the charts used by the torus traces:
/// Ad(k_theta n_x) H_u and Ad(k_psi a_r) H_v.
Eigen::Vector3d split_orbit_point(double u, double theta, double x);
Eigen::Vector3d compact_orbit_point(double v, double psi, double r);

}  // namespace tracekit
