#include <cmath>

#include "tracekit/groups/lie.hpp"
#include "tracekit/orbits/orbits.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {
namespace {

int sgn(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double lorentz(const Eigen::VectorXd& x) {
    double q = x(0) * x(0);
    for (Eigen::Index i = 1; i < x.size(); ++i) q -= x(i) * x(i);
    return q;
}

bool is_zero(const Eigen::VectorXd& xi, double tol) { return xi.norm() <= tol; }

OrbitClass lorentz_class(HFamily f, const Eigen::VectorXd& xi, bool merge_sheets, double tol) {
    OrbitClass c;
    c.family = f;
    c.representative = xi;
    if (is_zero(xi, tol)) return c;
    const double q = lorentz(xi);
    const double scale = xi.squaredNorm();
    if (std::abs(q) <= 1e-9 * scale) {
        if (f == HFamily::O11) {
            c.label = OrbitLabel::ConeRay;
            c.branch = (xi(0) > 0 ? 0 : 2) + (xi(1) > 0 ? 0 : 1);
        } else if (merge_sheets) {
            c.label = OrbitLabel::Cone;
        } else {
            c.label = xi(0) > 0 ? OrbitLabel::ConeUpper : OrbitLabel::ConeLower;
        }
        return c;
    }
    const double alpha = std::sqrt(std::abs(q));
    c.invariants = {alpha};
    if (q > 0) {
        if (merge_sheets)
            c.label = OrbitLabel::Timelike;
        else
            c.label = xi(0) > 0 ? OrbitLabel::TimelikeUpper : OrbitLabel::TimelikeLower;
    } else {
        c.label = OrbitLabel::Spacelike;
        if (f == HFamily::O11) c.branch = sgn(xi(1));
    }
    return c;
}

}  // namespace

std::string_view label_name(OrbitLabel l) {
    switch (l) {
        case OrbitLabel::Zero: return "Zero";
        case OrbitLabel::TimelikeUpper: return "TimelikeUpper";
        case OrbitLabel::TimelikeLower: return "TimelikeLower";
        case OrbitLabel::Timelike: return "Timelike";
        case OrbitLabel::ConeUpper: return "ConeUpper";
        case OrbitLabel::ConeLower: return "ConeLower";
        case OrbitLabel::Cone: return "Cone";
        case OrbitLabel::ConeRay: return "ConeRay";
        case OrbitLabel::Spacelike: return "Spacelike";
        case OrbitLabel::Circle: return "Circle";
        case OrbitLabel::Line: return "Line";
        case OrbitLabel::Point: return "Point";
        case OrbitLabel::Surface: return "Surface";
        case OrbitLabel::Generic: return "Generic";
        case OrbitLabel::Hyperbolic: return "Hyperbolic";
        case OrbitLabel::Elliptic: return "Elliptic";
        case OrbitLabel::Nilpotent: return "Nilpotent";
    }
    return "?";
}

OrbitClass classify_orbit(const SemidirectDescriptor& sd, const CharacterPoint& point,
                          const NumericPolicy& p) {
    const Eigen::VectorXd& xi = point.xi;
    if (xi.size() != sd.n_dim) fail(ErrorCode::InvalidArgument, "character point has wrong dimension");
    const double tol = p.stabilizer_tol;
    OrbitClass c;
    c.family = sd.h_family;
    c.representative = xi;
    switch (sd.h_family) {
        case HFamily::SO12: return lorentz_class(sd.h_family, xi, false, tol);
        case HFamily::O12_COMPACTDEMO: return lorentz_class(sd.h_family, xi, true, tol);
        case HFamily::O11: return lorentz_class(sd.h_family, xi, false, tol);
        case HFamily::SO2:
            if (!is_zero(xi, tol)) {
                c.label = OrbitLabel::Circle;
                c.invariants = {xi.norm()};
            }
            return c;
        case HFamily::HEIS3: {
            const double rho = std::hypot(xi(0), xi(1));
            if (rho > tol) {
                c.label = OrbitLabel::Line;
                c.invariants = {xi(0), xi(1)};
            } else if (std::abs(xi(2)) > tol) {
                c.label = OrbitLabel::Point;
                c.invariants = {xi(2)};
            }
            return c;
        }
        case HFamily::UNIP4: {
            const double q = xi(1);
            const double scale = std::max(1.0, xi.norm());
            if (std::abs(q) > tol * scale) {
                c.label = OrbitLabel::Surface;
                c.invariants = {q, xi(0) * xi(3) - xi(1) * xi(2)};
            } else if (std::hypot(xi(0), xi(3)) > tol * scale) {
                c.label = OrbitLabel::Line;
                c.invariants = {xi(0), xi(3)};
            } else if (std::abs(xi(2)) > tol * scale) {
                c.label = OrbitLabel::Point;
                c.invariants = {xi(2)};
            }
            return c;
        }
        case HFamily::ADJ_SL2R: {
            if (is_zero(xi, tol)) return c;
            const double det = -xi(0) * xi(0) - xi(1) * xi(1) + xi(2) * xi(2);
            const double scale = xi.squaredNorm();
            if (std::abs(det) <= 1e-9 * scale) {
                c.label = OrbitLabel::Nilpotent;
                c.branch = sgn(xi(2));
            } else if (det < 0) {
                c.label = OrbitLabel::Hyperbolic;
                c.invariants = {std::sqrt(-det)};
            } else {
                c.label = OrbitLabel::Elliptic;
                c.branch = sgn(xi(2));
                c.invariants = {sgn(xi(2)) * std::sqrt(det)};
            }
            return c;
        }
        case HFamily::SL2R:
        case HFamily::SL3R:
            if (!is_zero(xi, tol)) c.label = OrbitLabel::Generic;
            return c;
    }
    fail(ErrorCode::UnsupportedFamily, "no classifier for this family");
}

}  // namespace tracekit
