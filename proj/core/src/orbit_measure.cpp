#include <algorithm>
#include <cmath>
#include <numbers>

#include "tracekit/groups/lie.hpp"
#include "tracekit/orbits/orbit_measure.hpp"
#include "tracekit/util/error.hpp"
#include "tracekit/util/parallel.hpp"

namespace tracekit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Rest = std::span<const double>;

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

/// Values of the radial coordinate with |embedding| between eps and r, for
/// |embedding|^2 = alpha^2 cosh(2 c) and c >= 0.
std::vector<Interval> cosh_shell(double alpha, double eps, double r, bool symmetric) {
    auto radius = [alpha](double rho) {
        const double ratio = rho * rho / (alpha * alpha);
        return ratio <= 1.0 ? 0.0 : 0.5 * std::acosh(ratio);
    };
    if (r < alpha) return {};
    const double lo = eps <= alpha ? 0.0 : radius(eps);
    const double hi = radius(r);
    if (hi <= lo) return {};
    if (!symmetric) return {{lo, hi}};
    if (lo == 0.0) return {{-hi, hi}};
    return {{-hi, -lo}, {lo, hi}};
}

/// Values of s with eps^2 <= c + s^2 <= r^2.
std::vector<Interval> line_shell(double c, double eps, double r) {
    if (r * r < c) return {};
    const double hi = std::sqrt(r * r - c);
    const double in = eps * eps > c ? std::sqrt(eps * eps - c) : 0.0;
    if (in == 0.0) return {{-hi, hi}};
    if (in >= hi) return {};
    return {{-hi, -in}, {in, hi}};
}

std::vector<Interval> linear_shell(double k, double eps, double r) {
    const double lo = eps / k;
    const double hi = r / k;
    if (hi <= lo) return {};
    return {{lo, hi}};
}

OrbitMeasure point_measure(const OrbitClass& cls, const Eigen::VectorXd& pt) {
    OrbitMeasure m;
    m.cls = cls;
    m.chart_dim = 0;
    m.embedding = [pt](Rest) { return pt; };
    m.density = [](Rest) { return 1.0; };
    return m;
}

Eigen::Vector3d adj_point(const Mat& g, const Eigen::Vector3d& x) { return sl2_Ad_coords(g) * x; }

}  // namespace

OrbitMeasure orbit_measure(const SemidirectDescriptor& sd, const OrbitClass& cls) {
    OrbitMeasure m;
    m.cls = cls;
    const double angle_period = 2.0 * kPi;
    const ChartAxis circle{0.0, angle_period, true};
    auto full_circle = [circle](double) { return std::vector<Interval>{{circle.lo, circle.hi}}; };

    if (cls.label == OrbitLabel::Zero) return point_measure(cls, Eigen::VectorXd::Zero(sd.n_dim));

    switch (sd.h_family) {
        case HFamily::SO12:
        case HFamily::O12_COMPACTDEMO: {
            const bool merged = sd.h_family == HFamily::O12_COMPACTDEMO;
            m.chart_dim = 2;
            m.outer_box = full_circle;
            m.radial_center = [](Rest) { return 0.0; };
            m.radial_scale = 0.25;
            switch (cls.label) {
                case OrbitLabel::TimelikeUpper:
                case OrbitLabel::TimelikeLower:
                case OrbitLabel::Timelike: {
                    const double a = cls.invariants[0];
                    const double s = cls.label == OrbitLabel::TimelikeLower ? -1.0 : 1.0;
                    if (merged) {
                        m.axes = {{-kInf, kInf, false}, circle};
                        m.embedding = [a](Rest c) {
                            const double sh = c[0] < 0 ? -1.0 : 1.0, r = std::abs(c[0]);
                            return vec({sh * a * std::cosh(r), sh * a * std::sinh(r) * std::cos(c[1]),
                                        sh * a * std::sinh(r) * std::sin(c[1])});
                        };
                        m.density = [](Rest c) { return std::sinh(std::abs(c[0])); };
                        m.shell = [a](Rest, double eps, double r) { return cosh_shell(a, eps, r, true); };
                    } else {
                        m.axes = {{0.0, kInf, false}, circle};
                        m.embedding = [a, s](Rest c) {
                            return vec({s * a * std::cosh(c[0]), s * a * std::sinh(c[0]) * std::cos(c[1]),
                                        s * a * std::sinh(c[0]) * std::sin(c[1])});
                        };
                        m.density = [](Rest c) { return std::sinh(c[0]); };
                        m.shell = [a](Rest, double eps, double r) { return cosh_shell(a, eps, r, false); };
                    }
                    return m;
                }
                case OrbitLabel::Spacelike: {
                    const double a = cls.invariants[0];
                    m.axes = {{-kInf, kInf, false}, circle};
                    m.embedding = [a](Rest c) {
                        return vec({a * std::sinh(c[0]), a * std::cosh(c[0]) * std::cos(c[1]),
                                    a * std::cosh(c[0]) * std::sin(c[1])});
                    };
                    m.density = [](Rest c) { return std::cosh(c[0]) / (2.0 * kPi); };
                    m.shell = [a](Rest, double eps, double r) { return cosh_shell(a, eps, r, true); };
                    return m;
                }
                case OrbitLabel::ConeUpper:
                case OrbitLabel::ConeLower:
                case OrbitLabel::Cone: {
                    const double s = cls.label == OrbitLabel::ConeLower ? -1.0 : 1.0;
                    m.axes = {{merged ? -kInf : 0.0, kInf, false}, circle};
                    m.embedding = [s](Rest c) {
                        return vec({s * c[0], std::abs(c[0]) * std::cos(c[1]), std::abs(c[0]) * std::sin(c[1])});
                    };
                    m.density = [](Rest) { return 1.0; };
                    m.shell = [merged](Rest, double eps, double r) {
                        auto iv = linear_shell(std::sqrt(2.0), eps, r);
                        if (merged && !iv.empty()) iv.insert(iv.begin(), Interval{-iv[0].hi, -iv[0].lo});
                        return iv;
                    };
                    return m;
                }
                default: break;
            }
            break;
        }
        case HFamily::O11: {
            m.chart_dim = 1;
            m.radial_center = [](Rest) { return 0.0; };
            if (cls.label == OrbitLabel::ConeRay) {
                const double s0 = (cls.branch & 2) ? -1.0 : 1.0;
                const double s1 = (cls.branch & 1) ? -1.0 : 1.0;
                m.axes = {{0.0, kInf, false}};
                m.embedding = [s0, s1](Rest c) { return vec({s0 * c[0], s1 * c[0]}); };
                m.density = [](Rest c) { return 1.0 / c[0]; };
                m.shell = [](Rest, double eps, double r) { return linear_shell(std::sqrt(2.0), eps, r); };
                m.radial_scale = 0.0;
                m.singular_origin = true;
                return m;
            }
            const double a = cls.invariants[0];
            m.axes = {{-kInf, kInf, false}};
            m.density = [](Rest) { return 1.0; };
            m.shell = [a](Rest, double eps, double r) { return cosh_shell(a, eps, r, true); };
            m.radial_scale = 0.25;
            if (cls.label == OrbitLabel::Spacelike) {
                const double b = cls.branch < 0 ? -1.0 : 1.0;
                m.embedding = [a, b](Rest c) { return vec({b * a * std::sinh(c[0]), b * a * std::cosh(c[0])}); };
            } else {
                const double s = cls.label == OrbitLabel::TimelikeLower ? -1.0 : 1.0;
                m.embedding = [a, s](Rest c) { return vec({s * a * std::cosh(c[0]), s * a * std::sinh(c[0])}); };
            }
            return m;
        }
        case HFamily::SO2: {
            const double rho = cls.invariants[0];
            m.chart_dim = 1;
            m.axes = {circle};
            m.embedding = [rho](Rest c) { return vec({rho * std::cos(c[0]), rho * std::sin(c[0])}); };
            m.density = [rho](Rest) { return rho / (2.0 * kPi); };
            m.shell = [rho, circle](Rest, double eps, double r) {
                if (rho < eps || rho > r) return std::vector<Interval>{};
                return std::vector<Interval>{{circle.lo, circle.hi}};
            };
            m.radial_center = [](Rest) { return 0.0; };
            m.radial_scale = 2.0 * kPi;
            return m;
        }
        case HFamily::HEIS3:
        case HFamily::UNIP4: {
            const Eigen::VectorXd xi = cls.representative;
            if (cls.label == OrbitLabel::Point) return point_measure(cls, xi);
            if (cls.label == OrbitLabel::Line) {
                const int free = 2;
                Eigen::VectorXd base = xi;
                base(free) = 0.0;
                const double c = base.squaredNorm();
                m.chart_dim = 1;
                m.axes = {{-kInf, kInf, false}};
                m.embedding = [base, free](Rest s) {
                    Eigen::VectorXd v = base;
                    v(free) = s[0];
                    return v;
                };
                m.density = [](Rest) { return 1.0; };
                m.shell = [c](Rest, double eps, double r) { return line_shell(c, eps, r); };
                m.radial_center = [](Rest) { return 0.0; };
                m.radial_scale = std::max(1.0, std::sqrt(c));
                return m;
            }
            if (cls.label == OrbitLabel::Surface) {
                const double q = cls.invariants[0];
                const double det = cls.invariants[1];
                m.chart_dim = 2;
                m.axes = {{-kInf, kInf, false}, {-kInf, kInf, false}};
                // Chart (w, p): orbit points (p, q, (p w - det) / q, w).
                m.embedding = [q, det](Rest c) { return vec({c[1], q, (c[1] * c[0] - det) / q, c[0]}); };
                m.density = [q](Rest) { return 1.0 / (q * q); };
                m.shell = [q, det](Rest rest, double eps, double r) {
                    const double p = rest[0];
                    const double a = 1.0 + p * p / (q * q);
                    const double b = -2.0 * p * det / (q * q);
                    const double c = p * p + q * q + det * det / (q * q);
                    auto roots = [&](double level, double& lo, double& hi) {
                        const double disc = b * b - 4.0 * a * (c - level);
                        if (disc <= 0.0) return false;
                        const double sq = std::sqrt(disc);
                        lo = (-b - sq) / (2.0 * a);
                        hi = (-b + sq) / (2.0 * a);
                        return true;
                    };
                    double lo, hi;
                    if (!roots(r * r, lo, hi)) return std::vector<Interval>{};
                    double ilo, ihi;
                    if (eps <= 0.0 || !roots(eps * eps, ilo, ihi)) return std::vector<Interval>{{lo, hi}};
                    return std::vector<Interval>{{lo, ilo}, {ihi, hi}};
                };
                m.outer_box = [](double r) { return std::vector<Interval>{{-r, r}}; };
                m.radial_center = [q, det](Rest rest) {
                    const double p = rest[0];
                    return (p * det / (q * q)) / (1.0 + p * p / (q * q));
                };
                m.radial_scale = std::max(1.0, std::abs(q));
                return m;
            }
            break;
        }
        case HFamily::SL2R:
        case HFamily::SL3R: {
            m.radial_center = [](Rest) { return 0.0; };
            m.radial_scale = 0.5;
            m.shell = [](Rest, double eps, double r) { return linear_shell(1.0, eps, r); };
            if (sd.h_family == HFamily::SL2R) {
                m.chart_dim = 2;
                m.axes = {{0.0, kInf, false}, circle};
                m.outer_box = full_circle;
                m.embedding = [](Rest c) { return vec({c[0] * std::cos(c[1]), c[0] * std::sin(c[1])}); };
                m.density = [](Rest c) { return c[0]; };
            } else {
                m.chart_dim = 3;
                m.axes = {{0.0, kInf, false}, {0.0, kPi, false}, circle};
                m.outer_box = [](double) { return std::vector<Interval>{{0.0, kPi}, {0.0, 2.0 * kPi}}; };
                m.embedding = [](Rest c) {
                    return vec({c[0] * std::sin(c[1]) * std::cos(c[2]), c[0] * std::sin(c[1]) * std::sin(c[2]),
                                c[0] * std::cos(c[1])});
                };
                m.density = [](Rest c) { return c[0] * c[0] * std::sin(c[1]); };
            }
            return m;
        }
        case HFamily::ADJ_SL2R: {
            const ChartAxis half{0.0, kPi, true};
            m.chart_dim = 2;
            m.outer_box = [](double) { return std::vector<Interval>{{0.0, kPi}}; };
            m.radial_center = [](Rest) { return 0.0; };
            if (cls.label == OrbitLabel::Hyperbolic) {
                const double u = cls.invariants[0];
                m.axes = {{-kInf, kInf, false}, half};
                m.embedding = [u](Rest c) {
                    const Eigen::Vector3d y = adj_point(sl2_rotation(c[1]).m, Eigen::Vector3d(u, -u * c[0], -u * c[0]));
                    return Eigen::VectorXd(y);
                };
                m.density = [](Rest) { return 1.0 / kPi; };
                m.shell = [u](Rest, double eps, double r) {
                    const double k = std::sqrt(2.0) * u;
                    return line_shell(1.0 / 2.0, eps / k, r / k);
                };
                m.radial_scale = 0.5 / u;
                return m;
            }
            if (cls.label == OrbitLabel::Elliptic) {
                const double v = cls.invariants[0];
                m.axes = {{0.0, kInf, false}, half};
                m.embedding = [v](Rest c) {
                    const Eigen::Vector3d base(0.0, v * std::sinh(2.0 * c[0]), v * std::cosh(2.0 * c[0]));
                    return Eigen::VectorXd(adj_point(sl2_rotation(c[1]).m, base));
                };
                m.density = [](Rest c) { return 2.0 * std::sinh(2.0 * c[0]); };
                m.shell = [v](Rest, double eps, double r) {
                    auto iv = cosh_shell(std::abs(v), eps, r, false);
                    for (auto& i : iv) {
                        i.lo *= 0.5;
                        i.hi *= 0.5;
                    }
                    return iv;
                };
                m.radial_scale = 0.125;
                return m;
            }
            if (cls.label == OrbitLabel::Nilpotent) {
                const double s = cls.branch < 0 ? -1.0 : 1.0;
                m.axes = {{0.0, kInf, false}, half};
                m.embedding = [s](Rest c) {
                    const Eigen::Vector3d base(0.0, 0.5 * s * c[0], 0.5 * s * c[0]);
                    return Eigen::VectorXd(adj_point(sl2_rotation(c[1]).m, base));
                };
                m.density = [](Rest) { return 1.0 / kPi; };
                m.shell = [](Rest, double eps, double r) { return linear_shell(1.0 / std::sqrt(2.0), eps, r); };
                m.radial_scale = 0.5;
                return m;
            }
            break;
        }
    }
    fail(ErrorCode::UnsupportedFamily, "no orbit measure for this class");
}

namespace {

template <class T>
QuadResult<T> integrate_orbit_impl(const OrbitMeasure& mu, const std::function<T(const Eigen::VectorXd&)>& g,
                                   double eps, double r, const QuadratureSpec& q) {
    QuadResult<T> out;
    if (mu.chart_dim == 0) {
        const Eigen::VectorXd pt = mu.embedding({});
        const double n = pt.norm();
        out.value = (n >= eps && n <= r) ? g(pt) * mu.density({}) : T{};
        out.converged = true;
        return out;
    }

    auto evaluate = [&](int nodes) {
        // Outer tensor grid over axes 1..d-1.
        std::vector<std::vector<double>> ox, ow;
        const int outer = mu.chart_dim - 1;
        if (outer > 0) {
            const auto box = mu.outer_box(r);
            for (int i = 0; i < outer; ++i) {
                const ChartAxis& ax = mu.axes[static_cast<std::size_t>(i + 1)];
                std::vector<double> x, w;
                if (ax.periodic) {
                    const int n = 4 * nodes;
                    const double h = (ax.hi - ax.lo) / n;
                    for (int j = 0; j < n; ++j) {
                        x.push_back(ax.lo + j * h);
                        w.push_back(h);
                    }
                } else if (std::isfinite(box[i].lo) && std::isfinite(box[i].hi) &&
                           std::isfinite(ax.lo) && std::isfinite(ax.hi)) {
                    composite_rule(box[i].lo, box[i].hi, 4 * q.panels, nodes, x, w);
                } else {
                    graded_rule(box[i].lo, box[i].hi, 0.0, 1.0, nodes, x, w);
                }
                ox.push_back(std::move(x));
                ow.push_back(std::move(w));
            }
        }
        std::size_t total = 1;
        for (const auto& x : ox) total *= x.size();
        auto cell = [&](std::size_t idx) {
            std::vector<double> c(static_cast<std::size_t>(mu.chart_dim));
            double weight = 1.0;
            std::size_t rem = idx;
            for (int i = outer - 1; i >= 0; --i) {
                const std::size_t n = ox[static_cast<std::size_t>(i)].size();
                const std::size_t j = rem % n;
                rem /= n;
                c[static_cast<std::size_t>(i + 1)] = ox[static_cast<std::size_t>(i)][j];
                weight *= ow[static_cast<std::size_t>(i)][j];
            }
            const std::span<const double> rest(c.data() + 1, c.size() - 1);
            T sum{};
            for (const Interval& iv : mu.shell(rest, eps, r)) {
                const double centre = std::clamp(mu.radial_center(rest), iv.lo, iv.hi);
                const double first = std::max(mu.radial_scale, 0.5 * std::abs(centre));
                std::vector<double> x, w;
                graded_rule(iv.lo, iv.hi, centre, first > 0.0 ? first : 1e-300, nodes, x, w);
                for (std::size_t j = 0; j < x.size(); ++j) {
                    c[0] = x[j];
                    const std::span<const double> all(c.data(), c.size());
                    sum += w[j] * g(mu.embedding(all)) * mu.density(all);
                }
            }
            return sum * weight;
        };
        const auto parts = parallel_map(total, cell);
        T s{};
        for (const T& v : parts) s += v;
        return s;
    };
    const T coarse = evaluate(q.nodes);
    const T fine = evaluate(2 * q.nodes);
    out.value = fine;
    out.err = std::abs(fine - coarse);
    out.converged = out.err <= q.rtol * std::abs(fine) || out.err <= q.atol;
    return out;
}

}  // namespace

QuadResult<double> integrate_orbit(const OrbitMeasure& mu, const std::function<double(const Eigen::VectorXd&)>& g,
                                   double eps, double r, const QuadratureSpec& q) {
    return integrate_orbit_impl<double>(mu, g, eps, r, q);
}

QuadResult<cplx> integrate_orbit_complex(const OrbitMeasure& mu, const std::function<cplx(const Eigen::VectorXd&)>& g,
                                 double eps, double r, const QuadratureSpec& q) {
    return integrate_orbit_impl<cplx>(mu, g, eps, r, q);
}

}  // namespace tracekit
