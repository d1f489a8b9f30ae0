#include <cmath>
#include <numbers>

#include "tracekit/groups/lie.hpp"
#include "tracekit/groups/random.hpp"

namespace tracekit {
namespace {

Mat unimodular_sample(int n, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Mat m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = scale * u(rng);
        double d = m.determinant();
        if (std::abs(d) < 0.05 * std::pow(scale, n)) continue;
        if (d < 0.0) {
            m.row(0) *= -1.0;
            d = -d;
        }
        return m / std::pow(d, 1.0 / n);
    }
}

}  // namespace

GroupElement random_group_element(Family f, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    switch (f) {
        case Family::SL2R:
        case Family::SL3R: return {f, unimodular_sample(matrix_dim(f), rng, 1.0)};
        case Family::SO12: {
            const double th = angle(rng), z = u(rng), t = u(rng);
            return so12_rotation(th) * so12_u(z) * so12_a(t);
        }
        case Family::O12: {
            GroupElement g = random_group_element(Family::SO12, rng, scale);
            std::uniform_int_distribution<int> comp(0, 3);
            const int c = comp(rng);
            Mat s = Mat::Identity(3, 3);
            if (c & 1) s(0, 0) = -1.0;
            if (c & 2) s(2, 2) = -1.0;
            return {Family::O12, s * g.m};
        }
        case Family::SO2: return so2_rotation(angle(rng));
        case Family::O11: return o11_boost(u(rng));
        case Family::HEIS3: {
            Mat m = Mat::Identity(4, 4);
            m(0, 2) = u(rng);
            m(1, 2) = u(rng);
            return {f, m};
        }
        case Family::UNIP4: {
            Mat m = Mat::Identity(4, 4);
            m(0, 1) = u(rng);
            m(2, 3) = u(rng);
            return {f, m};
        }
    }
    return identity(f);
}

AlgebraElement random_algebra_element(Family f, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    const auto& basis = algebra_basis(f);
    const int n = matrix_dim(f);
    Mat m = Mat::Zero(n, n);
    for (const auto& b : basis) m += u(rng) * b;
    return {f, m};
}

}  // namespace tracekit
