#include <cmath>

#include "tracekit/groups/haar.hpp"
#include "tracekit/groups/lie.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {

std::string_view decomposition_name(Decomposition d) {
    switch (d) {
        case Decomposition::SL2_KAM0U: return "SL2_KAM0U";
        case Decomposition::SL3_KAM0U: return "SL3_KAM0U";
        case Decomposition::SL2_KAN: return "SL2_KAN";
        case Decomposition::SO12_KUA: return "SO12_KUA";
        case Decomposition::SL2_A1G0: return "SL2_A1G0";
    }
    return "?";
}

int chart_dim(Decomposition d) {
    switch (d) {
        case Decomposition::SL2_KAM0U:
        case Decomposition::SL3_KAM0U:
        case Decomposition::SL2_A1G0: return 1;
        case Decomposition::SL2_KAN:
        case Decomposition::SO12_KUA: return 3;
    }
    return 0;
}

double sl2_stabilizer_modulus(double s) {
    // The centralizer of E in sl(2) is spanned by E itself.
    const GroupElement a1 = mat_exp(AlgebraElement{Family::SL2R, s * sl2_H().m});
    const AlgebraElement image = adjoint_action(a1, sl2_E());
    return std::abs(algebra_coords(image)(1));
}

double haar_density_eval(const HaarDensity& d, std::span<const double> coords) {
    if (static_cast<int>(coords.size()) != chart_dim(d.decomposition))
        fail(ErrorCode::OutOfChart, "wrong number of chart coordinates");
    for (double c : coords)
        if (!std::isfinite(c)) fail(ErrorCode::OutOfChart, "non-finite chart coordinate");
    switch (d.decomposition) {
        case Decomposition::SL2_KAM0U:
        case Decomposition::SL3_KAM0U: {
            const double lambda = coords[0];
            if (lambda == 0.0) fail(ErrorCode::OutOfChart, "lambda must be nonzero");
            const int n = d.decomposition == Decomposition::SL2_KAM0U ? 2 : 3;
            return std::pow(std::abs(lambda), n - 1);
        }
        case Decomposition::SL2_KAN: return std::exp(2.0 * coords[1]);
        case Decomposition::SO12_KUA: return 1.0;
        case Decomposition::SL2_A1G0: return sl2_stabilizer_modulus(coords[0]);
    }
    return 0.0;
}

}  // namespace tracekit
