#include <cmath>

#include "tracekit/groups/matrix.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {

Mat lorentz_form(int n) {
    Mat j = Mat::Identity(n, n);
    for (int i = 1; i < n; ++i) j(i, i) = -1.0;
    return j;
}

Mat mat_exp(const Mat& x) {
    const int n = static_cast<int>(x.rows());
    const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Mat a = x / std::ldexp(1.0, squarings);

    constexpr int q = 6;
    double c = 1.0;
    Mat power = Mat::Identity(n, n);
    Mat num = Mat::Identity(n, n);
    Mat den = Mat::Identity(n, n);
    for (int k = 1; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / (k * (2.0 * q - k + 1));
        power = power * a;
        num += c * power;
        den += ((k % 2 == 0) ? c : -c) * power;
    }
    Mat r = den.partialPivLu().solve(num);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

}  // namespace tracekit
