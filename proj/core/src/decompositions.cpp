#include <cmath>

#include "tracekit/groups/decompositions.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {

IwasawaKAN iwasawa_kan(const GroupElement& g, const NumericPolicy& p) {
    if (g.family != Family::SL2R && g.family != Family::SL3R)
        fail(ErrorCode::UnsupportedFamily, "iwasawa_kan needs SL(2,R) or SL(3,R)");
    const int n = static_cast<int>(g.m.rows());
    if (std::abs(g.m.determinant() - 1.0) > p.unimodular_tol)
        fail(ErrorCode::NotUnimodularMatrix, "det g differs from 1");

    Eigen::HouseholderQR<Mat> qr(g.m);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        if (r(i, i) < 0.0) {
            q.col(i) *= -1.0;
            r.row(i) *= -1.0;
        }
    }
    Mat a = Mat::Zero(n, n);
    Mat u = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = r(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u(i, j) = r(i, j) / r(i, i);
    return {{g.family, q}, {g.family, a}, {g.family, u}};
}

IwasawaKUA iwasawa_so12(const GroupElement& h, const NumericPolicy& p) {
    if (h.family != Family::SO12) fail(ErrorCode::FamilyMismatch, "iwasawa_so12 needs SO12");
    if (!in_group(Family::SO12, h.m, p.group_tol))
        fail(ErrorCode::NotInIdentityComponent, "element is not in SO0(1,2)");
    Vec null(3);
    null << 1.0, 0.0, 1.0;
    const Vec v = h.m * null;
    IwasawaKUA d;
    d.t = std::log(v(0));
    d.theta = std::atan2(-v(1), v(2));
    d.k = so12_rotation(d.theta);
    const Mat uz = d.k.m.transpose() * h.m * so12_a(-d.t).m;
    d.z = uz(1, 0);
    return d;
}

}  // namespace tracekit
