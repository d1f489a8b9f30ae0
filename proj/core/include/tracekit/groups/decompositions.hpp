#pragma once

#include "tracekit/groups/matrix.hpp"

namespace tracekit {

struct IwasawaKAN {
    GroupElement k;  // special orthogonal
    GroupElement a;  // positive diagonal
    GroupElement n;  // unit upper triangular
};

/// g = k a n for g in SL(2,R) or SL(3,R); throws NotUnimodularMatrix.
IwasawaKAN iwasawa_kan(const GroupElement& g, const NumericPolicy& p = default_policy());

struct IwasawaKUA {
    double theta = 0.0;  // angle of the rotation factor
    GroupElement k;
    double z = 0.0;
    double t = 0.0;
};

/// h = k u_z a_t for h in SO0(1,2); throws NotInIdentityComponent.
IwasawaKUA iwasawa_so12(const GroupElement& h, const NumericPolicy& p = default_policy());

}  // namespace tracekit
