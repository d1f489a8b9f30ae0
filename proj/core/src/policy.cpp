#include "tracekit/util/policy.hpp"

namespace tracekit {

const NumericPolicy& default_policy() {
    static const NumericPolicy policy{};
    return policy;
}

}  // namespace tracekit
