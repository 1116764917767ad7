#pragma once

#include <stdexcept>
#include <string>

namespace rsc {

// Domain error taxonomy. Everything derives from cost_error so callers can
// catch the whole family when mapping to process exit codes.
struct cost_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// eval() at r = 0 for a cost that is unbounded at the origin.
struct EvalAtSingularOrigin : cost_error {
    using cost_error::cost_error;
};

// Improper integral from 0 does not converge for this cost.
struct DivergentIntegral : cost_error {
    using cost_error::cost_error;
};

// Declared origin metadata contradicts the cost kind or its parameters.
struct InconsistentDeclaration : cost_error {
    using cost_error::cost_error;
};

// Sampled derivative signs on (0, eta) contradict the declared monotonicity.
struct NotMonotoneAtOrigin : cost_error {
    using cost_error::cost_error;
};

// Tangential motion requested from the exact origin without a delta wrapper.
struct PolicyUndefinedAtOrigin : cost_error {
    using cost_error::cost_error;
};

// Value at the origin is +-infinity for this cost; evaluate at r > 0 instead.
struct OriginValueInfinite : cost_error {
    using cost_error::cost_error;
};

}  // namespace rsc
