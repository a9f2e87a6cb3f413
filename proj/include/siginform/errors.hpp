#pragma once

#include <stdexcept>

namespace siginform {

// Thrown when a numerical hypothesis of an analysis (observability of the
// generator, controllability, spectral separation) fails on concrete data.
// Distinct from std::invalid_argument so callers can tell "your matrices
// violate the theory's assumptions" apart from "your call was malformed".
struct AssumptionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace siginform
