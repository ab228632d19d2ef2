#pragma once

#include <stdexcept>
#include <string>

namespace mqs {

/// Base class of every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (bad beta, pole argument,
/// degenerate simplex, dimension mismatch, inadmissible sigma, ...).
struct domain_error : error {
    using error::error;
};

/// Parameter combination outside every supported regime. The message lists
/// the violated hypotheses.
struct unsupported_regime : error {
    using error::error;
};

/// Numerical failure at runtime (overflow, divergence, conditioning).
struct numerical_error : error {
    using error::error;
};

/// Integer or floating-point overflow that would silently corrupt a result.
struct overflow_error : numerical_error {
    using numerical_error::numerical_error;
};

/// An integral whose tail refuses to decay.
struct divergence_error : numerical_error {
    using numerical_error::numerical_error;
};

/// Linear system too ill-conditioned to trust; carries the estimate.
struct conditioning_error : numerical_error {
    double estimate;
    conditioning_error(const std::string& what, double estimate)
        : numerical_error(what), estimate(estimate) {}
};

}  // namespace mqs
