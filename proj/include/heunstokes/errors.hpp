#pragma once

/**
 * @file errors.hpp
 * @brief Exception types raised by the library.
 *
 * Every failure is reported by throwing one of these. All derive from
 * std::runtime_error or std::invalid_argument so callers may catch broadly.
 */

#include <stdexcept>
#include <string>

namespace heunstokes {

/// Argument sits on a pole of the Gamma function.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Evaluation point or parameters outside the region where a formula is defined.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Parameters for which an object is undefined (e.g. beta1 == beta2, gamma1 == gamma2 at infinity).
struct DegenerateParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested direction coincides with a singular direction.
struct SingularDirection : std::domain_error {
    using std::domain_error::domain_error;
};

/// (p, e) does not realise the requested double resonance, or the point is not logarithmic.
struct ResonanceMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Series or quadrature could not reach the requested tolerance.
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrand of a closed contour is not single valued on it.
struct MultivaluedIntegrand : std::domain_error {
    using std::domain_error::domain_error;
};

/// Integration path passes too close to a singular point.
struct PathError : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace heunstokes
