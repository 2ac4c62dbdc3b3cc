#pragma once

/**
 * @file specfun.hpp
 * @brief Complex special functions: log-Gamma, Gamma ratios, rising
 * factorials, binomials and the entire kernel phi1(w) = sum w^k / (k! (k+1)!).
 *
 * The kernel phi1 is related to the Bessel function of order one by
 * phi1(-(z/2)^2) = J1(z) / (z/2).
 */

#include <optional>

#include "heunstokes/types.hpp"

namespace heunstokes::specfun {

/// Principal-branch log Gamma. Throws PoleError at z = 0, -1, -2, ...
Complex log_gamma(Complex z);

/// Gamma(z) itself (may overflow for large arguments).
Complex gamma(Complex z);

/**
 * @brief Gamma(z+a) / Gamma(z+b).
 *
 * When a-b is an integer the ratio is an exact finite product and the
 * degenerate pole/pole and finite/pole cases are resolved by continuity
 * (finite/pole gives exactly 0). A genuine pole/finite ratio throws PoleError.
 */
Complex gamma_ratio(Complex z, Complex a, Complex b);

/// Logarithm of a complex number that may be exactly zero.
struct LogValue {
    Complex log{0.0, 0.0};
    bool zero = false;

    Complex value() const;
    LogValue operator*(const LogValue& other) const;
};

/// log(Gamma(z+a)/Gamma(z+b)) with the same degenerate-case rules as gamma_ratio.
LogValue log_gamma_ratio(Complex z, Complex a, Complex b);

/// (a)^(n) = a (a+1) ... (a+n-1), (a)^(0) = 1.
Complex rising_factorial(Complex a, int n);

/// Binomial coefficient C(n, k) for integers 0 <= k <= n (0 otherwise).
double binomial(int n, int k);

/// log C(n, k) for integers 0 <= k <= n.
double log_binomial(int n, int k);

struct BesselKernelValue {
    Complex value;
    int terms_used = 0;
};

/**
 * @brief phi1(w) = sum_{k>=0} w^k / (k! (k+1)!).
 *
 * Summed with the term ratio t_{k+1} = t_k w / ((k+1)(k+2)). Stops once the
 * remaining tail is bounded by tol * |partial sum| (or by the rounding floor of
 * the largest term). Throws ConvergenceFailure if terms overflow.
 */
BesselKernelValue bessel_kernel_phi1(Complex w, double tol = 1e-16);

/// Shorthand returning only the value.
Complex phi1(Complex w, double tol = 1e-16);

/// d/dw phi1(w) = sum_{k>=0} w^k / (k! (k+2)!).
Complex phi1_derivative(Complex w, double tol = 1e-16);

/// First positive zero of J1, located by bisection on phi1(-(z/2)^2).
double first_bessel_j1_zero();

/// Bisection for a sign change of phi1(-(z/2)^2) inside [lo, hi].
double bessel_j1_zero_in(double lo, double hi);

/// True when r lies within int_tol * max(1,|r|) of an integer (imaginary part included).
bool is_integer(Complex r, double int_tol = 1e-9);

/// Nearest integer to Re r.
long long nearest_integer(Complex r);

} // namespace heunstokes::specfun
