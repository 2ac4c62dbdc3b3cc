#pragma once

/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod quadrature of complex-valued integrands along
 * real intervals, straight complex segments and circles.
 */

#include <functional>
#include <vector>

#include "heunstokes/types.hpp"

namespace heunstokes::quad {

struct Result {
    Complex value{0.0, 0.0};
    double error = 0.0; ///< estimated absolute error
};

using RealIntegrand = std::function<Complex(double)>;
using ComplexIntegrand = std::function<Complex(Complex)>;

/**
 * @brief Adaptive 31-point Gauss-Kronrod on [a, b].
 *
 * Refines until the estimated error is below max(abs_tol, rel_tol * L1-norm).
 * Throws ConvergenceFailure if the estimate stays above 1e3 times the target.
 */
Result integrate(const RealIntegrand& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                 int max_depth = 18);

/// Sum of integrate() over consecutive panels [breaks[i], breaks[i+1]] (Neumaier-compensated).
Result integrate_panels(const RealIntegrand& f, const std::vector<double>& breaks, double rel_tol,
                        double abs_tol = 0.0);

/// Integral of g(z) dz along the straight segment z0 -> z1.
Result integrate_segment(const ComplexIntegrand& g, Complex z0, Complex z1, double rel_tol, double abs_tol = 0.0);

/// Integral of g(z) dz along the circular arc center + r e^{i phi}, phi0 -> phi1.
Result integrate_arc(const ComplexIntegrand& g, Complex center, double r, double phi0, double phi1, double rel_tol,
                     double abs_tol = 0.0);

/// (1/(2 pi i)) closed integral of g around the circle, trapezoidal rule with n nodes.
Complex trapezoid_circle(const ComplexIntegrand& g, Complex center, double r, int n);

/// Derivative F'(x) from the Cauchy integral on a circle of radius r (trapezoidal, n nodes).
Complex cauchy_derivative(const ComplexIntegrand& F, Complex x, double r, int n = 24);

/// Neumaier compensated accumulator for complex sums.
class CompensatedSum {
public:
    void add(Complex v);
    Complex value() const { return sum_ + comp_; }

private:
    Complex sum_{0.0, 0.0};
    Complex comp_{0.0, 0.0};
};

} // namespace heunstokes::quad
