#include "heunstokes/quadrature.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heunstokes/errors.hpp"

namespace heunstokes::quad {

namespace {

void neumaier(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
    else
        comp += (v - t) + sum;
    sum = t;
}

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

/// One GK31 pass. Boost reports the error of the non-adaptive pass on the
/// reference interval [-1, 1]; it is rescaled to [a, b] here.
Complex gk_pass(const RealIntegrand& f, double a, double b, double* err, double* l1) {
    const Complex v = GK::integrate(f, a, b, 0, 0.0, err, l1);
    *err *= 0.5 * std::abs(b - a);
    return v;
}

Result adaptive(const RealIntegrand& f, double a, double b, double target, int depth) {
    double err = 0.0;
    double l1 = 0.0;
    const Complex v = gk_pass(f, a, b, &err, &l1);
    // below the rounding floor further bisection cannot help
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * l1;
    if (err <= std::max(target, floor) || depth <= 0 || !std::isfinite(err)) return {v, err};
    const double mid = 0.5 * (a + b);
    const Result left = adaptive(f, a, mid, 0.5 * target, depth - 1);
    const Result right = adaptive(f, mid, b, 0.5 * target, depth - 1);
    return {left.value + right.value, left.error + right.error};
}

} // namespace

void CompensatedSum::add(Complex v) {
    double sr = sum_.real(), cr = comp_.real(), si = sum_.imag(), ci = comp_.imag();
    neumaier(sr, cr, v.real());
    neumaier(si, ci, v.imag());
    sum_ = {sr, si};
    comp_ = {cr, ci};
}

Result integrate(const RealIntegrand& f, double a, double b, double rel_tol, double abs_tol, int max_depth) {
    if (a == b) return {};
    // one coarse pass to get the L1 scale for the relative target
    double err0 = 0.0;
    double l1 = 0.0;
    const Complex v0 = gk_pass(f, a, b, &err0, &l1);
    const double target = std::max(abs_tol, rel_tol * l1);
    if (err0 <= target) return {v0, err0};
    Result r = adaptive(f, a, b, target, max_depth);
    if (!std::isfinite(std::abs(r.value)) || !std::isfinite(r.error))
        throw ConvergenceFailure("quadrature: non-finite integrand");
    if (r.error > 1e3 * target && r.error > 1e5 * std::numeric_limits<double>::epsilon() * l1)
        throw ConvergenceFailure("quadrature: adaptive refinement stalled");
    return r;
}

Result integrate_panels(const RealIntegrand& f, const std::vector<double>& breaks, double rel_tol, double abs_tol) {
    CompensatedSum sum;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const Result r = integrate(f, breaks[i], breaks[i + 1], rel_tol, abs_tol);
        sum.add(r.value);
        err += r.error;
    }
    return {sum.value(), err};
}

Result integrate_segment(const ComplexIntegrand& g, Complex z0, Complex z1, double rel_tol, double abs_tol) {
    const Complex dz = z1 - z0;
    return integrate([&](double t) { return g(z0 + t * dz) * dz; }, 0.0, 1.0, rel_tol, abs_tol);
}

Result integrate_arc(const ComplexIntegrand& g, Complex center, double r, double phi0, double phi1, double rel_tol,
                     double abs_tol) {
    return integrate(
        [&](double phi) {
            const Complex w = r * std::exp(I * phi);
            return g(center + w) * I * w;
        },
        phi0, phi1, rel_tol, abs_tol);
}

Complex trapezoid_circle(const ComplexIntegrand& g, Complex center, double r, int n) {
    CompensatedSum sum;
    for (int k = 0; k < n; ++k) {
        const Complex w = r * std::exp(I * (2.0 * pi * k / n));
        sum.add(g(center + w) * w);
    }
    return sum.value() / static_cast<double>(n);
}

Complex cauchy_derivative(const ComplexIntegrand& F, Complex x, double r, int n) {
    CompensatedSum sum;
    for (int k = 0; k < n; ++k) {
        const Complex e = std::exp(I * (2.0 * pi * k / n));
        sum.add(F(x + r * e) / e);
    }
    return sum.value() / (static_cast<double>(n) * r);
}

} // namespace heunstokes::quad
