/**
 * @file test_borel.cpp
 * @brief Tests of the Borel kernels, ray Laplace transforms, 1-sums and the
 * Stokes jump across the singular directions.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heunstokes/borel.hpp"
#include "heunstokes/errors.hpp"
#include "heunstokes/quadrature.hpp"
#include "heunstokes/specfun.hpp"
#include "heunstokes/stokes.hpp"

using namespace heunstokes;

namespace {

Complex draw(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    const double re = d(rng);
    const double im = d(rng);
    return {re, im};
}

/// Parameters with |d_beta| and |d_gamma| in [0.5, 1.5].
Params random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.5, 1.5), ang(-pi, pi);
    const Complex b1 = draw(rng), g1 = draw(rng);
    return Params{b1, b1 + std::polar(mag(rng), ang(rng)), g1, g1 + std::polar(mag(rng), ang(rng))};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Complex second_derivative(const std::function<Complex(Complex)>& f, Complex x, double r) {
    return quad::cauchy_derivative([&](Complex z) { return quad::cauchy_derivative(f, z, 0.5 * r, 32); }, x, r, 32);
}

const Params unit{0.0, 1.0, 0.0, 1.0};

} // namespace

TEST_CASE("kernel u: value at 0, u(beta1 - beta2) = -S, exponential growth bound") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 30; ++i) {
        const Params p = random_params(rng);
        CHECK(kernel_u(p, 0.0) == Complex{1.0, 0.0});
        CHECK(std::abs(kernel_u(p, p.beta1 - p.beta2) + bessel_sum_S(p)) < 1e-14);
        std::uniform_real_distribution<double> ang(-pi, pi);
        const double theta = ang(rng);
        for (double r = 0.0; r <= 40.0; r += 2.5) {
            const Complex z = std::polar(r, theta);
            CHECK(std::abs(kernel_u(p, z)) <= std::exp(std::abs(p.dgamma()) * r) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("kernel v: value at 0, ODE and v(gamma2 - gamma1) = -S") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 30; ++i) {
        const Params p = random_params(rng);
        CHECK(kernel_v(p, 0.0) == Complex{1.0, 0.0});
        CHECK(std::abs(kernel_v(p, p.dgamma()) + bessel_sum_S(p)) < 1e-14);
        const Complex q = draw(rng, 3.0);
        auto v = [&](Complex z) { return kernel_v(p, z); };
        const Complex v1 = quad::cauchy_derivative(v, q, 0.4, 48);
        const Complex v2 = second_derivative(v, q, 0.4);
        const Complex res = q * v2 + 2.0 * v1 + p.dbeta() * v(q);
        CHECK(std::abs(res) / (std::abs(q * v2) + std::abs(2.0 * v1) + std::abs(p.dbeta() * v(q))) < 1e-8);
    }
}

TEST_CASE("laplace_ray: moments of the origin form") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ang(-pi, pi), off(-1.2, 1.2), mag(0.05, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double theta = ang(rng);
        const Complex x = std::polar(mag(rng), theta + off(rng));
        const OneSum one = laplace_ray([](Complex) { return Complex{1.0, 0.0}; }, LaplaceForm::Origin, Ray{theta, 0.0, {}}, x, 0.0);
        const OneSum id = laplace_ray([](Complex z) { return z; }, LaplaceForm::Origin, Ray{theta, 0.0, {}}, x, 0.0);
        CHECK(std::abs(one.value - 1.0) < 1e-12);
        CHECK(std::abs(id.value - x) < 1e-12 * std::max(1.0, std::abs(x)));
        CHECK(one.quadrature_error_estimate < 1e-10);
    }
    CHECK_THROWS_AS(laplace_ray([](Complex) { return Complex{1.0, 0.0}; }, LaplaceForm::Origin, Ray{0.0, 0.0, {}},
                                Complex{-1.0, 0.0}, 0.0),
                    DomainError);
    CHECK_THROWS_AS(laplace_ray([](Complex) { return Complex{1.0, 0.0}; }, LaplaceForm::Infinity, Ray{0.0, 0.0, {}},
                                Complex{0.5, 0.0}, 1.0),
                    DomainError);
}

TEST_CASE("laplace_ray: infinity form of exponentials") {
    // int_0^inf e^{a p} e^{-x p} dp = 1/(x - a)
    const Complex a{0.3, 0.2};
    const Complex x{2.0, -1.0};
    const OneSum s = laplace_ray([&](Complex q) { return std::exp(a * q); }, LaplaceForm::Infinity, Ray{0.2, 0.0, {}}, x,
                                 std::abs(a));
    CHECK(rel(s.value, 1.0 / (x - a)) < 1e-12);
}

TEST_CASE("psi_sum: error conditions") {
    CHECK_THROWS_AS(psi_sum(unit, pi, 0.05), SingularDirection);
    CHECK_THROWS_AS(psi_sum(unit, 0.0, Complex{0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(psi_sum(Params{0.2, 0.2, 0.0, 1.0}, 0.0, 0.05), DegenerateParameters);
    CHECK_THROWS_AS(phi_sum(unit, 0.0, 5.0), SingularDirection);
    CHECK_THROWS_AS(phi_sum(unit, pi / 2, 5.0), DomainError);
}

TEST_CASE("psi_sum: cancellation-free and displayed forms agree") {
    std::mt19937_64 rng(54);
    for (int i = 0; i < 20; ++i) {
        const Params p = random_params(rng);
        const double theta = std::arg(p.beta2 - p.beta1); // opposite the singular direction
        const Complex x = std::polar(0.1, theta + 0.3);
        SumOptions displayed;
        displayed.form = PsiForm::Displayed;
        const Complex a = psi_sum(p, theta, x).value;
        const Complex b = psi_sum(p, theta, x, displayed).value;
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("psi_sum: rays on the same side of the singular direction agree") {
    std::mt19937_64 rng(55);
    for (int i = 0; i < 20; ++i) {
        const Params p = random_params(rng);
        const double sing = std::arg(p.beta1 - p.beta2);
        const Complex x = std::polar(0.08, sing + 1.0);
        const Complex a = psi_sum(p, sing + 0.7, x).value;
        const Complex b = psi_sum(p, sing + 1.3, x).value;
        CHECK(std::abs(a - b) < 1e-11);
    }
}

TEST_CASE("psi_sum: the second term of the displayed form tends to 1 as d_gamma -> 0") {
    // psi with d_gamma = 0 is 1 - int (1 + zeta/d_beta)^{-1} e^{-zeta/x} d(zeta/x)
    const Params p{0.0, 1.0, 0.5, 0.5};
    const Complex x = 0.05;
    const Complex flat = psi_sum(p, 0.0, x).value;
    const Complex euler = euler_series_sum(p.dbeta(), 1.0, 0.0, x).value;
    CHECK(std::abs(flat - (1.0 - euler)) < 1e-13);
    const Params tiny{0.0, 1.0, 0.5, 0.5 + 1e-9};
    SumOptions displayed;
    displayed.form = PsiForm::Displayed;
    CHECK(std::abs(psi_sum(tiny, 0.0, x, displayed).value - flat) < 1e-9);
}

TEST_CASE("psi_sum: Gevrey-1 asymptotics with a fitted pair") {
    const std::vector<Complex> xs{0.05, 0.04, 0.03, Complex{0.04, 0.02}, Complex{0.03, -0.03}};
    const GevreyFit fit = gevrey_fit_psi(unit, 0.0, xs, 8);
    CHECK(fit.bound_holds);
    CHECK(fit.samples.size() == 40u);
    CHECK(fit.A > 1.0 / 3.0);
    CHECK(fit.A < 3.0);
}

TEST_CASE("psi_sum: S = 0 uses the convergent series, matching quadrature") {
    const Params p = bessel_zero_params(0.1, 0.2);
    const Complex x{0.03, 0.01};
    const Complex series = psi_sum(p, 0.0, x).value;
    SumOptions quad_only;
    quad_only.zero_S_tol = -1.0;
    const Complex integral = psi_sum(p, 0.0, x, quad_only).value;
    CHECK(std::abs(series - integral) < 1e-12);
    // direct partial sums of the (now convergent) series
    const auto b = psi_coefficients(p, 40);
    Complex partial{0.0, 0.0}, pw{1.0, 0.0};
    for (int k = 1; k <= 40; ++k) {
        pw *= x;
        partial += b.at(k) * pw;
    }
    CHECK(std::abs(series - partial) < 1e-14);
}

TEST_CASE("phi_sum: asymptotics at large x") {
    const Params p{0.2, 0.7, -0.3, 0.6};
    const double theta = pi; // singular direction is arg(d_gamma) = 0
    const Complex x{-40.0, 5.0};
    const Complex phi = phi_sum(p, theta, x).value;
    const auto c = phi_coefficients(p, 3);
    CHECK(std::abs(phi * x - c.at(1)) < 3.0 * std::abs(c.at(2)) / std::abs(x));
    const GevreyFit fit = gevrey_fit_phi(p, theta, {Complex{-30.0, 0.0}, Complex{-25.0, 3.0}, Complex{-35.0, -4.0}}, 8);
    CHECK(fit.bound_holds);
    CHECK(fit.A < 3.0 / std::abs(p.dgamma()));
    CHECK(fit.A > 1.0 / (3.0 * std::abs(p.dgamma())));
}

TEST_CASE("phi_sum: same-side rays agree, gamma1 = gamma2 closed form") {
    const Params p{0.2, 0.7, -0.3, 0.6};
    const Complex x{-5.0, 1.0};
    CHECK(std::abs(phi_sum(p, pi - 0.3, x).value - phi_sum(p, pi + 0.2, x).value) < 1e-12);
    SumOptions displayed;
    displayed.form = PsiForm::Displayed;
    CHECK(std::abs(phi_sum(p, pi, x).value - phi_sum(p, pi, x, displayed).value) < 1e-12);
    const Params flat{0.2, 0.7, 0.4, 0.4};
    const Complex z = -0.5 / x;
    CHECK(rel(phi_sum(flat, 0.0, x).value, (std::exp(z) - 1.0) / z) < 1e-14);
}

TEST_CASE("actual fundamental entries for gamma1 = gamma2") {
    const Params flat{0.2, 0.7, 0.4, 0.4};
    const Complex x{0.3, 0.1};
    CHECK(std::abs(actual_fundamental_entry(flat, EntrySide::Origin, 0.0, x) - x * x / 0.5) < 1e-15);
    CHECK(std::abs(actual_fundamental_entry(flat, EntrySide::Infinity, 0.0, x) - (std::exp(-0.5 / x) - 1.0) / 0.5)
          < 1e-14);
}

TEST_CASE("origin entry equals x^2/d_beta + d_gamma x^2 times the plain ray integral") {
    std::mt19937_64 rng(56);
    for (int i = 0; i < 10; ++i) {
        const Params p = random_params(rng);
        const double theta = std::arg(p.beta2 - p.beta1);
        const Complex x = std::polar(0.06, theta - 0.2);
        const OneSum plain = laplace_ray([&](Complex z) { return kernel_u(p, z) / (z + p.dbeta()); },
                                         LaplaceForm::Origin, Ray{theta, 0.0, {}}, x, std::abs(p.dgamma()), 1e-15);
        const Complex expect = x * x / p.dbeta() + p.dgamma() * x * x * (plain.value * x);
        const Complex got = actual_fundamental_entry(p, EntrySide::Origin, theta, x);
        CHECK(rel(got, expect) < 1e-11);
    }
}

TEST_CASE("property: Phi_12 solves L1 y = Phi_2 and the scalar equation at both sides") {
    std::mt19937_64 rng(57);
    for (int i = 0; i < 8; ++i) {
        const Params p = random_params(rng);
        for (EntrySide side : {EntrySide::Origin, EntrySide::Infinity}) {
            double theta;
            Complex x;
            double r;
            if (side == EntrySide::Origin) {
                theta = std::arg(p.beta2 - p.beta1);
                x = std::polar(0.08, theta + 0.2);
                r = 0.01;
            } else {
                theta = std::arg(-p.dgamma());
                x = std::polar(6.0, -theta - 0.2);
                r = 0.5;
            }
            auto y = [&](Complex z) { return actual_phi12(p, side, theta, z); };
            const Complex y0 = y(x);
            const Complex y1 = quad::cauchy_derivative(y, x, r, 32);
            const Complex a1 = p.gamma1 + p.beta1 / (x * x);
            const Complex lhs = y1 - a1 * y0;
            const Complex rhs = initial_phi2(p, x);
            CHECK(std::abs(lhs - rhs) / (std::abs(y1) + std::abs(a1 * y0)) < 1e-9);

            const Complex y2 = second_derivative(y, x, r);
            const auto c = initial_coefficients(p, x);
            const Complex res = y2 + c.b1 * y1 + c.b0 * y0;
            CHECK(std::abs(res) / (std::abs(y2) + std::abs(c.b1 * y1) + std::abs(c.b0 * y0)) < 1e-7);
        }
    }
}

TEST_CASE("column one solves the scalar equation") {
    const Params p{0.1, 0.9, -0.2, 0.4};
    const Complex x{0.2, 0.1};
    auto y = [&](Complex z) { return initial_phi1(p, z); };
    const Complex y1 = quad::cauchy_derivative(y, x, 0.02, 32);
    const Complex y2 = second_derivative(y, x, 0.02);
    const auto c = initial_coefficients(p, x);
    const Complex res = y2 + c.b1 * y1 + c.b0 * y(x);
    CHECK(std::abs(res) / (std::abs(y2) + std::abs(c.b1 * y1) + std::abs(c.b0 * y(x))) < 1e-8);
}

TEST_CASE("Stokes jump at the origin: unit parameters") {
    const JumpReport j = stokes_jump_origin(unit, -0.05, 0.05);
    CHECK(j.rel_err < 1e-6);
    CHECK(j.sector_rel_err < 1e-9);
    CHECK(j.sensitivity < 1e-6);
    CHECK(std::abs(j.residue - stokes_origin(unit).mu * initial_phi1(unit, -0.05)) < 1e-12);
    CHECK(std::abs(j.theta - pi) < 1e-15);
}

TEST_CASE("Stokes jump: degenerate and Bessel-zero parameters") {
    const JumpReport flat = stokes_jump_origin(Params{0.0, 1.0, 0.3, 0.3}, -0.05);
    CHECK(std::abs(flat.quadrature) == 0.0);
    CHECK(std::abs(flat.residue) == 0.0);
    CHECK_THROWS_AS(stokes_jump_infinity(Params{0.0, 1.0, 0.3, 0.3}, 5.0), DegenerateParameters);

    const Params zero = bessel_zero_params();
    const JumpReport z = stokes_jump_origin(zero, -0.05);
    CHECK(std::abs(z.quadrature) < 1e-8 * z.phi1_abs);
    CHECK(std::abs(z.residue) < 1e-8 * z.phi1_abs);
}

TEST_CASE("property: jump equals the residue formula for random parameters") {
    std::mt19937_64 rng(58);
    for (int i = 0; i < 20; ++i) {
        const Params p = random_params(rng);
        const double theta0 = std::arg(p.beta1 - p.beta2);
        // the jump is e^{-20} times the size of each ray integral
        const Complex x0 = std::polar(0.05 * std::abs(p.dbeta()), theta0);
        const JumpReport j0 = stokes_jump_origin(p, x0);
        CHECK(j0.rel_err < 1e-6);
        const double thetai = std::arg(p.dgamma());
        const Complex xi = std::polar(6.0, -thetai);
        const JumpReport ji = stokes_jump_infinity(p, xi);
        CHECK(ji.rel_err < 1e-6);
    }
}

TEST_CASE("Euler series: asymptotic to sum (-1)^n n! (x/delta)^n") {
    const Complex delta{1.0, 0.5};
    const double theta = std::arg(delta);
    for (Complex x : {Complex{0.02, 0.0}, Complex{0.015, 0.01}}) {
        const Complex f = euler_series_sum(delta, 1.0, theta, x).value;
        Complex partial{0.0, 0.0}, term{1.0, 0.0};
        for (int N = 1; N <= 6; ++N) {
            partial += term;
            const double bound = std::tgamma(N + 1.0) * std::pow(std::abs(x / delta), N);
            CHECK(std::abs(f - partial) <= 2.0 * bound);
            term *= -static_cast<double>(N) * x / delta;
        }
    }
    CHECK_THROWS_AS(euler_series_sum(delta, 1.0, std::arg(-delta), 0.02), SingularDirection);
}

TEST_CASE("property: Laplace transform identities on kernel-built test functions") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 8; ++i) {
        KernelTestFunction f;
        for (int j = 0; j < 3; ++j) {
            f.c.push_back(draw(rng));
            f.w.push_back(draw(rng));
        }
        std::uniform_real_distribution<double> ang(-pi, pi);
        const double theta = ang(rng);
        const Complex x = std::polar(3.0, -theta + 0.2);
        const Complex c{0.3, 0.1};
        const LaplaceIdentityReport r = laplace_identities(f, theta, x, c);
        CHECK(r.times_minus_p < 1e-8);
        CHECK(r.shift < 1e-8);
        CHECK(r.convolution < 1e-8);
        CHECK(r.derivative < 1e-8);
    }
}
