/**
 * @file test_oracle.cpp
 * @brief Tests of the brute-force verifiers: contour residues, path quadrature
 * of Phi_12 and monodromy by numerical continuation.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heunstokes/errors.hpp"
#include "heunstokes/oracle.hpp"
#include "heunstokes/quadrature.hpp"
#include "heunstokes/unfold.hpp"

using namespace heunstokes;

namespace {

Params a1_params(int n, int m, double s, double b1 = 0.0, double g1 = 0.0) {
    return Params{b1, b1 + 2.0 * s * n, g1, g1 - 2.0 * s * m};
}

double max_entry(const Matrix2C& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("solution exponents and the quotient exponents") {
    const Params p{0.3, -0.4, 0.2, 0.9};
    const Epsilon e = Epsilon::make(Complex{0.3, 0.1});
    const auto c1 = solution_exponents(p, e, 1);
    const auto c2 = solution_exponents(p, e, 2);
    const auto q = quotient_exponents(p, e);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(c2[k] - c1[k] - q[k]) < 1e-14);
    const Complex s = e.sqrt_eps;
    CHECK(std::abs(q[0] - (p.dbeta() / (2.0 * s) - 1.0)) < 1e-14);
    CHECK(std::abs(q[1] - (-p.dbeta() / (2.0 * s) - 1.0)) < 1e-14);
    CHECK(std::abs(q[2] - (-p.dgamma() / (2.0 * s))) < 1e-14);
    CHECK(std::abs(q[3] - (p.dgamma() / (2.0 * s))) < 1e-14);
    CHECK_THROWS(solution_exponents(p, e, 3));
}

TEST_CASE("property: Phi_j solves L_{j,eps} y = 0") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const Params p{Complex{d(rng), d(rng)}, Complex{d(rng), d(rng)}, Complex{d(rng), d(rng)},
                       Complex{d(rng), d(rng)}};
        const Epsilon e = Epsilon::make(Complex{0.3 + 0.2 * d(rng), 0.1 * d(rng)});
        const Complex x{0.5 * d(rng), 0.6 + 0.2 * d(rng)};
        for (int j : {1, 2}) {
            auto y = [&](Complex z) { return phi_solution(p, e, j, z); };
            const Complex dy = quad::cauchy_derivative(y, x, 0.05, 48);
            const auto c = perturbed_coefficients(p, e, x);
            const Complex a = j == 1 ? c.a1 : c.a2;
            CHECK(std::abs(dy - a * y(x)) < 1e-10 * (std::abs(dy) + std::abs(a * y(x))));
        }
    }
}

TEST_CASE("residue_contour: Cauchy baseline and radius independence") {
    const double s = 0.3;
    const Epsilon e = Epsilon::make(s);
    const Params p = a1_params(2, 3, s, 0.2, 0.1);
    // non-logarithmic points of A1 are ordinary for Phi2/Phi1 or have integer exponent >= 0
    CHECK(std::abs(residue_contour(p, e, Point::R)) < 1e-12);
    CHECK(std::abs(residue_contour(p, e, Point::RR)) < 1e-12);
    // closed circle around an ordinary point of the integrand
    auto quotient = [&](Complex z) { return phi_solution(p, e, 2, z) / phi_solution(p, e, 1, z); };
    CHECK(std::abs(quad::trapezoid_circle(quotient, Complex{0.0, 0.8}, 0.2, 256)) < 1e-12);
    const double gap = min_singular_gap(e);
    for (Point pt : {Point::L, Point::LL}) {
        const Complex r1 = residue_contour(p, e, pt, 0.2 * gap);
        const Complex r2 = residue_contour(p, e, pt, 0.4 * gap);
        CHECK(std::abs(r1 - r2) < 1e-10 * std::abs(r1));
    }
}

TEST_CASE("residue_contour: error conditions") {
    const Params p{0.0, 1.0, 0.3, 0.1};
    CHECK_THROWS_AS(residue_contour(p, Epsilon::make(Complex{0.3, 0.2}), Point::L), MultivaluedIntegrand);
    const Params q = a1_params(1, 1, 0.3);
    CHECK_THROWS_AS(residue_contour(q, Epsilon::make(0.3), Point::L, 0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(residue_contour(q, Epsilon::make(0.3), Point::L, 10.0), DomainError);
}

TEST_CASE("residue_contour agrees with the closed form d for A1, n = m = 1") {
    const double s = 0.3;
    const Epsilon e = Epsilon::make(s);
    const Params p = a1_params(1, 1, s);
    const Resonance r = classify_resonance(p, e);
    for (Point pt : logarithmic_points(ResonanceKind::A1)) {
        const Complex closed = d_coefficient(p, e, r, pt);
        CHECK(std::abs(residue_contour(p, e, pt) - closed) < 1e-12 * std::abs(closed));
    }
}

TEST_CASE("phi12_quadrature solves L1 y = Phi_2") {
    const Epsilon e = Epsilon::make(0.35);
    for (const Params& p : {Params{0.1, 0.9, -0.2, 0.5}, a1_params(2, 1, 0.35)}) {
        for (Frame f : {Frame::Origin, Frame::Infinity}) {
            const Complex x{0.4, 0.5};
            auto y = [&](Complex z) { return phi12_quadrature(p, e, z, f); };
            const Complex dy = quad::cauchy_derivative(y, x, 0.05, 32);
            const Complex a1 = perturbed_coefficients(p, e, x).a1;
            const Complex phi2 = phi_solution(p, e, 2, x);
            CHECK(std::abs(dy - a1 * y(x) - phi2) < 1e-8 * (std::abs(dy) + std::abs(a1 * y(x))));
        }
    }
}

TEST_CASE("phi12_quadrature: origin and infinity frames differ by a multiple of Phi_1") {
    const Epsilon e = Epsilon::make(0.35);
    const Params p{0.1, 0.9, -0.2, 0.5};
    auto c_at = [&](Complex x) {
        return (phi12_quadrature(p, e, x, Frame::Origin) - phi12_quadrature(p, e, x, Frame::Infinity))
             / phi_solution(p, e, 1, x);
    };
    const Complex c1 = c_at(Complex{0.4, 0.5});
    const Complex c2 = c_at(Complex{0.1, 0.9});
    const Complex c3 = c_at(Complex{-0.6, 0.7});
    CHECK(std::abs(c1 - c2) < 1e-9 * std::abs(c1));
    CHECK(std::abs(c1 - c3) < 1e-9 * std::abs(c1));
}

TEST_CASE("phi12_quadrature with gamma1 = gamma2 tends to the elementary form as eps -> 0") {
    const Params p{0.2, 1.2, 0.3, 0.3};
    const Complex x{0.5, 0.4};
    const Complex limit = std::exp(p.gamma1 * x - p.beta2 / x) / p.dbeta();
    double previous = 1e300;
    for (double s : {0.1, 0.03, 0.01}) {
        const Complex v = phi12_quadrature(p, Epsilon::make(s), x, Frame::Origin);
        const double err = std::abs(v - limit) / std::abs(limit);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-2);
}

TEST_CASE("phi12_quadrature: path and endpoint errors") {
    const Epsilon e = Epsilon::make(0.35);
    const Params p{0.1, 0.9, -0.2, 0.5};
    const Point base = frame_base_point(p, e, Frame::Origin);
    const Complex xb = singular_points(e).at(base);
    CHECK_THROWS_AS(phi12_quadrature(p, e, xb, Frame::Origin), PathError);
    // segment from the base through the other finite point
    const Complex beyond = -2.0 * xb;
    CHECK_THROWS_AS(phi12_quadrature(p, e, beyond, Frame::Origin), PathError);
}

TEST_CASE("loops: geometry and validation") {
    const Epsilon e = Epsilon::make(0.4);
    const auto sp = singular_points(e);
    for (Point pt : all_points) {
        const Loop l = loop_around(e, pt);
        CHECK(l.vertices.front() == l.base);
        CHECK(l.vertices.back() == l.base);
        REQUIRE(l.enclosed.size() == 1u);
        CHECK(l.enclosed[0] == pt);
        for (Point q : all_points)
            CHECK(std::abs(winding_number(l.vertices, sp.at(q)) - (q == pt ? 1.0 : 0.0)) < 1e-12);
    }
    CHECK(empty_loop(e).enclosed.empty());
    const Loop pair = loop_around_pair(e, Point::L, Point::R);
    CHECK(pair.enclosed.size() == 2u);
    CHECK_THROWS_AS(make_loop(e, {Complex{0.0, 0.2}, Complex{1.0, 0.2}}), PathError);
    CHECK_THROWS_AS(make_loop(e, {Complex{0.0, 0.2}, sp.xR, Complex{0.0, 0.2}}), PathError);
    // clockwise loop around R has winding -1
    const Complex c = sp.xR;
    const double h = 0.1;
    CHECK_THROWS_AS(make_loop(e, {c + h, c - I * h, c - h, c + I * h, c + h}), PathError);
    CHECK_THROWS_AS(compose(e, loop_around(e, Point::R), loop_around(e, Point::L, Complex{0.0, -0.2})), PathError);
}

TEST_CASE("monodromy: empty loop is the identity") {
    const double s = 0.5;
    const Epsilon e = Epsilon::make(s);
    const Params p = a1_params(1, 1, s);
    const FundamentalFrame f = make_frame(p, e, default_loop_base(e), Frame::Origin);
    const Matrix2C M = monodromy_ode(p, e, empty_loop(e), f);
    CHECK(max_entry(M - Matrix2C::Identity()) < 1e-8);
}

TEST_CASE("monodromy: numeric continuation matches the closed form at A1, n = 1, 2") {
    for (int n : {1, 2}) {
        const double s = 0.5;
        const Epsilon e = Epsilon::make(s);
        const Params p = a1_params(n, n, s);
        const Resonance r = classify_resonance(p, e);
        REQUIRE(r.kind == ResonanceKind::A1);
        const Complex base = default_loop_base(e);
        const FundamentalFrame f = make_frame(p, e, base, Frame::Origin);
        std::array<Matrix2C, 4> Ms;
        for (Point pt : all_points) {
            const Matrix2C M = monodromy_ode(p, e, loop_around(e, pt, base), f);
            Ms[static_cast<int>(pt)] = M;
            const MonodromyDecomp md = monodromy_decomp(p, e, r, pt);
            CHECK(max_entry(M - md.M) < 1e-6);
            // first column is an eigenvector with eigenvalue e^{2 pi i rho_1}
            const auto rho = char_exponents(p, e).at(pt);
            CHECK(std::abs(M(1, 0)) < 1e-6);
            CHECK(std::abs(M(0, 0) - std::exp(two_pi_i * rho[0])) < 1e-6);
            CHECK(std::abs(M.determinant() - std::exp(two_pi_i * (rho[0] + rho[1] - 1.0))) < 1e-8);
        }
        // non-logarithmic point R: diagonalisable (no off-diagonal part)
        CHECK(std::abs(Ms[static_cast<int>(Point::R)](0, 1)) < 1e-6);
        // logarithmic point L: genuine Jordan block
        CHECK(std::abs(Ms[static_cast<int>(Point::L)](0, 1)) > 1.0);

        const Matrix2C expected = Ms[static_cast<int>(Point::R)] * Ms[static_cast<int>(Point::L)];
        const Matrix2C composed =
            monodromy_ode(p, e, compose(e, loop_around(e, Point::L, base), loop_around(e, Point::R, base)), f);
        const Matrix2C pair = monodromy_ode(p, e, loop_around_pair(e, Point::L, Point::R, base), f);
        CHECK(max_entry(composed - expected) < 1e-6);
        CHECK(max_entry(pair - expected) < 1e-6);
    }
}

TEST_CASE("monodromy: frame base must match the loop base") {
    const double s = 0.5;
    const Epsilon e = Epsilon::make(s);
    const Params p = a1_params(1, 1, s);
    const FundamentalFrame f = make_frame(p, e, Complex{0.0, 0.3}, Frame::Origin);
    CHECK_THROWS_AS(monodromy_ode(p, e, loop_around(e, Point::R), f), PathError);
}
