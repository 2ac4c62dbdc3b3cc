/**
 * @file test_model.cpp
 * @brief Tests of the equation data: coefficients, exponents, resonance
 * classification, symmetries and the four-point classifier.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heunstokes/errors.hpp"
#include "heunstokes/model.hpp"
#include "heunstokes/quadrature.hpp"

using namespace heunstokes;

namespace {

Complex draw(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    const double re = d(rng);
    const double im = d(rng);
    return {re, im};
}

Params random_params(std::mt19937_64& rng) { return {draw(rng), draw(rng), draw(rng), draw(rng)}; }

Epsilon random_eps(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> r(0.1, 0.8), a(-1.2, 1.2);
    return Epsilon::make(std::polar(r(rng), a(rng)));
}

Complex residue(const std::function<Complex(Complex)>& f, Complex at, double radius) {
    return quad::trapezoid_circle(f, at, radius, 128);
}

} // namespace

TEST_CASE("initial coefficients: beta = gamma = 0 at x = 1") {
    const auto c = initial_coefficients(Params{0.0, 0.0, 0.0, 0.0}, 1.0);
    CHECK(std::abs(c.b1 - 2.0) < 1e-15);
    CHECK(std::abs(c.b0) < 1e-15);
    CHECK_THROWS_AS(initial_coefficients(Params{}, 0.0), DomainError);
}

TEST_CASE("initial coefficients: gamma1 = gamma2 = 0 leaves no constant term in b1") {
    const Params p{0.3, -0.7, 0.0, 0.0};
    // b1(x) = 2/x - (beta1 + beta2)/x^2 tends to 0 as x grows
    const auto c = initial_coefficients(p, 1e8);
    CHECK(std::abs(c.b1) < 1e-7);
}

TEST_CASE("property: initial coefficients match the composition L2 L1") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
        GeneralParams g{draw(rng), draw(rng), draw(rng), draw(rng), draw(rng), draw(rng)};
        const Complex x = draw(rng, 2.0) + Complex{0.0, 0.2};
        auto a = [&](Complex al, Complex be, Complex ga, Complex z) { return al / z + be / (z * z) + ga; };
        auto a1 = [&](Complex z) { return a(g.alpha1, g.beta1, g.gamma1, z); };
        const Complex a1p = quad::cauchy_derivative(a1, x, 0.05 * std::abs(x), 48);
        const Complex b1 = -(a1(x) + a(g.alpha2, g.beta2, g.gamma2, x));
        const Complex b0 = a1(x) * a(g.alpha2, g.beta2, g.gamma2, x) - a1p;
        const auto c = initial_coefficients(g, x);
        CHECK(std::abs(c.b1 - b1) < 1e-12 * (1.0 + std::abs(b1)));
        CHECK(std::abs(c.b0 - b0) < 1e-9 * (1.0 + std::abs(b0)));
    }
}

TEST_CASE("first solution solves the initial scalar equation") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 20; ++i) {
        const Params p = random_params(rng);
        const GeneralParams g = GeneralParams::from(p);
        const Complex x = Complex{0.8, 0.3} + draw(rng, 0.3);
        auto y = [&](Complex z) { return first_solution(g, z); };
        const Complex y1 = quad::cauchy_derivative(y, x, 0.1, 64);
        const Complex y2 = quad::cauchy_derivative(
            [&](Complex z) { return quad::cauchy_derivative(y, z, 0.05, 64); }, x, 0.1, 64);
        const auto c = initial_coefficients(p, x);
        const Complex res = y2 + c.b1 * y1 + c.b0 * y(x);
        const double scale = std::abs(y2) + std::abs(c.b1 * y1) + std::abs(c.b0 * y(x));
        CHECK(std::abs(res) / scale < 1e-8);
    }
}

TEST_CASE("perturbed coefficients tend to the initial ones as eps -> 0") {
    const Params p{0.4, -1.1, 0.7, 0.2};
    const Complex x = 1.0;
    for (double s : {1e-5, 1e-6, 1e-7}) {
        const auto c = perturbed_coefficients(p, Epsilon::make(s), x);
        const Complex L1 = 0.0 / x + p.beta1 / (x * x) + p.gamma1;
        const Complex L2 = -2.0 / x + p.beta2 / (x * x) + p.gamma2;
        CHECK(std::abs(c.a1 - L1) < 1e-8);
        CHECK(std::abs(c.a2 - L2) < 1e-8);
        const auto init = initial_coefficients(p, x);
        CHECK(std::abs(c.b1 - init.b1) < 1e-8);
        CHECK(std::abs(c.b0 - init.b0) < 1e-7);
    }
    CHECK_THROWS_AS(perturbed_coefficients(p, Epsilon::make(0.5), 0.5), DomainError);
}

TEST_CASE("residues of a1 and a2 at xR") {
    const Params p{0.9, -0.35, 0.25, 1.5};
    const Epsilon e = Epsilon::make(0.3);
    const Complex xR = singular_points(e).xR;
    const Complex r1 = residue([&](Complex z) { return perturbed_coefficients(p, e, z).a1; }, xR, 0.1);
    const Complex r2 = residue([&](Complex z) { return perturbed_coefficients(p, e, z).a2; }, xR, 0.1);
    CHECK(std::abs(r1 - p.beta1 / (2.0 * e.sqrt_eps)) < 1e-12);
    CHECK(std::abs(r2 - (p.beta2 / (2.0 * e.sqrt_eps) - 1.0)) < 1e-12);
}

TEST_CASE("property: exponents are the residues of a1 and a2 + 1") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        const Params p = random_params(rng);
        const Epsilon e = random_eps(rng);
        const auto sp = singular_points(e);
        const auto ce = char_exponents(p, e);
        double gap = 1e300;
        for (Point a : all_points)
            for (Point b : all_points)
                if (a != b) gap = std::min(gap, std::abs(sp.at(a) - sp.at(b)));
        for (Point pt : all_points) {
            const Complex c = sp.at(pt);
            const Complex r1 = residue([&](Complex z) { return perturbed_coefficients(p, e, z).a1; }, c, 0.3 * gap);
            const Complex r2 = residue([&](Complex z) { return perturbed_coefficients(p, e, z).a2; }, c, 0.3 * gap);
            CHECK(std::abs(ce.at(pt)[0] - r1) < 1e-10 * (1.0 + std::abs(r1)));
            CHECK(std::abs(ce.at(pt)[1] - 1.0 - r2) < 1e-10 * (1.0 + std::abs(r2)));
        }
    }
}

TEST_CASE("characteristic exponent examples") {
    const Epsilon e = Epsilon::make(0.3);
    const Params p{2.0 * 0.3, 0.1, 0.0, 0.0};
    const auto ce = char_exponents(p, e);
    CHECK(std::abs(ce.at(Point::R)[0] - 1.0) < 1e-15);
    CHECK(std::abs(ce.at(Point::RR)[0]) < 1e-15);
    CHECK(std::abs(ce.at(Point::RR)[1] - 1.0) < 1e-15);
    CHECK(std::abs(ce.sum() - 2.0) < 1e-15);
}

TEST_CASE("property: exponent sum is 2 and the difference laws hold") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 200; ++i) {
        const Params p = random_params(rng);
        const Epsilon e = random_eps(rng);
        const auto ce = char_exponents(p, e);
        const double scale = 1.0 + std::abs(p.beta1 / e.sqrt_eps) + std::abs(p.gamma1 / e.sqrt_eps)
                           + std::abs(p.beta2 / e.sqrt_eps) + std::abs(p.gamma2 / e.sqrt_eps);
        CHECK(std::abs(ce.sum() - 2.0) < 1e-14 * scale);
        CHECK(std::abs(ce.difference(Point::R) + ce.difference(Point::L)) < 1e-14 * scale);
        CHECK(std::abs(ce.difference(Point::RR) + ce.difference(Point::LL) + 2.0) < 1e-14 * scale);
    }
}

TEST_CASE("epsilon validation and renormalisation") {
    CHECK_THROWS_AS(Epsilon::make(0.0), DomainError);
    CHECK_THROWS_AS(Epsilon::make(1.0), DomainError);
    CHECK_THROWS_AS(Epsilon::make(Complex{0.0, 1.0}), DomainError);
    CHECK(Epsilon::make(-0.5).sqrt_eps == Complex{0.5, 0.0});
    CHECK(Epsilon::raw(-0.5).sqrt_eps == Complex{-0.5, 0.0});
    CHECK(Epsilon::make(0.5).real_positive());
    CHECK_FALSE(Epsilon::make(std::polar(0.5, pi / 4)).real_positive());
}

TEST_CASE("classify_resonance examples") {
    const Resonance a1 = classify_resonance(Params{0.0, 2.0, 2.0, 0.0}, Epsilon::make(0.5));
    CHECK(a1.kind == ResonanceKind::A1);
    CHECK(a1.n_beta == 2);
    CHECK(a1.n_gamma == 2);

    // sqrt(eps) = 1 is excluded (eps^2 = 1); the same ratios with every parameter halved
    CHECK_THROWS_AS(Epsilon::make(1.0), DomainError);
    const Resonance a4b = classify_resonance(Params{1.0, 0.0, 0.0, 2.0}, Epsilon::make(0.5));
    CHECK(a4b.kind == ResonanceKind::A4);
    CHECK(a4b.n_beta == 1);
    CHECK(a4b.n_gamma == 2);

    const Resonance none = classify_resonance(Params{0.0, 2.0, 2.0, 0.0}, Epsilon::make(std::sqrt(Complex{0.0, 1.0})));
    CHECK(none.kind == ResonanceKind::None);
}

TEST_CASE("resonance_data with gamma1 = gamma2 realises both types of a pair") {
    const Params p{0.0, 1.0, 0.3, 0.3};
    const Epsilon e = Epsilon::make(0.5);
    CHECK(resonance_data(p, e, ResonanceKind::A1).has_value());
    CHECK(resonance_data(p, e, ResonanceKind::A2).has_value());
    CHECK_FALSE(resonance_data(p, e, ResonanceKind::A3).has_value());
    CHECK(classify_resonance(p, e).kind == ResonanceKind::A1);
}

TEST_CASE("property: classification is invariant under sqrt(eps) -> -sqrt(eps)") {
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<int> nd(1, 6), md(0, 6), kd(0, 3);
    std::uniform_real_distribution<double> sd(0.05, 0.9);
    for (int i = 0; i < 100; ++i) {
        const double s = sd(rng);
        const int n = nd(rng), m = md(rng);
        const int k = kd(rng);
        const double sb = (k == 0 || k == 1) ? 1.0 : -1.0;
        const double sg = (k == 0 || k == 3) ? -1.0 : 1.0;
        const Complex b1 = draw(rng).real();
        const Complex g1 = draw(rng).real();
        const Params p{b1, b1 + sb * 2.0 * s * n, g1, g1 + sg * 2.0 * s * m};
        const Resonance r_pos = classify_resonance(p, Epsilon::make(s));
        const Resonance r_neg = classify_resonance(p, Epsilon::make(-s));
        CHECK(r_pos.kind != ResonanceKind::None);
        CHECK(r_pos.kind == r_neg.kind);
        CHECK(r_pos.n_beta == n);
        CHECK(r_pos.n_gamma == m);
        CHECK(r_neg.n_beta == r_pos.n_beta);
        CHECK(r_neg.n_gamma == r_pos.n_gamma);
    }
}

TEST_CASE("property: non-real-positive eps never resonates") {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> ang(0.05, 1.5);
    for (int i = 0; i < 100; ++i) {
        const Params p{0.0, 2.0, 2.0, 0.0};
        const Epsilon e = Epsilon::make(std::polar(0.5, ang(rng)));
        CHECK(classify_resonance(p, e).kind == ResonanceKind::None);
    }
}

TEST_CASE("logarithmic points per type") {
    CHECK(logarithmic_points(ResonanceKind::A1) == std::array<Point, 2>{Point::L, Point::LL});
    CHECK(logarithmic_points(ResonanceKind::A2) == std::array<Point, 2>{Point::L, Point::RR});
    CHECK(logarithmic_points(ResonanceKind::A3) == std::array<Point, 2>{Point::R, Point::LL});
    CHECK(logarithmic_points(ResonanceKind::A4) == std::array<Point, 2>{Point::R, Point::RR});
    CHECK_THROWS_AS(logarithmic_points(ResonanceKind::None), ResonanceMismatch);
}

TEST_CASE("symmetries: identity, inversion composites and the reflection") {
    std::mt19937_64 rng(27);
    const GeneralParams p = GeneralParams::from(random_params(rng));
    auto same = [](const GeneralParams& a, const GeneralParams& b) {
        return a.alpha1 == b.alpha1 && a.alpha2 == b.alpha2 && a.beta1 == b.beta1 && a.beta2 == b.beta2
            && a.gamma1 == b.gamma1 && a.gamma2 == b.gamma2;
    };
    CHECK(same(symmetry_transport(p, Symmetry::Identity), p));
    CHECK(same(symmetry_transport(symmetry_transport(p, Symmetry::Inversion), Symmetry::Inversion), p));
    const GeneralParams composite =
        symmetry_transport(symmetry_transport(p, Symmetry::Inversion), Symmetry::NegInversion);
    CHECK(same(composite, symmetry_transport(p, Symmetry::Reflection)));
    const Complex x{0.4, 0.7};
    CHECK(std::abs(symmetry_point(Symmetry::NegInversion, symmetry_point(Symmetry::Inversion, x))
                   - symmetry_point(Symmetry::Reflection, x)) < 1e-15);
}

TEST_CASE("property: the first solution is transported by each symmetry") {
    std::mt19937_64 rng(28);
    for (int i = 0; i < 50; ++i) {
        const GeneralParams p = GeneralParams::from(random_params(rng));
        const Complex x = Complex{0.5, 0.5} + draw(rng, 0.4);
        for (Symmetry s : {Symmetry::Inversion, Symmetry::NegInversion, Symmetry::Reflection}) {
            const GeneralParams q = symmetry_transport(p, s);
            const Complex before = first_solution(p, x);
            const Complex after = first_solution(q, symmetry_point(s, x));
            CHECK(std::abs(after - before) < 1e-12 * std::abs(before));
        }
    }
}

TEST_CASE("property: the transported parameters give the transported equation") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 20; ++i) {
        const GeneralParams p = GeneralParams::from(random_params(rng));
        const GeneralParams q = symmetry_transport(p, Symmetry::Inversion);
        // y(x) = w(1/x) solves the p-equation iff w solves the q-equation
        const Complex x = Complex{0.7, 0.4} + draw(rng, 0.2);
        auto w = [&](Complex z) { return first_solution(q, z); };
        auto y = [&](Complex z) { return w(1.0 / z); };
        const Complex y1 = quad::cauchy_derivative(y, x, 0.05, 64);
        const Complex y2 = quad::cauchy_derivative(
            [&](Complex z) { return quad::cauchy_derivative(y, z, 0.025, 64); }, x, 0.05, 64);
        const auto c = initial_coefficients(p, x);
        const Complex res = y2 + c.b1 * y1 + c.b0 * y(x);
        const double scale = std::abs(y2) + std::abs(c.b1 * y1) + std::abs(c.b0 * y(x));
        CHECK(std::abs(res) / scale < 1e-8);
    }
}

TEST_CASE("four-point classifier: case I vanishes at t = 0, case V at t = 1/sqrt(eps)") {
    std::mt19937_64 rng(30);
    const Epsilon e = Epsilon::make(Complex{0.35, 0.1});
    const GeneralParams g1 = heun_case_sample(HeunCase::I, e, rng);
    const HeunReport r1 = heun_case_check(g1, e);
    CHECK(r1.points[0].ordinary);
    CHECK(r1.points[0].exact.vanishes(1e-12));
    CHECK(r1.singular_count == 4);

    const GeneralParams g5 = heun_case_sample(HeunCase::V, e, rng);
    const HeunReport r5 = heun_case_check(g5, e);
    CHECK(designated_point(HeunCase::V) == 3);
    CHECK(r5.points[3].ordinary);
    CHECK(r5.singular_count == 4);
    CHECK(std::find(r5.matched.begin(), r5.matched.end(), HeunCase::V) != r5.matched.end());
}

TEST_CASE("property: every case family has exactly four singular points") {
    std::mt19937_64 rng(31);
    const Epsilon e = Epsilon::make(Complex{0.45, -0.2});
    for (HeunCase c : all_heun_cases) {
        for (int i = 0; i < 10; ++i) {
            const GeneralParams g = heun_case_sample(c, e, rng);
            const HeunReport r = heun_case_check(g, e);
            CHECK(r.singular_count == 4);
            CHECK(r.points[designated_point(c)].ordinary);
            CHECK(r.consistent);
            CHECK(heun_case_condition(c, g, e));
        }
    }
}

TEST_CASE("property: generic parameters have five singular points") {
    std::mt19937_64 rng(32);
    const Epsilon e = Epsilon::make(0.6);
    for (int i = 0; i < 50; ++i) {
        const GeneralParams g = heun_generic_sample(rng);
        const HeunReport r = heun_case_check(g, e);
        CHECK(r.singular_count == 5);
        CHECK(r.matched.empty());
    }
}

TEST_CASE("printed case III relation does not produce an ordinary point") {
    std::mt19937_64 rng(33);
    const Epsilon e = Epsilon::make(0.4);
    int singular5 = 0;
    for (int i = 0; i < 10; ++i) {
        const GeneralParams g = heun_case_sample(HeunCase::III, e, rng, true);
        const HeunReport r = heun_case_check(g, e);
        if (r.singular_count == 5) ++singular5;
        CHECK(r.points[designated_point(HeunCase::III)].displayed_vanishes);
    }
    CHECK(singular5 == 10);
}

TEST_CASE("q41 reading: alpha1 alpha2 is consistent, alpha1 squared is not") {
    const Epsilon e = Epsilon::make(Complex{0.3, 0.2});
    const ReadingConsistency good = heun_reading_consistency(HeunReading::AlphaOneAlphaTwo, e, 20, 7);
    const ReadingConsistency bad = heun_reading_consistency(HeunReading::AlphaOneSquared, e, 20, 7);
    CHECK(good.all_ok);
    CHECK_FALSE(bad.all_ok);
}

TEST_CASE("point names round-trip") {
    for (Point pt : all_points) CHECK(parse_point(to_string(pt)) == pt);
    CHECK_THROWS(parse_point("X"));
    CHECK(parse_resonance("A3") == ResonanceKind::A3);
    CHECK_THROWS(parse_resonance("B1"));
}
