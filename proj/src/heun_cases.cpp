// Four-singular-point classifier for the Heun-type family with free alphas.
//
// After x = 1/t the equation reads
//   y'' + [sum_j p_j/(t - t_j)] y' + [sum_j q_j0/(t - t_j)^2 + q_j1/(t - t_j)] y = 0
// with t_j in {0, sqrt(eps), -sqrt(eps), 1/sqrt(eps), -1/sqrt(eps)}; t_j is
// ordinary iff (p_j, q_j0, q_j1) = 0.

#include <algorithm>
#include <cmath>

#include "heunstokes/errors.hpp"
#include "heunstokes/model.hpp"

namespace heunstokes {

namespace {

/// Sum of terms that remembers sum |term| for relative zero tests.
struct Accum {
    Complex value{0.0, 0.0};
    double scale = 0.0;

    Accum& operator+=(Complex term) {
        value += term;
        scale += std::abs(term);
        return *this;
    }
    Accum& operator-=(Complex term) { return *this += -term; }
};

/// Product of two accumulated factors: value multiplies, scale multiplies.
Accum times(const Accum& a, const Accum& b) {
    Accum r;
    r.value = a.value * b.value;
    r.scale = a.scale * b.scale;
    return r;
}

Accum scaled(const Accum& a, Complex c) {
    Accum r;
    r.value = a.value * c;
    r.scale = a.scale * std::abs(c);
    return r;
}

Accum& add(Accum& target, const Accum& piece) {
    target.value += piece.value;
    target.scale += piece.scale;
    return target;
}

HeunTriple make_triple(const Accum& p, const Accum& q0, const Accum& q1) {
    return {p.value, q0.value, q1.value, p.scale, q0.scale, q1.scale};
}

void require_eps(const Epsilon& e) {
    const Complex eps = e.eps();
    if (std::abs(1.0 - eps * eps) < 1e-14) throw DomainError("heun_case_check: eps^2 = 1");
}

} // namespace

bool HeunTriple::vanishes(double tol) const {
    return std::abs(p) <= tol * scale_p && std::abs(q0) <= tol * scale_q0 && std::abs(q1) <= tol * scale_q1;
}

double HeunTriple::relative_size() const {
    auto rel = [](Complex v, double s) { return s > 0.0 ? std::abs(v) / s : std::abs(v); };
    return std::max({rel(p, scale_p), rel(q0, scale_q0), rel(q1, scale_q1)});
}

int designated_point(HeunCase c) {
    switch (c) {
    case HeunCase::I:
    case HeunCase::II: return 0;
    case HeunCase::III: return 1;
    case HeunCase::IV: return 2;
    case HeunCase::V:
    case HeunCase::VI: return 3;
    case HeunCase::VII:
    case HeunCase::VIII: return 4;
    }
    return -1;
}

std::string_view to_string(HeunCase c) {
    static constexpr std::array<std::string_view, 8> names = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
    return names[static_cast<int>(c)];
}

HeunTriple heun_exact_triple(const GeneralParams& g, const Epsilon& e, int index) {
    require_eps(e);
    const Complex s = e.sqrt_eps;
    const Complex eps = e.eps();
    const Complex one_m = 1.0 - eps * eps;
    const Complex a1 = g.alpha1, a2 = g.alpha2, b1 = g.beta1, b2 = g.beta2, g1 = g.gamma1, g2 = g.gamma2;
    Accum p, q0, q1;
    switch (index) {
    case 0:
        p += a1; p += a2; p += 2.0;
        q0 = times(Accum{} += a1, (Accum{} += a2) += 1.0);
        q1 += 2.0 * b1; q1 += a1 * b2; q1 += a2 * b1;
        q1 -= 2.0 * g1 / eps; q1 -= a1 * g2 / eps; q1 -= a2 * g1 / eps;
        break;
    case 1:
    case 2: {
        const double sg = index == 1 ? 1.0 : -1.0;
        p += sg * g1 / (2.0 * s); p += sg * g2 / (2.0 * s);
        q0 = scaled(times(Accum{} += g1, (Accum{} += g2) -= sg * 2.0 * s), 1.0 / (4.0 * eps));
        const Complex den = 2.0 * eps * one_m;
        q1 += a1 * g2 / den; q1 += a2 * g1 / den;
        q1 += sg * s * b1 * g2 / den; q1 += sg * s * b2 * g1 / den;
        q1 += g1 * 4.0 * s / (4.0 * eps * s);
        q1 -= sg * g1 * g2 / (4.0 * eps * s);
        break;
    }
    case 3:
    case 4: {
        const double sg = index == 3 ? 1.0 : -1.0;
        p -= a1 / 2.0; p -= a2 / 2.0; p -= sg * b1 / (2.0 * s); p -= sg * b2 / (2.0 * s);
        Accum f1, f2;
        f1 += a1 / 2.0; f1 += sg * b1 / (2.0 * s);
        f2 += 1.0; f2 += a2 / 2.0; f2 += sg * b2 / (2.0 * s);
        q0 = times(f1, f2);
        add(q1, scaled(q0, -sg * 2.0 * s));
        q1 += sg * b1 * b2 / (4.0 * s); q1 -= sg * eps * a1 * a2 / (4.0 * s);
        q1 -= eps * a1 * g2 / (2.0 * one_m); q1 -= eps * a2 * g1 / (2.0 * one_m);
        q1 -= sg * eps * b1 * g2 / (2.0 * s * one_m); q1 -= sg * eps * b2 * g1 / (2.0 * s * one_m);
        break;
    }
    default: throw std::out_of_range("heun_exact_triple: index must be 0..4");
    }
    return make_triple(p, q0, q1);
}

HeunTriple heun_displayed_triple(const GeneralParams& g, const Epsilon& e, int index, HeunReading reading) {
    require_eps(e);
    const Complex s = e.sqrt_eps;
    const Complex eps = e.eps();
    const Complex one_m = 1.0 - eps * eps;
    const Complex a1 = g.alpha1, a2 = g.alpha2, b1 = g.beta1, b2 = g.beta2, g1 = g.gamma1, g2 = g.gamma2;
    Accum p, q0, q1;
    switch (index) {
    case 0:
        return heun_exact_triple(g, e, 0);
    case 1:
        p += g1 / (2.0 * s); p += g2 / (2.0 * s);
        q0 = scaled(times(Accum{} += g1, (Accum{} += 2.0 * s) -= g2), -0.25);
        add(q1, scaled(times(Accum{} += g1, (Accum{} += 2.0 * s) -= g2), 1.0 / (2.0 * eps * s)));
        q1 += g1 * g2 / (4.0 * eps);
        q1 += b1 * g2 * s / (2.0 * eps * one_m); q1 += b2 * g1 * s / (2.0 * eps * one_m);
        q1 += a1 * g2 / (2.0 * eps * one_m); q1 += a2 * g1 / (2.0 * eps * one_m);
        break;
    case 2:
        p -= g1 / (2.0 * s); p -= g2 / (2.0 * s);
        q0 = scaled(times(Accum{} += g1, (Accum{} += 2.0 * s) += g2), 0.25);
        add(q1, scaled(times(Accum{} += g1, (Accum{} += 2.0 * s) += g2), 1.0 / (2.0 * eps * s)));
        q1 -= g1 * g2 / (4.0 * eps);
        q1 -= b1 * g2 * s / (2.0 * eps * one_m); q1 -= b2 * g1 * s / (2.0 * eps * one_m);
        q1 += a1 * g2 / (2.0 * eps * one_m); q1 += a2 * g1 / (2.0 * eps * one_m);
        break;
    case 3:
    case 4: {
        // the printed q51 repeats q41's leading sign -2 sqrt(eps)
        const double sg = index == 3 ? 1.0 : -1.0;
        const Complex aa = reading == HeunReading::AlphaOneAlphaTwo ? a1 * a2 : a1 * a1;
        p -= a1 / 2.0; p -= a2 / 2.0; p -= sg * b1 / (2.0 * s); p -= sg * b2 / (2.0 * s);
        Accum f1, f2;
        f1 += a1 / 2.0; f1 += sg * b1 / (2.0 * s);
        f2 += 1.0; f2 += a2 / 2.0; f2 += sg * b2 / (2.0 * s);
        q0 = times(f1, f2);
        add(q1, scaled(q0, -2.0 * s));
        q1 += sg * b1 * b2 / (4.0 * s); q1 -= sg * eps * aa / (4.0 * s);
        q1 -= eps * a1 * g2 / (2.0 * one_m); q1 -= eps * a2 * g1 / (2.0 * one_m);
        q1 -= sg * eps * b1 * g2 / (2.0 * s * one_m); q1 -= sg * eps * b2 * g1 / (2.0 * s * one_m);
        break;
    }
    default: throw std::out_of_range("heun_displayed_triple: index must be 0..4");
    }
    return make_triple(p, q0, q1);
}

namespace {

bool zero_rel(const Accum& a, double tol) { return std::abs(a.value) <= tol * std::max(a.scale, 1.0); }

} // namespace

bool heun_case_condition(HeunCase c, const GeneralParams& g, const Epsilon& e, bool printed, double tol) {
    require_eps(e);
    const Complex s = e.sqrt_eps;
    const Complex eps = e.eps();
    const Complex one_m = 1.0 - eps * eps;
    auto eq = [&](Complex a, Complex b) { return zero_rel((Accum{} += a) -= b, tol); };
    switch (c) {
    case HeunCase::I: return eq(g.alpha1, 0.0) && eq(g.alpha2, -2.0);
    case HeunCase::II: {
        Accum r;
        r += g.beta1; r -= g.beta2; r += g.gamma2 / eps; r -= g.gamma1 / eps;
        return eq(g.alpha1, -1.0) && eq(g.alpha2, -1.0) && zero_rel(r, tol);
    }
    case HeunCase::III:
    case HeunCase::IV: {
        const double sg = c == HeunCase::III ? 1.0 : -1.0;
        if (!eq(g.gamma1, -sg * 2.0 * s) || !eq(g.gamma2, sg * 2.0 * s)) return false;
        Accum r;
        if (printed) {
            // (eps (b1-b2) +- sqrt(eps) (a1-a2)) / (eps (1-eps^2)) = +-1
            r += eps * g.beta1; r -= eps * g.beta2;
            r += sg * s * g.alpha1; r -= sg * s * g.alpha2;
            r -= sg * eps * one_m;
        } else {
            // sqrt(eps) (b1-b2) +- (a1-a2) = +-(1 - eps^2)
            r += s * g.beta1; r -= s * g.beta2;
            r += sg * g.alpha1; r -= sg * g.alpha2;
            r -= sg * one_m;
        }
        return zero_rel(r, tol);
    }
    case HeunCase::V: return eq(g.beta1, -g.alpha1 * s) && eq(g.beta2, -g.alpha2 * s);
    case HeunCase::VII: return eq(g.beta1, g.alpha1 * s) && eq(g.beta2, g.alpha2 * s);
    case HeunCase::VI:
    case HeunCase::VIII: {
        const double sg = c == HeunCase::VI ? 1.0 : -1.0;
        if (!eq(g.beta1, -sg * (g.alpha1 - 2.0) * s) || !eq(g.beta2, -sg * (g.alpha2 + 2.0) * s)) return false;
        Accum r;
        r += g.alpha2 / 2.0; r -= g.alpha1 / 2.0;
        r += sg * s * g.gamma2 / one_m; r -= sg * s * g.gamma1 / one_m;
        r += 1.0;
        return zero_rel(r, tol);
    }
    }
    return false;
}

HeunReport heun_case_check(const GeneralParams& g, const Epsilon& e, HeunReading reading, double tol) {
    require_eps(e);
    const Complex s = e.sqrt_eps;
    const std::array<Complex, 5> ts = {0.0, s, -s, 1.0 / s, -1.0 / s};
    HeunReport rep;
    int ordinary = 0;
    for (int j = 0; j < 5; ++j) {
        auto& pr = rep.points[j];
        pr.index = j + 1;
        pr.t = ts[j];
        pr.at_infinity = j == 0;
        if (j != 0) pr.x = 1.0 / ts[j];
        pr.exact = heun_exact_triple(g, e, j);
        pr.displayed = heun_displayed_triple(g, e, j, reading);
        pr.ordinary = pr.exact.vanishes(tol);
        pr.displayed_vanishes = pr.displayed.vanishes(tol);
        if (pr.ordinary) ++ordinary;
    }
    rep.singular_count = 5 - ordinary;
    for (auto c : all_heun_cases) {
        if (heun_case_condition(c, g, e, false)) rep.matched.push_back(c);
        if (heun_case_condition(c, g, e, true)) rep.matched_displayed.push_back(c);
    }
    for (auto c : rep.matched) {
        if (!rep.points[designated_point(c)].ordinary) rep.consistent = false;
    }
    for (int j = 0; j < 5; ++j) {
        if (!rep.points[j].ordinary) continue;
        const bool explained = std::any_of(rep.matched.begin(), rep.matched.end(),
                                           [j](HeunCase c) { return designated_point(c) == j; });
        // gamma1 = gamma2 = 0 makes t = +-sqrt(eps) ordinary (three-point family outside the list)
        const bool three_point_family = (j == 1 || j == 2) && std::abs(g.gamma1) <= tol && std::abs(g.gamma2) <= tol;
        if (!explained && !three_point_family) rep.consistent = false;
    }
    return rep;
}

namespace {

Complex draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

} // namespace

GeneralParams heun_generic_sample(std::mt19937_64& rng) {
    GeneralParams g;
    g.alpha1 = draw(rng);
    g.alpha2 = draw(rng);
    g.beta1 = draw(rng);
    g.beta2 = draw(rng);
    g.gamma1 = draw(rng);
    g.gamma2 = draw(rng);
    return g;
}

GeneralParams heun_case_sample(HeunCase c, const Epsilon& e, std::mt19937_64& rng, bool printed) {
    require_eps(e);
    const Complex s = e.sqrt_eps;
    const Complex eps = e.eps();
    const Complex one_m = 1.0 - eps * eps;
    GeneralParams g = heun_generic_sample(rng);
    switch (c) {
    case HeunCase::I:
        g.alpha1 = 0.0;
        g.alpha2 = -2.0;
        break;
    case HeunCase::II:
        g.alpha1 = g.alpha2 = -1.0;
        g.gamma2 = g.gamma1 - eps * (g.beta1 - g.beta2);
        break;
    case HeunCase::III:
    case HeunCase::IV: {
        const double sg = c == HeunCase::III ? 1.0 : -1.0;
        g.gamma1 = -sg * 2.0 * s;
        g.gamma2 = sg * 2.0 * s;
        const Complex da = g.alpha1 - g.alpha2;
        if (printed) {
            g.beta1 = g.beta2 + (sg * eps * one_m - sg * s * da) / eps;
        } else {
            g.beta1 = g.beta2 + (sg * one_m - sg * da) / s;
        }
        break;
    }
    case HeunCase::V:
        g.beta1 = -g.alpha1 * s;
        g.beta2 = -g.alpha2 * s;
        break;
    case HeunCase::VII:
        g.beta1 = g.alpha1 * s;
        g.beta2 = g.alpha2 * s;
        break;
    case HeunCase::VI:
    case HeunCase::VIII: {
        const double sg = c == HeunCase::VI ? 1.0 : -1.0;
        g.alpha2 = g.alpha1 - 2.0 - sg * 2.0 * s * (g.gamma2 - g.gamma1) / one_m;
        g.beta1 = -sg * (g.alpha1 - 2.0) * s;
        g.beta2 = -sg * (g.alpha2 + 2.0) * s;
        break;
    }
    }
    return g;
}

ReadingConsistency heun_reading_consistency(HeunReading reading, const Epsilon& e, int draws, std::uint64_t seed,
                                            double tol) {
    ReadingConsistency out{reading, {}, true};
    std::mt19937_64 rng(seed);
    for (auto c : all_heun_cases) {
        bool ok = true;
        for (int i = 0; i < draws; ++i) {
            const GeneralParams g = heun_case_sample(c, e, rng, true);
            if (!heun_displayed_triple(g, e, designated_point(c), reading).vanishes(tol)) ok = false;
        }
        out.case_ok[static_cast<int>(c)] = ok;
        out.all_ok = out.all_ok && ok;
    }
    return out;
}

} // namespace heunstokes
