#include "heunstokes/model.hpp"

#include <cmath>

#include "heunstokes/errors.hpp"
#include "heunstokes/specfun.hpp"

namespace heunstokes {

void require_nonresonant(const Params& p) {
    if (p.beta1 == p.beta2) throw DegenerateParameters("beta1 == beta2: resonant irregular case is not supported");
}

namespace {

void validate_sqrt_eps(Complex s) {
    if (s == Complex{0.0, 0.0}) throw DomainError("sqrt_eps must be non-zero");
    const Complex e = s * s;
    if (std::abs(e * e - 1.0) < 1e-14) throw DomainError("eps^2 = 1 is not admissible");
}

} // namespace

Epsilon Epsilon::make(Complex sqrt_eps) {
    validate_sqrt_eps(sqrt_eps);
    const double a = std::arg(sqrt_eps);
    if (a <= -pi / 2 || a > pi / 2) sqrt_eps = -sqrt_eps;
    return Epsilon{sqrt_eps};
}

Epsilon Epsilon::raw(Complex sqrt_eps) {
    validate_sqrt_eps(sqrt_eps);
    return Epsilon{sqrt_eps};
}

bool Epsilon::real_positive(double tol) const {
    return std::abs(sqrt_eps.imag()) <= tol * std::abs(sqrt_eps);
}

std::string_view to_string(Point pt) {
    switch (pt) {
    case Point::R: return "R";
    case Point::L: return "L";
    case Point::RR: return "RR";
    case Point::LL: return "LL";
    }
    return "?";
}

Point parse_point(std::string_view s) {
    if (s == "R") return Point::R;
    if (s == "L") return Point::L;
    if (s == "RR") return Point::RR;
    if (s == "LL") return Point::LL;
    throw std::invalid_argument("unknown point: " + std::string(s));
}

Complex SingularPoints::at(Point pt) const {
    switch (pt) {
    case Point::R: return xR;
    case Point::L: return xL;
    case Point::RR: return xRR;
    case Point::LL: return xLL;
    }
    return {};
}

SingularPoints singular_points(const Epsilon& e) {
    const Complex s = e.sqrt_eps;
    return {s, -s, 1.0 / s, -1.0 / s};
}

ScalarCoefficients initial_coefficients(const GeneralParams& p, Complex x) {
    if (x == Complex{0.0, 0.0}) throw DomainError("initial_coefficients: x = 0 is the irregular point");
    const Complex x2 = x * x;
    const Complex x3 = x2 * x;
    const Complex x4 = x2 * x2;
    const Complex b1 = -(p.alpha1 + p.alpha2) / x - (p.beta1 + p.beta2) / x2 - (p.gamma1 + p.gamma2);
    const Complex b0 = (p.alpha1 * p.gamma2 + p.alpha2 * p.gamma1) / x
                     + (p.alpha1 + p.alpha1 * p.alpha2 + p.beta1 * p.gamma2 + p.beta2 * p.gamma1) / x2
                     + (2.0 * p.beta1 + p.alpha1 * p.beta2 + p.alpha2 * p.beta1) / x3
                     + p.beta1 * p.beta2 / x4 + p.gamma1 * p.gamma2;
    return {b1, b0};
}

ScalarCoefficients initial_coefficients(const Params& p, Complex x) {
    return initial_coefficients(GeneralParams::from(p), x);
}

PerturbedCoefficients perturbed_coefficients(const GeneralParams& p, const Epsilon& e, Complex x) {
    const Complex s = e.sqrt_eps;
    const Complex a = 1.0 / s;
    const Complex uR = x - s, uL = x + s, uRR = x - a, uLL = x + a;
    if (uR == 0.0 || uL == 0.0 || uRR == 0.0 || uLL == 0.0)
        throw DomainError("perturbed_coefficients: evaluation at a singular point");
    auto coeff = [&](Complex al, Complex be, Complex ga) {
        return al / 2.0 * (1.0 / uR + 1.0 / uL) + be / (2.0 * s) * (1.0 / uR - 1.0 / uL)
             + ga / (2.0 * s) * (-1.0 / uRR + 1.0 / uLL);
    };
    const Complex a1 = coeff(p.alpha1, p.beta1, p.gamma1);
    const Complex a2 = coeff(p.alpha2, p.beta2, p.gamma2);
    const Complex a1p = -p.alpha1 / 2.0 * (1.0 / (uR * uR) + 1.0 / (uL * uL))
                      - p.beta1 / (2.0 * s) * (1.0 / (uR * uR) - 1.0 / (uL * uL))
                      - p.gamma1 / (2.0 * s) * (-1.0 / (uRR * uRR) + 1.0 / (uLL * uLL));
    return {a1, a2, a1p, -(a1 + a2), a1 * a2 - a1p};
}

PerturbedCoefficients perturbed_coefficients(const Params& p, const Epsilon& e, Complex x) {
    return perturbed_coefficients(GeneralParams::from(p), e, x);
}

Complex CharExponents::sum() const {
    Complex s{0.0, 0.0};
    for (const auto& r : rho) s += r[0] + r[1];
    return s;
}

CharExponents char_exponents(const Params& p, const Epsilon& e) {
    const Complex h = 2.0 * e.sqrt_eps;
    CharExponents c;
    c.rho[static_cast<int>(Point::R)] = {p.beta1 / h, p.beta2 / h};
    c.rho[static_cast<int>(Point::L)] = {-p.beta1 / h, -p.beta2 / h};
    c.rho[static_cast<int>(Point::RR)] = {-p.gamma1 / h, 1.0 - p.gamma2 / h};
    c.rho[static_cast<int>(Point::LL)] = {p.gamma1 / h, 1.0 + p.gamma2 / h};
    return c;
}

std::string_view to_string(ResonanceKind k) {
    switch (k) {
    case ResonanceKind::None: return "none";
    case ResonanceKind::A1: return "A1";
    case ResonanceKind::A2: return "A2";
    case ResonanceKind::A3: return "A3";
    case ResonanceKind::A4: return "A4";
    }
    return "?";
}

ResonanceKind parse_resonance(std::string_view s) {
    if (s == "A1") return ResonanceKind::A1;
    if (s == "A2") return ResonanceKind::A2;
    if (s == "A3") return ResonanceKind::A3;
    if (s == "A4") return ResonanceKind::A4;
    if (s == "none") return ResonanceKind::None;
    throw std::invalid_argument("unknown resonance type: " + std::string(s));
}

std::optional<Resonance> resonance_data(const Params& p, const Epsilon& e, ResonanceKind kind, double int_tol) {
    if (kind == ResonanceKind::None || p.beta1 == p.beta2) return std::nullopt;
    if (!e.real_positive()) return std::nullopt;
    const Complex h = 2.0 * e.sqrt_eps;
    Complex nb, ng;
    switch (kind) {
    case ResonanceKind::A1: nb = p.dbeta() / h; ng = -p.dgamma() / h; break;
    case ResonanceKind::A2: nb = p.dbeta() / h; ng = p.dgamma() / h; break;
    case ResonanceKind::A3: nb = -p.dbeta() / h; ng = -p.dgamma() / h; break;
    case ResonanceKind::A4: nb = -p.dbeta() / h; ng = p.dgamma() / h; break;
    case ResonanceKind::None: return std::nullopt;
    }
    if (!specfun::is_integer(nb, int_tol) || !specfun::is_integer(ng, int_tol)) return std::nullopt;
    const long long n = specfun::nearest_integer(nb);
    const long long m = specfun::nearest_integer(ng);
    if (n < 1 || m < 0) return std::nullopt;
    return Resonance{kind, n, m};
}

Resonance classify_resonance(const Params& p, const Epsilon& e, double int_tol) {
    for (auto k : {ResonanceKind::A1, ResonanceKind::A2, ResonanceKind::A3, ResonanceKind::A4}) {
        if (auto r = resonance_data(p, e, k, int_tol)) return *r;
    }
    return Resonance{};
}

std::array<Point, 2> logarithmic_points(ResonanceKind kind) {
    switch (kind) {
    case ResonanceKind::A1: return {Point::L, Point::LL};
    case ResonanceKind::A2: return {Point::L, Point::RR};
    case ResonanceKind::A3: return {Point::R, Point::LL};
    case ResonanceKind::A4: return {Point::R, Point::RR};
    case ResonanceKind::None: break;
    }
    throw ResonanceMismatch("logarithmic_points: no resonance type given");
}

GeneralParams symmetry_transport(const GeneralParams& p, Symmetry which) {
    GeneralParams q = p;
    if (which == Symmetry::Identity) return q;
    if (which == Symmetry::Inversion || which == Symmetry::NegInversion) {
        q.alpha1 = -p.alpha1;
        q.alpha2 = -p.alpha2 - 2.0;
    }
    switch (which) {
    case Symmetry::Inversion:
        q.beta1 = -p.gamma1; q.beta2 = -p.gamma2;
        q.gamma1 = -p.beta1; q.gamma2 = -p.beta2;
        break;
    case Symmetry::NegInversion:
        q.beta1 = p.gamma1; q.beta2 = p.gamma2;
        q.gamma1 = p.beta1; q.gamma2 = p.beta2;
        break;
    case Symmetry::Reflection:
        q.beta1 = -p.beta1; q.beta2 = -p.beta2;
        q.gamma1 = -p.gamma1; q.gamma2 = -p.gamma2;
        break;
    case Symmetry::Identity: break;
    }
    return q;
}

Complex symmetry_point(Symmetry which, Complex x) {
    switch (which) {
    case Symmetry::Identity: return x;
    case Symmetry::Inversion: return 1.0 / x;
    case Symmetry::NegInversion: return -1.0 / x;
    case Symmetry::Reflection: return -x;
    }
    return x;
}

Complex first_solution(const GeneralParams& p, Complex x) {
    if (x == Complex{0.0, 0.0}) throw DomainError("first_solution: x = 0");
    return std::exp(p.alpha1 * std::log(x) + p.gamma1 * x - p.beta1 / x);
}

} // namespace heunstokes
