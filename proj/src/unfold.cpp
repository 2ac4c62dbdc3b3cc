#include "heunstokes/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heunstokes/errors.hpp"
#include "heunstokes/specfun.hpp"
#include "heunstokes/stokes.hpp"

namespace heunstokes {

namespace {

/// Signed real number stored as log|v|; sign 0 means exact zero.
struct SignedLog {
    double log = 0.0;
    int sign = 0;

    static SignedLog of(double v) {
        if (v == 0.0) return {};
        return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
    }
    SignedLog operator*(const SignedLog& o) const {
        if (sign == 0 || o.sign == 0) return {};
        return {log + o.log, sign * o.sign};
    }
    SignedLog pow(long long k) const {
        if (k == 0) return {0.0, 1};
        if (sign == 0) return {};
        return {log * static_cast<double>(k), (sign < 0 && (k % 2 != 0)) ? -1 : 1};
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log); }
};

SignedLog sign_power(long long k) { return {0.0, (k % 2 == 0) ? 1 : -1}; }

/// Gamma(top)/Gamma(bot) for integers with top >= 1: zero when bot <= 0 (reciprocal Gamma vanishes).
SignedLog gamma_ratio_int(long long top, long long bot) {
    if (top < 1) throw std::logic_error("gamma_ratio_int: top must be positive");
    if (bot <= 0) return {};
    return {std::lgamma(static_cast<double>(top)) - std::lgamma(static_cast<double>(bot)), 1};
}

SignedLog inv_factorial(long long k) { return {-std::lgamma(static_cast<double>(k) + 1.0), 1}; }

SignedLog binom(long long n, long long k) { return {specfun::log_binomial(static_cast<int>(n), static_cast<int>(k)), 1}; }

/// Compensated sum of signed logs, returned as a signed log.
SignedLog sum_logs(const std::vector<SignedLog>& terms) {
    double lmax = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0) lmax = std::max(lmax, t.log);
    if (!std::isfinite(lmax)) return {};
    double s = 0.0, c = 0.0;
    for (const auto& t : terms) {
        if (t.sign == 0) continue;
        const double v = t.sign * std::exp(t.log - lmax);
        const double u = s + v;
        c += (std::abs(s) >= std::abs(v)) ? (s - u) + v : (v - u) + s;
        s = u;
    }
    const double total = s + c;
    if (total == 0.0) return {};
    return {lmax + std::log(std::abs(total)), total > 0.0 ? 1 : -1};
}

struct TypeShape {
    bool plus_type;     ///< Q = (1+e)/(1-e), D = 1+e (A1, A4); otherwise Q = (1-e)/(1+e), D = 1-e
    int kappa_j;        ///< overall sign of d_j
    int sigma_j;        ///< 0: none, 1: (-1)^{k-1}, 2: (-1)^k
    int kappa_jj;       ///< overall sign of d_jj
    int sigma_jj;       ///< 0: none, 1: (-1)^k, 2: (-1)^{k+1}
    Point finite_point;
    Point infinity_point;
};

TypeShape shape(ResonanceKind kind) {
    switch (kind) {
    case ResonanceKind::A1: return {true, -1, 0, 1, 0, Point::L, Point::LL};
    case ResonanceKind::A2: return {false, 1, 1, -1, 1, Point::L, Point::RR};
    case ResonanceKind::A3: return {false, 1, 2, -1, 2, Point::R, Point::LL};
    case ResonanceKind::A4: return {true, 1, 0, -1, 0, Point::R, Point::RR};
    case ResonanceKind::None: break;
    }
    throw ResonanceMismatch("no double resonance type given");
}

SignedLog sigma(int code, long long k) {
    switch (code) {
    case 1: return sign_power(k - 1);
    case 2: return sign_power(k);
    default: return {0.0, 1};
    }
}

SignedLog sigma_jj(int code, long long k) {
    switch (code) {
    case 1: return sign_power(k);
    case 2: return sign_power(k + 1);
    default: return {0.0, 1};
    }
}

/// Finite-point closed form (k = 1..n).
double d_finite(const TypeShape& t, long long n, long long m, double s) {
    const double e = s * s;
    const SignedLog Q = SignedLog::of(t.plus_type ? (1.0 + e) / (1.0 - e) : (1.0 - e) / (1.0 + e));
    const SignedLog sD = SignedLog::of(s / (t.plus_type ? 1.0 + e : 1.0 - e));
    const SignedLog two_s = SignedLog::of(2.0 * s);
    std::vector<SignedLog> outer;
    outer.reserve(static_cast<std::size_t>(n));
    std::vector<SignedLog> inner;
    for (long long k = 1; k <= n; ++k) {
        inner.clear();
        for (long long j = 0; j <= k; ++j)
            inner.push_back(binom(k, j) * gamma_ratio_int(m + j, m + 1 - k + j) * Q.pow(j));
        const SignedLog A = sum_logs(inner);
        outer.push_back(sigma(t.sigma_j, k) * two_s.pow(k - 1) * inv_factorial(k - 1) * inv_factorial(k) *
                        sD.pow(k) * gamma_ratio_int(n, n - k + 1) * A);
    }
    const SignedLog total = SignedLog::of(static_cast<double>(t.kappa_j * m)) * Q.pow(m) * sum_logs(outer);
    return total.value();
}

/// Infinity-point closed form (k = 0..m-1).
double d_infinity(const TypeShape& t, long long n, long long m, double s, DjjReading reading) {
    const double e = s * s;
    const SignedLog Q = SignedLog::of(t.plus_type ? (1.0 + e) / (1.0 - e) : (1.0 - e) / (1.0 + e));
    const SignedLog sD = SignedLog::of(s / (t.plus_type ? 1.0 + e : 1.0 - e));
    const SignedLog two_s = SignedLog::of(2.0 * s);
    std::vector<SignedLog> outer;
    std::vector<SignedLog> inner;
    for (long long k = 0; k < m; ++k) {
        inner.clear();
        for (long long j = 0; j <= k; ++j)
            inner.push_back(binom(k, j) * gamma_ratio_int(n + 1 + j, n - k + j) * Q.pow(j));
        const SignedLog A = sum_logs(inner);
        outer.push_back(sigma_jj(t.sigma_jj, k) * two_s.pow(k + 1) * inv_factorial(k) * inv_factorial(k + 1) *
                        sD.pow(k) * gamma_ratio_int(m + 1, m - k) * A);
    }
    SignedLog pref = SignedLog::of(static_cast<double>(t.kappa_jj) / (1.0 - e * e)) * Q.pow(n);
    if (reading == DjjReading::Displayed) pref = pref * SignedLog::of(1.0 / static_cast<double>(n));
    return (pref * sum_logs(outer)).value();
}

void check_resonance(const Params& p, const Epsilon& e, const Resonance& r) {
    if (r.kind == ResonanceKind::None) throw ResonanceMismatch("d_coefficient: no resonance type given");
    const auto actual = resonance_data(p, e, r.kind);
    if (!actual || actual->n_beta != r.n_beta || actual->n_gamma != r.n_gamma)
        throw ResonanceMismatch("d_coefficient: parameters do not realise resonance " + std::string(to_string(r.kind)) +
                                " with n_beta = " + std::to_string(r.n_beta) +
                                ", n_gamma = " + std::to_string(r.n_gamma));
}

} // namespace

Complex d_coefficient(const Params& p, const Epsilon& e, const Resonance& r, Point point, DjjReading reading) {
    check_resonance(p, e, r);
    if (p.gamma1 == p.gamma2 || r.n_gamma == 0) return 0.0;
    const TypeShape t = shape(r.kind);
    const double s = e.sqrt_eps.real();
    if (point == t.finite_point) return d_finite(t, r.n_beta, r.n_gamma, s);
    if (point == t.infinity_point) return d_infinity(t, r.n_beta, r.n_gamma, s, reading);
    return 0.0;
}

Matrix2C MonodromyDecomp::unipotent() const { return Matrix2C::Identity() + two_pi_i * T; }

double MonodromyDecomp::commutator_norm() const {
    const Matrix2C U = unipotent();
    return (exponent_part * U - U * exponent_part).norm();
}

MonodromyDecomp monodromy_decomp(const Params& p, const Epsilon& e, const Resonance& r, Point point) {
    MonodromyDecomp out;
    out.point = point;
    out.d = d_coefficient(p, e, r, point);
    const auto rho = char_exponents(p, e).at(point);
    out.exponent_part = Matrix2C::Zero();
    out.exponent_part(0, 0) = std::exp(two_pi_i * rho[0]);
    out.exponent_part(1, 1) = std::exp(two_pi_i * (rho[1] - 1.0));
    out.T = Matrix2C::Zero();
    out.T(0, 1) = out.d;
    out.M = out.exponent_part * out.unipotent();
    return out;
}

Matrix2C unfolded_stokes(const Params& p, const Epsilon& e, const Resonance& r, Point point) {
    Matrix2C m = Matrix2C::Identity();
    m(0, 1) = two_pi_i * d_coefficient(p, e, r, point);
    return m;
}

int limit_case(const Params& p) {
    const Complex db = p.dbeta();
    const Complex dg = p.dgamma();
    auto real_nonzero = [](Complex z) { return z.real() != 0.0 && std::abs(z.imag()) <= 1e-14 * std::abs(z.real()); };
    if (!real_nonzero(db) || !real_nonzero(dg))
        throw ResonanceMismatch("limit_case: beta2 - beta1 and gamma2 - gamma1 must be real and non-zero");
    const bool bp = db.real() > 0.0;
    const bool gp = dg.real() > 0.0;
    if (bp && gp) return 1;
    if (!bp && !gp) return 2;
    if (bp) return 3;
    return 4;
}

ResonanceKind limit_case_kind(int which) {
    switch (which) {
    case 1: return ResonanceKind::A2;
    case 2: return ResonanceKind::A3;
    case 3: return ResonanceKind::A1;
    case 4: return ResonanceKind::A4;
    default: throw std::invalid_argument("limit case must be 1, 2, 3 or 4");
    }
}

std::vector<ConvergenceRow> ConvergenceTable::rows_for(Point pt) const {
    std::vector<ConvergenceRow> out;
    for (const auto& r : rows)
        if (r.point == pt) out.push_back(r);
    return out;
}

bool ConvergenceTable::converged(double threshold) const {
    for (const auto& [pt, mu] : {std::pair{finite_point, mu_origin}, std::pair{infinity_point, mu_infinity}}) {
        const auto rs = rows_for(pt);
        if (rs.empty()) return false;
        if (!std::isfinite(rs.back().abs_err)) return false;
        if (!(rs.back().abs_err < threshold * std::abs(mu))) return false;
        if (rs.size() > 1 && !(rs.back().abs_err < rs.front().abs_err)) return false;
    }
    return true;
}

ConvergenceTable limit_experiment(const Params& p, int which, const std::vector<int>& n_list) {
    if (n_list.empty()) throw std::invalid_argument("limit_experiment: n_list is empty");
    const int actual = limit_case(p);
    if (actual != which)
        throw ResonanceMismatch("limit_experiment: sign pattern of (beta2 - beta1, gamma2 - gamma1) is case " +
                                std::to_string(actual) + ", not case " + std::to_string(which));
    ConvergenceTable tab;
    tab.which_case = which;
    tab.kind = limit_case_kind(which);
    const TypeShape t = shape(tab.kind);
    tab.finite_point = t.finite_point;
    tab.infinity_point = t.infinity_point;
    tab.mu_origin = stokes_origin(p).mu;
    tab.mu_infinity = stokes_infinity(p).mu;

    const double adb = std::abs(p.dbeta());
    const double adg = std::abs(p.dgamma());
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("limit_experiment: n must be positive");
        const double ratio = n * adg / adb;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            throw ResonanceMismatch("limit_experiment: n |gamma2 - gamma1| / |beta2 - beta1| is not an integer for n = " +
                                    std::to_string(n));
        const double s = adb / (2.0 * n);
        const Epsilon e = Epsilon::make(s);
        const auto r = resonance_data(p, e, tab.kind);
        if (!r) throw ResonanceMismatch("limit_experiment: no resonance at n = " + std::to_string(n));
        for (const auto& [pt, mu] : {std::pair{t.finite_point, tab.mu_origin}, std::pair{t.infinity_point, tab.mu_infinity}}) {
            const Complex d = d_coefficient(p, e, *r, pt);
            tab.rows.push_back(ConvergenceRow{n, s, pt, d, std::abs(two_pi_i * d - mu)});
        }
    }
    return tab;
}

LimitPair limit_closed_form(const Params& p) {
    require_nonresonant(p);
    const Complex dg = p.dgamma();
    if (dg == Complex{0.0, 0.0}) return {0.0, 0.0};
    const Complex dj = -dg * bessel_sum_S(p);
    return {dj, -dj};
}

} // namespace heunstokes
