#include "heunstokes/stokes.hpp"

#include <cmath>

#include "heunstokes/errors.hpp"
#include "heunstokes/specfun.hpp"

namespace heunstokes {

namespace {

double mod_2pi(double a) {
    double r = std::fmod(a, 2.0 * pi);
    if (r < 0.0) r += 2.0 * pi;
    return r;
}

double principal_arg(Complex z) {
    double a = std::arg(z);
    if (a <= -pi) a += 2.0 * pi;
    return a;
}

} // namespace

Matrix2C StokesMatrix::matrix() const {
    Matrix2C m;
    m << 1.0, mu, 0.0, 1.0;
    return m;
}

std::string_view to_string(SeriesKind k) {
    switch (k) {
    case SeriesKind::PsiHat: return "psi_hat";
    case SeriesKind::PhiHat: return "phi_hat";
    case SeriesKind::AK: return "a_k";
    case SeriesKind::CK: return "c_k";
    }
    return "?";
}

Complex bessel_sum_S(const Params& p, double tol) {
    return -specfun::phi1(-p.dgamma() * p.dbeta(), tol);
}

std::vector<Complex> partial_sums(const Params& p, int K) {
    if (K < 0) throw std::invalid_argument("partial_sums: K must be non-negative");
    const Complex w = p.dgamma() * p.dbeta();
    // terms t_n = -(-w)^n / (n! (n+1)!) until they are negligible beyond index K
    std::vector<Complex> terms{Complex{-1.0, 0.0}};
    double largest = 1.0;
    for (int n = 1;; ++n) {
        const Complex t = terms.back() * (-w / (static_cast<double>(n) * static_cast<double>(n + 1)));
        terms.push_back(t);
        largest = std::max(largest, std::abs(t));
        if (n > K && static_cast<double>(n) > std::abs(w) && std::abs(t) < 1e-20 * largest) break;
        if (n > 100000) throw ConvergenceFailure("partial_sums: no convergence");
    }
    // tails T_k = sum_{n >= k} t_n, accumulated from the small end
    std::vector<Complex> tails(terms.size() + 1, Complex{0.0, 0.0});
    for (std::size_t n = terms.size(); n-- > 0;) tails[n] = tails[n + 1] + terms[n];
    Complex S = tails[0];
    // a sum below the rounding level of its largest term is an exact zero of S
    if (std::abs(S) <= 1e-14 * largest) S = 0.0;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) out.push_back(S - tails[static_cast<std::size_t>(k) + 1]);
    return out;
}

SeriesCoefficients psi_coefficients(const Params& p, int K) {
    require_nonresonant(p);
    SeriesCoefficients out{SeriesKind::PsiHat, 1, {}, p};
    const auto S = partial_sums(p, std::max(K - 1, 0));
    const Complex db = p.dbeta();
    Complex scale{1.0, 0.0}; // (-1)^k k! / db^k
    for (int k = 1; k <= K; ++k) {
        scale *= -static_cast<double>(k) / db;
        out.values.push_back(scale * S[static_cast<std::size_t>(k - 1)]);
    }
    return out;
}

SeriesCoefficients phi_coefficients(const Params& p, int K) {
    if (p.gamma1 == p.gamma2)
        throw DegenerateParameters("phi_coefficients: gamma1 == gamma2, use the closed P-form instead");
    SeriesCoefficients out{SeriesKind::PhiHat, 1, {}, p};
    const auto S = partial_sums(p, std::max(K - 1, 0));
    const Complex dg = p.dgamma();
    Complex scale{1.0, 0.0};
    for (int k = 1; k <= K; ++k) {
        scale *= static_cast<double>(k) / dg;
        out.values.push_back(scale * S[static_cast<std::size_t>(k - 1)]);
    }
    return out;
}

SeriesCoefficients a_k_recursion(const Params& p, int K) {
    require_nonresonant(p);
    const Complex db = p.dbeta();
    const Complex dg = p.dgamma();
    SeriesCoefficients out{SeriesKind::AK, 0, {}, p};
    out.values.push_back(1.0 / db);
    out.values.push_back(0.0);
    for (int k = 2; k <= K + 1; ++k) {
        const Complex prev = out.values[static_cast<std::size_t>(k - 1)];
        const Complex prev2 = out.values[static_cast<std::size_t>(k - 2)];
        out.values.push_back(-(static_cast<double>(k - 1) * prev + dg * prev2) / db);
    }
    return out;
}

SeriesCoefficients c_k_series(const Params& p, int K) {
    const auto a = a_k_recursion(p, K);
    const Complex dg = p.dgamma();
    SeriesCoefficients out{SeriesKind::CK, 1, {}, p};
    for (int k = 1; k <= K; ++k) {
        Complex c{0.0, 0.0};
        Complex bs{1.0, 0.0}; // d_gamma^s / s!
        for (int s = 0; s <= k - 1; ++s) {
            if (s > 0) bs *= dg / static_cast<double>(s);
            c += bs * a.at(k + 1 - s);
        }
        out.values.push_back(c);
    }
    return out;
}

StokesMatrix stokes_origin(const Params& p, double tol) {
    require_nonresonant(p);
    StokesMatrix st;
    st.theta = principal_arg(p.beta1 - p.beta2);
    st.theta_mod_2pi = mod_2pi(st.theta);
    st.mu = -two_pi_i * p.dgamma() * bessel_sum_S(p, tol);
    return st;
}

StokesMatrix stokes_infinity(const Params& p, double tol) {
    require_nonresonant(p);
    if (p.gamma1 == p.gamma2)
        throw DegenerateParameters("stokes_infinity: gamma1 == gamma2, singular direction undefined");
    StokesMatrix st;
    st.theta = principal_arg(p.gamma2 - p.gamma1);
    st.theta_mod_2pi = mod_2pi(st.theta);
    st.mu = two_pi_i * p.dgamma() * bessel_sum_S(p, tol);
    return st;
}

std::vector<double> psi_radius_estimates(const Params& p, int K) {
    const auto b = psi_coefficients(p, K);
    std::vector<double> out;
    for (int k = 1; k < K; ++k) out.push_back(std::abs(b.at(k)) / std::abs(b.at(k + 1)));
    return out;
}

Params bessel_zero_params(Complex beta1, Complex gamma1) {
    const double z1 = specfun::first_bessel_j1_zero();
    return Params{beta1, beta1 + 1.0, gamma1, gamma1 + 0.25 * z1 * z1};
}

} // namespace heunstokes
