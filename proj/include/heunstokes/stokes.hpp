#pragma once

/**
 * @file stokes.hpp
 * @brief Formal data and exact Stokes matrices of the initial equation.
 *
 * With d_beta = beta2 - beta1 and d_gamma = gamma2 - gamma1:
 *   S = sum_{n>=0} (-1)^{n+1} (d_gamma d_beta)^n / (n! (n+1)!) = -phi1(-d_gamma d_beta)
 *   psi_hat(x) = sum_{k>=1} (-1)^k k! S_{k-1} / d_beta^k x^k
 *   phi_hat(x) = sum_{k>=1} k! S_{k-1} / d_gamma^k x^{-k}
 *   St_0   = [[1, -2 pi i d_gamma S], [0, 1]],  theta = arg(beta1 - beta2)
 *   St_inf = [[1, +2 pi i d_gamma S], [0, 1]],  theta = arg(gamma2 - gamma1)
 */

#include <string_view>
#include <vector>

#include "heunstokes/model.hpp"
#include "heunstokes/types.hpp"

namespace heunstokes {

struct StokesMatrix {
    double theta = 0.0;       ///< singular direction, in (-pi, pi]
    double theta_mod_2pi = 0.0; ///< same direction in [0, 2 pi)
    Complex mu;               ///< off-diagonal multiplier

    Matrix2C matrix() const;
    bool trivial(double tol) const { return std::abs(mu) < tol; }
};

enum class SeriesKind { PsiHat, PhiHat, AK, CK };

std::string_view to_string(SeriesKind k);

struct SeriesCoefficients {
    SeriesKind kind = SeriesKind::PsiHat;
    int first_index = 0;          ///< index of values[0]
    std::vector<Complex> values;
    Params params{};

    Complex at(int k) const { return values.at(static_cast<std::size_t>(k - first_index)); }
    int last_index() const { return first_index + static_cast<int>(values.size()) - 1; }
};

/// S summed through the phi1 kernel (truncation error <= tol relative to |S| scale).
Complex bessel_sum_S(const Params& p, double tol = 1e-16);

/**
 * @brief S_0 .. S_K, the running partial sums of S.
 *
 * Evaluated as S - (tail after k). A total below 1e-14 times the largest term
 * is taken as S = 0 exactly, so the tails of the convergent case survive.
 */
std::vector<Complex> partial_sums(const Params& p, int K);

/// b_1 .. b_K of psi_hat. Requires beta1 != beta2.
SeriesCoefficients psi_coefficients(const Params& p, int K);

/// Coefficients 1..K of phi_hat (in powers of 1/x). Requires gamma1 != gamma2.
SeriesCoefficients phi_coefficients(const Params& p, int K);

/**
 * @brief a_0 .. a_{K+1} from (k-1) a_{k-1} + d_beta a_k + d_gamma a_{k-2} = 0,
 * a_0 = 1/d_beta, a_1 = 0.
 */
SeriesCoefficients a_k_recursion(const Params& p, int K);

/// c_1 .. c_K with c_k = sum_{s=0}^{k-1} d_gamma^s / s! a_{k+1-s}.
SeriesCoefficients c_k_series(const Params& p, int K);

StokesMatrix stokes_origin(const Params& p, double tol = 1e-16);

/// Throws DegenerateParameters when gamma1 == gamma2 (direction undefined).
StokesMatrix stokes_infinity(const Params& p, double tol = 1e-16);

/// Ratio-test radius estimates |b_k / b_{k+1}|, k = 1..K-1.
std::vector<double> psi_radius_estimates(const Params& p, int K);

/// Parameters with d_beta = 1 and d_gamma d_beta = (z1/2)^2, z1 the first zero of J1.
Params bessel_zero_params(Complex beta1 = 0.0, Complex gamma1 = 0.0);

} // namespace heunstokes
