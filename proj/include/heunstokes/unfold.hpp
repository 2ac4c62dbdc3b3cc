#pragma once

/**
 * @file unfold.hpp
 * @brief Monodromy of the Heun-type unfolding at double resonance.
 *
 * At a double resonance (eps real positive, all four types A1..A4) the
 * quotient Phi_2/Phi_1 is rational and the monodromy around a singular point x_j
 * decomposes as M_j = diag(e^{2 pi i rho_1}, e^{2 pi i (rho_2 - 1)}) e^{2 pi i T_j},
 * T_j = [[0, d_j], [0, 0]] with d_j = res(Phi_2/Phi_1, x = x_j). The d_j have
 * closed forms as double sums of Gamma ratios; as eps -> 0 they tend to the
 * Stokes multipliers divided by 2 pi i.
 */

#include <string>
#include <vector>

#include "heunstokes/model.hpp"
#include "heunstokes/types.hpp"

namespace heunstokes {

/// Reading of the d_jj prefactor: as displayed (with 2 sqrt(eps)/(+-d_beta)) or without it.
enum class DjjReading { Displayed, WithoutPrefactor };

/**
 * @brief Closed-form d at a point for the resonance r.
 *
 * Throws ResonanceMismatch when (p, e) does not realise r (checked with
 * resonance_data, so gamma1 == gamma2 satisfies both types of a pair).
 * Returns exactly 0 when gamma1 == gamma2 or the point is not logarithmic for r.
 */
Complex d_coefficient(const Params& p, const Epsilon& e, const Resonance& r, Point point,
                      DjjReading reading = DjjReading::Displayed);

struct MonodromyDecomp {
    Point point = Point::R;
    Matrix2C exponent_part; ///< diag(e^{2 pi i rho_1}, e^{2 pi i (rho_2 - 1)})
    Complex d;
    Matrix2C T;             ///< [[0, d], [0, 0]]
    Matrix2C M;             ///< exponent_part * exp(2 pi i T)

    /// exp(2 pi i T) = I + 2 pi i T
    Matrix2C unipotent() const;
    /// || exponent_part exp(2 pi i T) - exp(2 pi i T) exponent_part ||
    double commutator_norm() const;
};

MonodromyDecomp monodromy_decomp(const Params& p, const Epsilon& e, const Resonance& r, Point point);

/// [[1, 2 pi i d], [0, 1]]
Matrix2C unfolded_stokes(const Params& p, const Epsilon& e, const Resonance& r, Point point);

/// Sign pattern of (d_beta, d_gamma) as the case 1..4 of the limit experiment:
/// 1 (+,+) -> A2, 2 (-,-) -> A3, 3 (+,-) -> A1, 4 (-,+) -> A4. Throws if either is not real non-zero.
int limit_case(const Params& p);

ResonanceKind limit_case_kind(int which);

struct ConvergenceRow {
    int n = 0;
    double sqrt_eps = 0.0;
    Point point = Point::R;
    Complex d;
    double abs_err = 0.0; ///< |2 pi i d - mu_target|
};

struct ConvergenceTable {
    int which_case = 0;
    ResonanceKind kind = ResonanceKind::None;
    Point finite_point = Point::R;
    Point infinity_point = Point::RR;
    Complex mu_origin;   ///< target for the finite point
    Complex mu_infinity; ///< target for the infinity point
    std::vector<ConvergenceRow> rows;

    /// Rows of one point in n order.
    std::vector<ConvergenceRow> rows_for(Point pt) const;
    /// Last error below threshold * |mu| and strictly below the first error, for both points.
    bool converged(double threshold) const;
};

/**
 * @brief d at both logarithmic points for sqrt(eps) = |d_beta|/(2n), n in n_list.
 *
 * Requires the sign pattern of `which` and n |d_gamma| / |d_beta| integral for every n
 * (ResonanceMismatch otherwise). Empty n_list throws std::invalid_argument.
 */
ConvergenceTable limit_experiment(const Params& p, int which, const std::vector<int>& n_list);

struct LimitPair {
    Complex d_j;  ///< -(gamma2 - gamma1) S
    Complex d_jj; ///< +(gamma2 - gamma1) S
};

LimitPair limit_closed_form(const Params& p);

} // namespace heunstokes
