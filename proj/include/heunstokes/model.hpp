#pragma once

/**
 * @file model.hpp
 * @brief The initial equation and its Heun-type unfolding as data.
 *
 * The initial equation is L2(L1 y) = 0 with first order operators
 *   L_j = d/dx - (alpha_j / x + beta_j / x^2 + gamma_j),   alpha1 = 0, alpha2 = -2,
 * irregular (Poincare rank 1) at x = 0 and x = infinity. The unfolding replaces
 * the coefficients by partial fractions with simple poles at
 *   xR = sqrt(eps), xL = -sqrt(eps), xRR = 1/sqrt(eps), xLL = -1/sqrt(eps).
 */

#include <array>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "heunstokes/types.hpp"

namespace heunstokes {

/// The four parameters of the initial equation (alpha1 = 0, alpha2 = -2 implied).
struct Params {
    Complex beta1;
    Complex beta2;
    Complex gamma1;
    Complex gamma2;

    Complex dbeta() const { return beta2 - beta1; }    ///< beta2 - beta1
    Complex dgamma() const { return gamma2 - gamma1; } ///< gamma2 - gamma1
};

/// Six free parameters; used by the four-point classifier and the symmetries.
struct GeneralParams {
    Complex alpha1;
    Complex alpha2;
    Complex beta1;
    Complex beta2;
    Complex gamma1;
    Complex gamma2;

    static GeneralParams from(const Params& p) { return {0.0, -2.0, p.beta1, p.beta2, p.gamma1, p.gamma2}; }
};

/// Throws DegenerateParameters when beta1 == beta2.
void require_nonresonant(const Params& p);

/// The unfolding parameter, stored through sqrt(eps).
struct Epsilon {
    Complex sqrt_eps;

    Complex eps() const { return sqrt_eps * sqrt_eps; }

    /**
     * @brief Validated constructor.
     *
     * Rejects sqrt_eps = 0 and eps^2 = 1, and renormalises sign so that
     * arg(sqrt_eps) lies in (-pi/2, pi/2]. The Heun-type equation is invariant
     * under sqrt_eps -> -sqrt_eps, the renormalisation only relabels R<->L, RR<->LL.
     */
    static Epsilon make(Complex sqrt_eps);

    /// Same validation, no sign renormalisation.
    static Epsilon raw(Complex sqrt_eps);

    /// True when eps is real positive (sqrt_eps real, non-zero), within tol relative.
    bool real_positive(double tol = 1e-12) const;
};

enum class Point { R, L, RR, LL };

inline constexpr std::array<Point, 4> all_points = {Point::R, Point::L, Point::RR, Point::LL};

std::string_view to_string(Point pt);
Point parse_point(std::string_view s);

struct SingularPoints {
    Complex xR, xL, xRR, xLL;

    Complex at(Point pt) const;
};

SingularPoints singular_points(const Epsilon& e);

/// b1, b0 of y'' + b1 y' + b0 y = 0.
struct ScalarCoefficients {
    Complex b1;
    Complex b0;
};

/// Coefficients of the initial equation (alpha1 = 0, alpha2 = -2) at x != 0.
ScalarCoefficients initial_coefficients(const Params& p, Complex x);

/// Same for arbitrary alpha1, alpha2.
ScalarCoefficients initial_coefficients(const GeneralParams& p, Complex x);

/// a1, a2 of L_{j,eps} = d/dx - a_j together with a1' and the scalar pair.
struct PerturbedCoefficients {
    Complex a1;
    Complex a2;
    Complex a1_prime;
    Complex b1; ///< -(a1 + a2)
    Complex b0; ///< a1 a2 - a1'
};

PerturbedCoefficients perturbed_coefficients(const Params& p, const Epsilon& e, Complex x);
PerturbedCoefficients perturbed_coefficients(const GeneralParams& p, const Epsilon& e, Complex x);

/// Characteristic exponents rho[point][i], i = 0, 1 for rho_1, rho_2.
struct CharExponents {
    std::array<std::array<Complex, 2>, 4> rho;

    const std::array<Complex, 2>& at(Point pt) const { return rho[static_cast<int>(pt)]; }
    /// Delta_12 = rho_1 - rho_2 at the point.
    Complex difference(Point pt) const { return at(pt)[0] - at(pt)[1]; }
    Complex sum() const;
};

CharExponents char_exponents(const Params& p, const Epsilon& e);

enum class ResonanceKind { None, A1, A2, A3, A4 };

std::string_view to_string(ResonanceKind k);
ResonanceKind parse_resonance(std::string_view s);

struct Resonance {
    ResonanceKind kind = ResonanceKind::None;
    long long n_beta = 0;
    long long n_gamma = 0;
};

/**
 * @brief Integer data (n_beta, n_gamma) of a given type, if its two defining
 * ratios are integers (n_beta >= 1, n_gamma >= 0) and eps is real positive.
 */
std::optional<Resonance> resonance_data(const Params& p, const Epsilon& e, ResonanceKind kind,
                                        double int_tol = 1e-9);

/**
 * @brief First satisfied double-resonance type in the order A1, A2, A3, A4.
 *
 * When gamma1 == gamma2 both A1 and A2 (or A3 and A4) hold with n_gamma = 0;
 * the first is returned. Use resonance_data to test a specific type.
 */
Resonance classify_resonance(const Params& p, const Epsilon& e, double int_tol = 1e-9);

/// The two logarithmic points of a type: A1 {L,LL}, A2 {L,RR}, A3 {R,LL}, A4 {R,RR}.
std::array<Point, 2> logarithmic_points(ResonanceKind kind);

enum class Symmetry {
    Identity,
    Inversion,         ///< x -> 1/x,  beta_j -> -gamma_j, gamma_j -> -beta_j
    NegInversion,      ///< x -> -1/x, beta_j -> gamma_j,  gamma_j -> beta_j
    Reflection,        ///< x -> -x,   beta_j -> -beta_j,  gamma_j -> -gamma_j
};

/// Parameter map of a symmetry of the initial equation (alphas transform too).
GeneralParams symmetry_transport(const GeneralParams& p, Symmetry which);

/// Point map x -> x' of the symmetry.
Complex symmetry_point(Symmetry which, Complex x);

/// x^alpha1 exp(gamma1 x - beta1 / x): the solution of L1 y = 0 (principal branch).
Complex first_solution(const GeneralParams& p, Complex x);

// ---------------------------------------------------------------------------
// Four-singular-point classifier

enum class HeunCase { I, II, III, IV, V, VI, VII, VIII };

inline constexpr std::array<HeunCase, 8> all_heun_cases = {
    HeunCase::I, HeunCase::II, HeunCase::III, HeunCase::IV,
    HeunCase::V, HeunCase::VI, HeunCase::VII, HeunCase::VIII};

std::string_view to_string(HeunCase c);

/// Reading of the "beta1 beta2 - eps alpha1 alpha1" term in q41/q51.
enum class HeunReading { AlphaOneAlphaTwo, AlphaOneSquared };

/// Index 0..4 of the candidate ordinary point t in {0, sqrt(eps), -sqrt(eps), 1/sqrt(eps), -1/sqrt(eps)}.
int designated_point(HeunCase c);

/// Coefficients at t_j of the equation after x = 1/t, with Sum |term| as scale.
struct HeunTriple {
    Complex p, q0, q1;
    double scale_p = 0.0, scale_q0 = 0.0, scale_q1 = 0.0;

    /// All three vanish below tol times their own term scale.
    bool vanishes(double tol) const;
    /// max_i |c_i| / max(scale_i, tiny)
    double relative_size() const;
};

struct HeunPointReport {
    int index = 0;       ///< 1..5
    Complex t;           ///< position in the t = 1/x plane
    bool at_infinity = false;
    Complex x;           ///< 1/t (unset when at_infinity)
    HeunTriple displayed; ///< formulas as printed (reading-dependent)
    HeunTriple exact;     ///< true Laurent coefficients
    bool ordinary = false;           ///< exact triple vanishes
    bool displayed_vanishes = false; ///< printed triple vanishes
};

struct HeunReport {
    std::array<HeunPointReport, 5> points;
    int singular_count = 5;
    std::vector<HeunCase> matched;           ///< cases whose (exact) parameter conditions hold
    std::vector<HeunCase> matched_displayed; ///< cases whose printed conditions hold
    /// every matched case has its designated point ordinary and vice versa
    bool consistent = true;
};

/// Triple at point index 0..4 (exact form).
HeunTriple heun_exact_triple(const GeneralParams& p, const Epsilon& e, int index);

/// Triple at point index 0..4 as printed, with the given reading.
HeunTriple heun_displayed_triple(const GeneralParams& p, const Epsilon& e, int index, HeunReading reading);

/// Whether the closed-form conditions of a case hold; exact (corrected) or printed form.
bool heun_case_condition(HeunCase c, const GeneralParams& p, const Epsilon& e, bool printed = false,
                         double tol = 1e-10);

HeunReport heun_case_check(const GeneralParams& p, const Epsilon& e,
                           HeunReading reading = HeunReading::AlphaOneAlphaTwo, double tol = 1e-12);

/**
 * @brief Random parameters satisfying a case's conditions.
 *
 * Free parameters are drawn uniformly from the unit square of C; constrained
 * ones are solved for. With printed = true, cases III/IV use the printed
 * (uncorrected) relation between alphas and betas.
 */
GeneralParams heun_case_sample(HeunCase c, const Epsilon& e, std::mt19937_64& rng, bool printed = false);

/// Random parameters in the unit square of C (generic: five singular points).
GeneralParams heun_generic_sample(std::mt19937_64& rng);

/// For each case: do `draws` samples make the printed triple vanish under `reading`?
struct ReadingConsistency {
    HeunReading reading;
    std::array<bool, 8> case_ok{};
    bool all_ok = false;
};

ReadingConsistency heun_reading_consistency(HeunReading reading, const Epsilon& e, int draws,
                                            std::uint64_t seed, double tol = 1e-12);

} // namespace heunstokes
