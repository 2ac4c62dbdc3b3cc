#pragma once

/**
 * @file borel.hpp
 * @brief Borel-Laplace summation of the formal series of the initial equation.
 *
 * Kernels (d_beta = beta2 - beta1, d_gamma = gamma2 - gamma1):
 *   u(zeta) = phi1(d_gamma zeta),   v(p) = phi1(-d_beta p).
 * Ray Laplace transforms of order 1:
 *   origin form   L_theta f(x) = int_0^{inf e^{i theta}} f(zeta) e^{-zeta/x} d(zeta/x)
 *   infinity form L_theta f(x) = int_0^{inf e^{i theta}} f(p) e^{-x p} dp
 * 1-sums:
 *   psi_theta(x) = -(d_beta/x) int u(zeta) e^{-zeta/x} / (zeta + d_beta) dzeta + (e^{d_gamma x} - 1)/(d_gamma x)
 *   phi_theta(x) = -x int v(p) e^{-x p} / (1 - p/d_gamma) dp - x (e^{-d_beta/x} - 1)/d_beta
 * Both are evaluated through rearrangements free of the O(1) cancellation:
 *   psi_theta = L_theta[zeta u / (zeta + d_beta)],   phi_theta = -x int v(p) p e^{-x p} / (d_gamma - p) dp.
 */

#include <functional>
#include <vector>

#include "heunstokes/model.hpp"
#include "heunstokes/types.hpp"

namespace heunstokes {

enum class LaplaceForm { Origin, Infinity };

struct Ray {
    double theta = 0.0;
    double truncation = 0.0; ///< upper limit of |zeta|; 0 selects it from the tolerance
    /// Points of the Borel plane the ray may pass close to; panels are refined around them.
    std::vector<Complex> near_points;
};

struct OneSum {
    Complex at;
    Complex value;
    double theta = 0.0;
    double quadrature_error_estimate = 0.0;
};

Complex kernel_u(const Params& p, Complex zeta);
Complex kernel_v(const Params& p, Complex pp);

/// Decay rate of the Laplace weight along the ray: Re(e^{i theta}/x) or Re(x e^{i theta}).
double laplace_decay_rate(LaplaceForm form, double theta, Complex x);

/**
 * @brief Ray Laplace transform of f.
 *
 * growth_rate bounds the exponential type of f on the ray; requires the decay
 * rate to exceed it (DomainError otherwise). Absolute error target tol.
 */
OneSum laplace_ray(const std::function<Complex(Complex)>& f, LaplaceForm form, const Ray& ray, Complex x,
                   double growth_rate, double tol = 1e-14);

enum class PsiForm { CancellationFree, Displayed };

struct SumOptions {
    double tol = 1e-14;
    PsiForm form = PsiForm::CancellationFree;
    /// |S| below this switches to the convergent series (S = 0 branch); negative disables.
    double zero_S_tol = 1e-14;
};

/// True when theta points along the singular direction arg(target) (within angle_tol).
bool on_direction(double theta, Complex target, double angle_tol = 1e-12);

OneSum psi_sum(const Params& p, double theta, Complex x, const SumOptions& opt = {});
OneSum phi_sum(const Params& p, double theta, Complex x, const SumOptions& opt = {});

/// Direct sum of the convergent psi_hat / phi_hat when S = 0 (max_terms terms, stops at 1e-17).
Complex psi_convergent_series(const Params& p, Complex x, int max_terms = 400);
Complex phi_convergent_series(const Params& p, Complex x, int max_terms = 400);

enum class EntrySide { Origin, Infinity };

/**
 * @brief 1,2-entry of the actual normalising matrix.
 *
 * Origin: H_theta,12(x) = x^2/d_beta + d_gamma x^2 int_0^{inf e^{i theta}} u e^{-zeta/x}/(zeta + d_beta) dzeta
 *                       = (x^2/d_beta)(e^{d_gamma x} - d_gamma x psi_theta(x)).
 * Infinity: P_theta,12(x) = (e^{-d_beta/x} - 1)/d_beta + int_0^{inf e^{i theta}} v e^{-x p}/(1 - p/d_gamma) dp
 *                         = -phi_theta(x)/x.
 * gamma1 == gamma2 uses x^2/d_beta and (e^{-d_beta/x} - 1)/d_beta.
 */
Complex actual_fundamental_entry(const Params& p, EntrySide side, double theta, Complex x, const SumOptions& opt = {});

/// Full Phi_12 of the actual fundamental matrix (exponential and power factors included).
Complex actual_phi12(const Params& p, EntrySide side, double theta, Complex x, const SumOptions& opt = {});

/// Phi_1 = e^{gamma1 x - beta1/x} and Phi_2 = x^{-2} e^{gamma2 x - beta2/x} of the initial equation.
Complex initial_phi1(const Params& p, Complex x);
Complex initial_phi2(const Params& p, Complex x);

struct JumpReport {
    double theta = 0.0;        ///< singular direction
    double eps_angle = 0.0;
    Complex quadrature;        ///< Phi_12(theta - eps) - Phi_12(theta + eps), direct subtraction
    Complex residue;           ///< 2 pi i d_gamma u(beta1 - beta2) Phi_1(x)
    double rel_err = 0.0;      ///< |quadrature - residue| / |residue|
    Complex sector;            ///< same jump from a closed contour around the pole
    double sector_rel_err = 0.0;
    Complex half_angle;        ///< quadrature jump with eps_angle / 2
    double sensitivity = 0.0;  ///< |half_angle - quadrature| / max(|quadrature|, tiny)
    double phi1_abs = 0.0;     ///< |Phi_1(x)|
};

/// Jump of Phi_12 across arg(beta1 - beta2) at the origin.
JumpReport stokes_jump_origin(const Params& p, Complex x, double eps_angle = 0.05, double tol = 1e-14);

/// Jump of Phi_12 across arg(gamma2 - gamma1) at infinity; residue 2 pi i d_gamma S Phi_1(x).
JumpReport stokes_jump_infinity(const Params& p, Complex x, double eps_angle = 0.05, double tol = 1e-14);

/// f_theta(x) = int_0^{inf e^{i theta}} (1 + xi/delta)^{-a} e^{-xi/x} d(xi/x).
OneSum euler_series_sum(Complex delta, Complex a, double theta, Complex x, double tol = 1e-14);

struct GevreySample {
    Complex x;
    int N = 0;
    double remainder = 0.0; ///< |psi_theta(x) - sum_{n<N} b_n x^n|
    double bound = 0.0;     ///< C A^N N! |x|^N
};

struct GevreyFit {
    double C = 0.0;
    double A = 0.0;
    std::vector<GevreySample> samples;
    bool bound_holds = false;
};

/// Least-squares fit of log(R_N/(N! |x|^N)) = log C + N log A over N = 1..N_max, C raised to the max.
GevreyFit gevrey_fit_psi(const Params& p, double theta, const std::vector<Complex>& xs, int N_max = 8,
                         const SumOptions& opt = {});

/// Same for phi_theta at large |x| (powers of 1/x).
GevreyFit gevrey_fit_phi(const Params& p, double theta, const std::vector<Complex>& xs, int N_max = 8,
                         const SumOptions& opt = {});

/// Test function for the Laplace identities: sum_i c_i phi1(w_i p).
struct KernelTestFunction {
    std::vector<Complex> c;
    std::vector<Complex> w;

    Complex operator()(Complex pp) const;
    Complex derivative(Complex pp) const;
};

struct LaplaceIdentityReport {
    double times_minus_p = 0.0; ///< L(-p phi) vs d/dx L phi
    double shift = 0.0;         ///< L(e^{-c p} phi)(x) vs L phi(x + c)
    double convolution = 0.0;   ///< L(1 * phi) vs L phi / x
    double derivative = 0.0;    ///< L(phi') vs x L phi - phi(0)
    double max() const;
};

/// Relative residuals of the four identities for the infinity form along theta at x.
LaplaceIdentityReport laplace_identities(const KernelTestFunction& f, double theta, Complex x, Complex c,
                                         double tol = 1e-13);

} // namespace heunstokes
