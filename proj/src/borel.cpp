#include "heunstokes/borel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heunstokes/errors.hpp"
#include "heunstokes/quadrature.hpp"
#include "heunstokes/specfun.hpp"
#include "heunstokes/stokes.hpp"

namespace heunstokes {

namespace {

/// (e^z - 1)/z, series near 0.
Complex exprel(Complex z) {
    if (std::abs(z) < 0.5) {
        Complex term{1.0, 0.0};
        Complex sum{1.0, 0.0};
        for (int k = 1; k < 40; ++k) {
            term *= z / static_cast<double>(k + 1);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

double arg_of(Complex z) {
    const double a = std::arg(z);
    return a <= -pi ? a + 2.0 * pi : a;
}

double angle_distance(double a, double b) {
    double d = std::fmod(a - b, 2.0 * pi);
    if (d > pi) d -= 2.0 * pi;
    if (d < -pi) d += 2.0 * pi;
    return std::abs(d);
}

/// Panel breakpoints for a ray [0, T] with base width h, graded towards near points.
std::vector<double> ray_breaks(double T, double h, double theta, const std::vector<Complex>& near) {
    std::vector<double> br;
    for (double r = 0.0; r < T; r += h) br.push_back(r);
    br.push_back(T);
    const Complex rot = std::exp(Complex(0.0, -theta));
    for (const Complex& q : near) {
        const Complex local = q * rot;
        const double rstar = local.real();
        const double dist = std::abs(local.imag());
        if (rstar <= 0.0 || rstar >= T) continue;
        br.push_back(rstar);
        for (double w = std::max(dist, 1e-300); w < 4.0 * h; w *= 2.0) {
            if (rstar - w > 0.0) br.push_back(rstar - w);
            if (rstar + w < T) br.push_back(rstar + w);
        }
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end(), [](double a, double b) { return std::abs(a - b) < 1e-15 * (1.0 + std::abs(a)); }),
             br.end());
    return br;
}

/// R_k = sum_{j>=0} s_{k+j}/s_k, s_n = (-1)^{n+1} w^n / (n! (n+1)!), for k = 1..K.
std::vector<Complex> tail_ratios(Complex w, int K) {
    std::vector<Complex> R(static_cast<std::size_t>(K) + 2, Complex{1.0, 0.0});
    Complex next{1.0, 0.0};
    for (int k = K + 60; k >= 1; --k) {
        const Complex r = -w / (static_cast<double>(k + 1) * static_cast<double>(k + 2));
        next = 1.0 + r * next;
        if (k <= K) R[static_cast<std::size_t>(k)] = next;
    }
    return R;
}

bool use_zero_S_branch(const Params& p, const SumOptions& opt) {
    if (opt.zero_S_tol < 0.0 || p.gamma1 == p.gamma2) return false;
    return std::abs(bessel_sum_S(p)) < opt.zero_S_tol;
}

double relative(Complex a, Complex b) {
    return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

} // namespace

Complex kernel_u(const Params& p, Complex zeta) { return specfun::phi1(p.dgamma() * zeta); }

Complex kernel_v(const Params& p, Complex pp) { return specfun::phi1(-p.dbeta() * pp); }

double laplace_decay_rate(LaplaceForm form, double theta, Complex x) {
    const Complex e = std::exp(Complex(0.0, theta));
    return form == LaplaceForm::Origin ? (e / x).real() : (x * e).real();
}

OneSum laplace_ray(const std::function<Complex(Complex)>& f, LaplaceForm form, const Ray& ray, Complex x,
                   double growth_rate, double tol) {
    if (x == Complex{0.0, 0.0}) throw DomainError("laplace_ray: x = 0");
    const double kappa = laplace_decay_rate(form, ray.theta, x);
    if (!(kappa > growth_rate))
        throw DomainError("laplace_ray: x outside the convergence domain of direction theta (decay " +
                          std::to_string(kappa) + " <= growth " + std::to_string(growth_rate) + ")");
    const double eff = kappa - growth_rate;
    const Complex dir = std::exp(Complex(0.0, ray.theta));
    const Complex rate = form == LaplaceForm::Origin ? dir / x : x * dir;
    const Complex jac = form == LaplaceForm::Origin ? dir / x : dir;
    auto integrand = [&](double r) { return f(r * dir) * std::exp(-r * rate) * jac; };

    double T = ray.truncation;
    if (T <= 0.0) {
        T = (-std::log(std::max(tol, 1e-300)) + 6.0) / eff;
        // extend while the integrand at T is not negligible
        for (int i = 0; i < 12 && std::abs(integrand(T)) * T > 0.1 * tol; ++i) T *= 1.5;
    }
    const double h = 2.0 / kappa;
    const auto breaks = ray_breaks(T, std::min(h, T), ray.theta, ray.near_points);
    const auto r = quad::integrate_panels(integrand, breaks, tol);
    return OneSum{x, r.value, ray.theta, r.error};
}

bool on_direction(double theta, Complex target, double angle_tol) {
    if (target == Complex{0.0, 0.0}) return false;
    return angle_distance(theta, arg_of(target)) < angle_tol;
}

Complex psi_convergent_series(const Params& p, Complex x, int max_terms) {
    const Complex dg = p.dgamma();
    const auto R = tail_ratios(dg * p.dbeta(), max_terms);
    Complex sum{0.0, 0.0};
    Complex pw{1.0, 0.0}; // (dg x)^k / (k+1)!
    for (int k = 1; k <= max_terms; ++k) {
        pw *= dg * x / static_cast<double>(k + 1);
        const Complex term = pw * R[static_cast<std::size_t>(k)];
        sum += term;
        if (static_cast<double>(k) > std::abs(dg * x) && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

Complex phi_convergent_series(const Params& p, Complex x, int max_terms) {
    const Complex db = p.dbeta();
    const auto R = tail_ratios(p.dgamma() * db, max_terms);
    Complex sum{0.0, 0.0};
    Complex pw{1.0, 0.0}; // (-db/x)^k / (k+1)!
    for (int k = 1; k <= max_terms; ++k) {
        pw *= -db / (x * static_cast<double>(k + 1));
        const Complex term = pw * R[static_cast<std::size_t>(k)];
        sum += term;
        if (static_cast<double>(k) > std::abs(db / x) && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

OneSum psi_sum(const Params& p, double theta, Complex x, const SumOptions& opt) {
    require_nonresonant(p);
    const Complex db = p.dbeta();
    if (on_direction(theta, -db)) throw SingularDirection("psi_sum: theta is the singular direction arg(beta1 - beta2)");
    const double g = std::abs(p.dgamma());
    if (!(laplace_decay_rate(LaplaceForm::Origin, theta, x) > g))
        throw DomainError("psi_sum: need Re(e^{i theta}/x) > |gamma2 - gamma1|");
    if (use_zero_S_branch(p, opt)) return OneSum{x, psi_convergent_series(p, x), theta, 0.0};

    Ray ray{theta, 0.0, {-db}};
    if (opt.form == PsiForm::CancellationFree) {
        auto f = [&](Complex z) { return z * kernel_u(p, z) / (z + db); };
        return laplace_ray(f, LaplaceForm::Origin, ray, x, g, opt.tol);
    }
    auto f = [&](Complex z) { return kernel_u(p, z) / (z + db); };
    OneSum s = laplace_ray(f, LaplaceForm::Origin, ray, x, g, opt.tol);
    s.value = -db * s.value + exprel(p.dgamma() * x);
    s.quadrature_error_estimate *= std::abs(db);
    return s;
}

OneSum phi_sum(const Params& p, double theta, Complex x, const SumOptions& opt) {
    require_nonresonant(p);
    const Complex db = p.dbeta();
    const Complex dg = p.dgamma();
    if (dg == Complex{0.0, 0.0}) {
        if (x == Complex{0.0, 0.0}) throw DomainError("phi_sum: x = 0");
        return OneSum{x, exprel(-db / x), theta, 0.0};
    }
    if (on_direction(theta, dg)) throw SingularDirection("phi_sum: theta is the singular direction arg(gamma2 - gamma1)");
    const double g = std::abs(db);
    if (!(laplace_decay_rate(LaplaceForm::Infinity, theta, x) > g))
        throw DomainError("phi_sum: need Re(x e^{i theta}) > |beta2 - beta1|");
    if (use_zero_S_branch(p, opt)) return OneSum{x, phi_convergent_series(p, x), theta, 0.0};

    Ray ray{theta, 0.0, {dg}};
    if (opt.form == PsiForm::CancellationFree) {
        auto f = [&](Complex q) { return q * kernel_v(p, q) / (dg - q); };
        OneSum s = laplace_ray(f, LaplaceForm::Infinity, ray, x, g, opt.tol);
        s.value *= -x;
        s.quadrature_error_estimate *= std::abs(x);
        return s;
    }
    auto f = [&](Complex q) { return kernel_v(p, q) / (1.0 - q / dg); };
    OneSum s = laplace_ray(f, LaplaceForm::Infinity, ray, x, g, opt.tol);
    s.value = -x * s.value + exprel(-db / x);
    s.quadrature_error_estimate *= std::abs(x);
    return s;
}

Complex actual_fundamental_entry(const Params& p, EntrySide side, double theta, Complex x, const SumOptions& opt) {
    require_nonresonant(p);
    const Complex db = p.dbeta();
    const Complex dg = p.dgamma();
    if (side == EntrySide::Origin) {
        if (dg == Complex{0.0, 0.0}) return x * x / db;
        const Complex psi = psi_sum(p, theta, x, opt).value;
        return x * x / db * (std::exp(dg * x) - dg * x * psi);
    }
    if (dg == Complex{0.0, 0.0}) return (std::exp(-db / x) - 1.0) / db;
    return -phi_sum(p, theta, x, opt).value / x;
}

Complex initial_phi1(const Params& p, Complex x) { return std::exp(p.gamma1 * x - p.beta1 / x); }

Complex initial_phi2(const Params& p, Complex x) { return std::exp(p.gamma2 * x - p.beta2 / x) / (x * x); }

Complex actual_phi12(const Params& p, EntrySide side, double theta, Complex x, const SumOptions& opt) {
    const Complex e = actual_fundamental_entry(p, side, theta, x, opt);
    if (side == EntrySide::Origin) return std::exp(p.gamma1 * x - p.beta2 / x) / (x * x) * e;
    return std::exp(p.gamma2 * x - p.beta1 / x) * e;
}

namespace {

struct JumpGeometry {
    LaplaceForm form;
    Complex pole;          ///< Borel-plane pole on the singular direction
    double growth;
    std::function<Complex(Complex)> g; ///< integrand without the Laplace weight
    Complex weight_rate;   ///< weight is exp(-rate * zeta)
    Complex outer;         ///< factor turning the plain integral difference into the Phi_12 jump
};

/// int_0^{inf e^{i theta}} g(zeta) exp(-rate zeta) dzeta
Complex plain_ray(const JumpGeometry& j, double theta, Complex x, double tol) {
    const Ray ray{theta, 0.0, {j.pole}};
    const OneSum s = laplace_ray(j.g, j.form, ray, x, j.growth, tol);
    // origin form integrates against d(zeta/x); undo the 1/x
    return j.form == LaplaceForm::Origin ? s.value * x : s.value;
}

Complex ray_difference(const JumpGeometry& j, double theta, double eps, Complex x, double tol) {
    return j.outer * (plain_ray(j, theta - eps, x, tol) - plain_ray(j, theta + eps, x, tol));
}

Complex sector_contour(const JumpGeometry& j, double theta, double eps, double tol) {
    const double rp = std::abs(j.pole);
    const double r0 = 0.5 * rp;
    const double r1 = 2.0 * rp;
    auto h = [&](Complex z) { return j.g(z) * std::exp(-j.weight_rate * z); };
    const Complex em = std::exp(Complex(0.0, theta - eps));
    const Complex ep = std::exp(Complex(0.0, theta + eps));
    quad::CompensatedSum sum;
    sum.add(quad::integrate_segment(h, r0 * em, r1 * em, tol).value);
    sum.add(quad::integrate_arc(h, 0.0, r1, theta - eps, theta + eps, tol).value);
    sum.add(quad::integrate_segment(h, r1 * ep, r0 * ep, tol).value);
    sum.add(quad::integrate_arc(h, 0.0, r0, theta + eps, theta - eps, tol).value);
    return j.outer * sum.value();
}

JumpReport run_jump(const JumpGeometry& j, double theta, Complex x, Complex residue, double eps_angle, double tol,
                    double phi1_abs) {
    JumpReport rep;
    rep.theta = theta;
    rep.eps_angle = eps_angle;
    rep.residue = residue;
    rep.phi1_abs = phi1_abs;
    rep.quadrature = ray_difference(j, theta, eps_angle, x, tol);
    rep.half_angle = ray_difference(j, theta, 0.5 * eps_angle, x, tol);
    rep.sector = sector_contour(j, theta, eps_angle, tol);
    const double tiny = std::numeric_limits<double>::min();
    if (std::abs(residue) > 0.0) {
        rep.rel_err = relative(rep.quadrature, residue);
        rep.sector_rel_err = relative(rep.sector, residue);
    } else {
        rep.rel_err = std::abs(rep.quadrature) / std::max(phi1_abs, tiny);
        rep.sector_rel_err = std::abs(rep.sector) / std::max(phi1_abs, tiny);
    }
    rep.sensitivity = std::abs(rep.half_angle - rep.quadrature) / std::max(std::abs(rep.quadrature), tiny);
    return rep;
}

} // namespace

JumpReport stokes_jump_origin(const Params& p, Complex x, double eps_angle, double tol) {
    require_nonresonant(p);
    const Complex db = p.dbeta();
    const Complex dg = p.dgamma();
    const double theta = arg_of(-db);
    const Complex phi1 = initial_phi1(p, x);
    if (dg == Complex{0.0, 0.0}) {
        JumpReport rep;
        rep.theta = theta;
        rep.eps_angle = eps_angle;
        rep.phi1_abs = std::abs(phi1);
        return rep;
    }
    JumpGeometry j{LaplaceForm::Origin,
                   -db,
                   std::abs(dg),
                   [p, db](Complex z) { return kernel_u(p, z) / (z + db); },
                   1.0 / x,
                   dg * std::exp(p.gamma1 * x - p.beta2 / x)};
    const Complex residue = two_pi_i * dg * kernel_u(p, -db) * phi1;
    return run_jump(j, theta, x, residue, eps_angle, tol, std::abs(phi1));
}

JumpReport stokes_jump_infinity(const Params& p, Complex x, double eps_angle, double tol) {
    require_nonresonant(p);
    const Complex db = p.dbeta();
    const Complex dg = p.dgamma();
    if (dg == Complex{0.0, 0.0})
        throw DegenerateParameters("stokes_jump_infinity: gamma1 == gamma2, no singular direction");
    const double theta = arg_of(dg);
    const Complex phi1 = initial_phi1(p, x);
    JumpGeometry j{LaplaceForm::Infinity,
                   dg,
                   std::abs(db),
                   [p, dg](Complex q) { return kernel_v(p, q) / (1.0 - q / dg); },
                   x,
                   std::exp(p.gamma2 * x - p.beta1 / x)};
    const Complex residue = two_pi_i * dg * bessel_sum_S(p) * phi1;
    return run_jump(j, theta, x, residue, eps_angle, tol, std::abs(phi1));
}

OneSum euler_series_sum(Complex delta, Complex a, double theta, Complex x, double tol) {
    if (delta == Complex{0.0, 0.0}) throw DegenerateParameters("euler_series_sum: delta = 0");
    if (on_direction(theta, -delta)) throw SingularDirection("euler_series_sum: theta is the direction arg(-delta)");
    auto f = [&](Complex xi) { return std::exp(-a * std::log(1.0 + xi / delta)); };
    const Ray ray{theta, 0.0, {-delta}};
    return laplace_ray(f, LaplaceForm::Origin, ray, x, 0.0, tol);
}

namespace {

GevreyFit fit_samples(std::vector<GevreySample> samples, bool inverse_powers) {
    GevreyFit fit;
    // least squares y = c0 + c1 N
    double sn = 0, sy = 0, snn = 0, sny = 0;
    int cnt = 0;
    std::vector<double> ys(samples.size(), 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.remainder > 0.0)) continue;
        const double ax = std::abs(s.x);
        const double lx = inverse_powers ? -std::log(ax) : std::log(ax);
        ys[i] = std::log(s.remainder) - std::lgamma(s.N + 1.0) - s.N * lx;
        sn += s.N;
        sy += ys[i];
        snn += static_cast<double>(s.N) * s.N;
        sny += s.N * ys[i];
        ++cnt;
    }
    if (cnt < 2) throw ConvergenceFailure("gevrey fit: not enough non-zero remainders");
    const double slope = (cnt * sny - sn * sy) / (cnt * snn - sn * sn);
    fit.A = std::exp(slope);
    double logC = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (samples[i].remainder > 0.0) logC = std::max(logC, ys[i] - samples[i].N * slope);
    fit.C = std::exp(logC);
    fit.bound_holds = true;
    for (auto& s : samples) {
        const double ax = std::abs(s.x);
        const double lx = inverse_powers ? -std::log(ax) : std::log(ax);
        s.bound = std::exp(logC + s.N * slope + std::lgamma(s.N + 1.0) + s.N * lx);
        if (s.remainder > s.bound * (1.0 + 1e-12)) fit.bound_holds = false;
    }
    fit.samples = std::move(samples);
    return fit;
}

} // namespace

GevreyFit gevrey_fit_psi(const Params& p, double theta, const std::vector<Complex>& xs, int N_max,
                         const SumOptions& opt) {
    const auto b = psi_coefficients(p, N_max);
    std::vector<GevreySample> samples;
    for (const Complex& x : xs) {
        const Complex psi = psi_sum(p, theta, x, opt).value;
        Complex partial{0.0, 0.0};
        Complex pw{1.0, 0.0};
        for (int N = 1; N <= N_max; ++N) {
            samples.push_back(GevreySample{x, N, std::abs(psi - partial), 0.0});
            pw *= x;
            partial += b.at(N) * pw;
        }
    }
    return fit_samples(std::move(samples), false);
}

GevreyFit gevrey_fit_phi(const Params& p, double theta, const std::vector<Complex>& xs, int N_max,
                         const SumOptions& opt) {
    const auto c = phi_coefficients(p, N_max);
    std::vector<GevreySample> samples;
    for (const Complex& x : xs) {
        const Complex phi = phi_sum(p, theta, x, opt).value;
        Complex partial{0.0, 0.0};
        Complex pw{1.0, 0.0};
        for (int N = 1; N <= N_max; ++N) {
            samples.push_back(GevreySample{x, N, std::abs(phi - partial), 0.0});
            pw /= x;
            partial += c.at(N) * pw;
        }
    }
    return fit_samples(std::move(samples), true);
}

Complex KernelTestFunction::operator()(Complex pp) const {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * specfun::phi1(w[i] * pp);
    return s;
}

Complex KernelTestFunction::derivative(Complex pp) const {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * w[i] * specfun::phi1_derivative(w[i] * pp);
    return s;
}

double LaplaceIdentityReport::max() const {
    return std::max(std::max(times_minus_p, shift), std::max(convolution, derivative));
}

LaplaceIdentityReport laplace_identities(const KernelTestFunction& f, double theta, Complex x, Complex c, double tol) {
    const double kappa = laplace_decay_rate(LaplaceForm::Infinity, theta, x);
    if (!(kappa > 0.0)) throw DomainError("laplace_identities: need Re(x e^{i theta}) > 0");
    const Ray ray{theta, 0.0, {}};
    auto L = [&](const std::function<Complex(Complex)>& g, Complex at) {
        return laplace_ray(g, LaplaceForm::Infinity, ray, at, 0.0, tol).value;
    };
    auto phi = [&](Complex q) { return f(q); };
    const Complex Lphi = L(phi, x);

    LaplaceIdentityReport rep;
    {
        const Complex lhs = L([&](Complex q) { return -q * f(q); }, x);
        const double r = 0.3 * kappa / std::max(1.0, std::abs(std::exp(Complex(0.0, theta))));
        const Complex rhs = quad::cauchy_derivative([&](Complex z) { return L(phi, z); }, x, r, 32);
        rep.times_minus_p = relative(lhs, rhs);
    }
    {
        const Complex lhs = L([&](Complex q) { return std::exp(-c * q) * f(q); }, x);
        const Complex rhs = L(phi, x + c);
        rep.shift = relative(lhs, rhs);
    }
    {
        auto conv = [&](Complex q) { return quad::integrate_segment(phi, 0.0, q, 1e-15).value; };
        const Complex lhs = L(conv, x);
        rep.convolution = relative(lhs, Lphi / x);
    }
    {
        const Complex lhs = L([&](Complex q) { return f.derivative(q); }, x);
        rep.derivative = relative(lhs, x * Lphi - f(0.0));
    }
    return rep;
}

} // namespace heunstokes
