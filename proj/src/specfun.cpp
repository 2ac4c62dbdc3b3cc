#include "heunstokes/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "heunstokes/errors.hpp"

namespace heunstokes::specfun {

namespace {

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// B_{2k} / (2k (2k-1)) for k = 1..10
constexpr std::array<double, 10> stirling_coeffs = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

const double half_log_two_pi = 0.5 * std::log(2.0 * pi);

// Stirling series with upward recurrence, valid for Re z >= 0.5.
Complex log_gamma_right(Complex z) {
    Complex shift_log{0.0, 0.0};
    while (std::abs(z) < 16.0 || z.real() < 8.0) {
        shift_log += std::log(z);
        z += 1.0;
    }
    const Complex zinv = 1.0 / z;
    const Complex zinv2 = zinv * zinv;
    Complex series{0.0, 0.0};
    Complex power = zinv;
    for (double c : stirling_coeffs) {
        series += c * power;
        power *= zinv2;
    }
    return (z - 0.5) * std::log(z) - z + half_log_two_pi + series - shift_log;
}

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    const Complex w = pi * z;
    if (std::abs(w.imag()) < 20.0) return std::log(std::sin(w));
    if (w.imag() > 0.0) {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i)
        return -I * w + std::log((std::exp(2.0 * I * w) - 1.0) / (2.0 * I));
    }
    // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
    return I * w + std::log((1.0 - std::exp(-2.0 * I * w)) / (2.0 * I));
}

} // namespace

Complex LogValue::value() const {
    if (zero) return {0.0, 0.0};
    return std::exp(log);
}

LogValue LogValue::operator*(const LogValue& other) const {
    if (zero || other.zero) return LogValue{{0.0, 0.0}, true};
    return LogValue{log + other.log, false};
}

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return log_gamma_right(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex gamma(Complex z) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at non-positive integer");
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0) return std::tgamma(z.real());
    return std::exp(log_gamma(z));
}

Complex rising_factorial(Complex a, int n) {
    if (n < 0) throw std::invalid_argument("rising_factorial: n must be non-negative");
    Complex r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= a + static_cast<double>(i);
    return r;
}

namespace {

// log of (w)^(k) for k >= 0, zero flag if a factor vanishes.
LogValue log_rising(Complex w, long long k) {
    LogValue out;
    const bool real_positive = w.imag() == 0.0 && w.real() > 0.0;
    if (real_positive && k > 16) {
        out.log = std::lgamma(w.real() + static_cast<double>(k)) - std::lgamma(w.real());
        return out;
    }
    for (long long i = 0; i < k; ++i) {
        const Complex f = w + static_cast<double>(i);
        if (f == Complex{0.0, 0.0}) return LogValue{{0.0, 0.0}, true};
        out.log += std::log(f);
    }
    return out;
}

} // namespace

LogValue log_gamma_ratio(Complex z, Complex a, Complex b) {
    const Complex top = z + a;
    const Complex bot = z + b;
    const Complex diff = a - b;
    const bool integer_shift = diff.imag() == 0.0 && diff.real() == std::round(diff.real());
    if (integer_shift) {
        const auto k = static_cast<long long>(std::llround(diff.real()));
        if (k >= 0) return log_rising(bot, k);           // Gamma(bot+k)/Gamma(bot)
        LogValue den = log_rising(top, -k);              // Gamma(top+|k|)/Gamma(top)
        if (den.zero) throw PoleError("gamma_ratio: numerator at a pole of Gamma");
        return LogValue{-den.log, false};
    }
    if (is_nonpositive_integer(bot)) return LogValue{{0.0, 0.0}, true};
    if (is_nonpositive_integer(top)) throw PoleError("gamma_ratio: numerator at a pole of Gamma");
    return LogValue{log_gamma(top) - log_gamma(bot), false};
}

Complex gamma_ratio(Complex z, Complex a, Complex b) {
    const Complex diff = a - b;
    const bool integer_shift = diff.imag() == 0.0 && diff.real() == std::round(diff.real());
    if (integer_shift && std::abs(diff.real()) <= 64.0) {
        const auto k = static_cast<int>(std::lround(diff.real()));
        if (k >= 0) return rising_factorial(z + b, k);
        const Complex den = rising_factorial(z + a, -k);
        if (den == Complex{0.0, 0.0}) throw PoleError("gamma_ratio: numerator at a pole of Gamma");
        return 1.0 / den;
    }
    return log_gamma_ratio(z, a, b).value();
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n < 60) {
        double r = 1.0;
        const int kk = std::min(k, n - k);
        for (int i = 1; i <= kk; ++i) r = r * static_cast<double>(n - kk + i) / static_cast<double>(i);
        return std::round(r);
    }
    return std::exp(log_binomial(n, k));
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

BesselKernelValue bessel_kernel_phi1(Complex w, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("bessel_kernel_phi1: tol must be positive");
    const double aw = std::abs(w);
    Complex term{1.0, 0.0};
    Complex sum{1.0, 0.0};
    double max_term = 1.0;
    int k = 0;
    for (;;) {
        term *= w / (static_cast<double>(k + 1) * static_cast<double>(k + 2));
        ++k;
        sum += term;
        const double at = std::abs(term);
        if (!std::isfinite(at) || !std::isfinite(std::abs(sum)))
            throw ConvergenceFailure("bessel_kernel_phi1: terms overflow; |w| too large");
        max_term = std::max(max_term, at);
        // tail after term k is bounded by |t_{k+1}| / (1 - r) once r < 1
        const double r = aw / (static_cast<double>(k + 2) * static_cast<double>(k + 3));
        if (r < 0.5) {
            const double tail = at * r / (1.0 - r);
            if (tail <= tol * std::abs(sum) || tail <= 1e-17 * max_term) break;
        }
        if (k > 100000) throw ConvergenceFailure("bessel_kernel_phi1: no convergence");
    }
    return {sum, k + 1};
}

Complex phi1(Complex w, double tol) { return bessel_kernel_phi1(w, tol).value; }

Complex phi1_derivative(Complex w, double tol) {
    // sum_{k>=0} w^k / (k! (k+2)!)
    const double aw = std::abs(w);
    Complex term{0.5, 0.0};
    Complex sum = term;
    double max_term = 0.5;
    for (int k = 0; k < 100000; ++k) {
        term *= w / (static_cast<double>(k + 1) * static_cast<double>(k + 3));
        sum += term;
        const double at = std::abs(term);
        if (!std::isfinite(at)) throw ConvergenceFailure("phi1_derivative: terms overflow");
        max_term = std::max(max_term, at);
        const double r = aw / (static_cast<double>(k + 2) * static_cast<double>(k + 4));
        if (r < 0.5) {
            const double tail = at * r / (1.0 - r);
            if (tail <= tol * std::abs(sum) || tail <= 1e-17 * max_term) return sum;
        }
    }
    throw ConvergenceFailure("phi1_derivative: no convergence");
}

double bessel_j1_zero_in(double lo, double hi) {
    auto f = [](double z) { return phi1(Complex{-0.25 * z * z, 0.0}).real(); };
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo * fhi > 0.0) throw DomainError("bessel_j1_zero_in: no sign change in bracket");
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double first_bessel_j1_zero() { return bessel_j1_zero_in(3.0, 4.5); }

bool is_integer(Complex r, double int_tol) {
    const double scale = std::max(1.0, std::abs(r));
    return std::abs(r.real() - std::round(r.real())) < int_tol * scale && std::abs(r.imag()) < int_tol * scale;
}

long long nearest_integer(Complex r) { return std::llround(r.real()); }

} // namespace heunstokes::specfun
