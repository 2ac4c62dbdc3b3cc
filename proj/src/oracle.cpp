#include "heunstokes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "heunstokes/errors.hpp"
#include "heunstokes/quadrature.hpp"
#include "heunstokes/specfun.hpp"

namespace heunstokes {

namespace {

constexpr std::array<Point, 4> factor_order = {Point::R, Point::L, Point::RR, Point::LL};

/// Factor f_k(z) of the solution product: z - s, z + s, a - z, a + z.
Complex factor(const Epsilon& e, int k, Complex z) {
    const Complex s = e.sqrt_eps;
    const Complex a = 1.0 / s;
    switch (k) {
    case 0: return z - s;
    case 1: return z + s;
    case 2: return a - z;
    default: return a + z;
    }
}

int factor_index(Point pt) {
    switch (pt) {
    case Point::R: return 0;
    case Point::L: return 1;
    case Point::RR: return 2;
    case Point::LL: return 3;
    }
    return 0;
}

double distance_to_segment(Complex z, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

double clearance(const Epsilon& e) { return 1e-3 * min_singular_gap(e); }

/// Distance from a point to the nearest other singular point.
double gap_at(const Epsilon& e, Point pt) {
    const auto sp = singular_points(e);
    double g = std::numeric_limits<double>::infinity();
    for (Point q : all_points)
        if (q != pt) g = std::min(g, std::abs(sp.at(q) - sp.at(pt)));
    return g;
}

std::vector<Complex> diamond(Complex center, double h, Complex base) {
    const Complex top = center + Complex(0.0, h);
    return {base, top, center - h, center - Complex(0.0, h), center + h, top, base};
}

} // namespace

std::string_view to_string(Frame f) { return f == Frame::Origin ? "origin" : "infinity"; }

std::array<Complex, 4> solution_exponents(const Params& p, const Epsilon& e, int j) {
    if (j != 1 && j != 2) throw std::invalid_argument("solution_exponents: j must be 1 or 2");
    const GeneralParams g = GeneralParams::from(p);
    const Complex alpha = j == 1 ? g.alpha1 : g.alpha2;
    const Complex beta = j == 1 ? g.beta1 : g.beta2;
    const Complex gamma = j == 1 ? g.gamma1 : g.gamma2;
    const Complex h = 2.0 * e.sqrt_eps;
    return {alpha / 2.0 + beta / h, alpha / 2.0 - beta / h, -gamma / h, gamma / h};
}

std::array<Complex, 4> quotient_exponents(const Params& p, const Epsilon& e) {
    const auto c1 = solution_exponents(p, e, 1);
    const auto c2 = solution_exponents(p, e, 2);
    return {c2[0] - c1[0], c2[1] - c1[1], c2[2] - c1[2], c2[3] - c1[3]};
}

Complex phi_solution(const Params& p, const Epsilon& e, int j, Complex x) {
    const auto c = solution_exponents(p, e, j);
    Complex lg{0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        const Complex f = factor(e, k, x);
        if (f == Complex{0.0, 0.0}) throw PoleError("phi_solution: x is a singular point");
        lg += c[static_cast<std::size_t>(k)] * std::log(f);
    }
    return std::exp(lg);
}

Complex residue_contour(const Params& p, const Epsilon& e, Point point, double radius, int n_nodes) {
    if (n_nodes < 256) throw std::invalid_argument("residue_contour: at least 256 nodes required");
    const auto sp = singular_points(e);
    const Complex center = sp.at(point);
    const double gap = gap_at(e, point);
    if (radius <= 0.0) radius = 0.5 * gap;
    if (radius >= gap) throw DomainError("residue_contour: circle encloses another singular point");

    const auto q = quotient_exponents(p, e);
    const int kj = factor_index(point);
    const Complex qj = q[static_cast<std::size_t>(kj)];
    if (!specfun::is_integer(qj, 1e-9)) {
        const double mismatch = std::abs(std::exp(two_pi_i * qj) - 1.0);
        throw MultivaluedIntegrand("residue_contour: Phi2/Phi1 is not single valued around " +
                                   std::string(to_string(point)) + " (endpoint mismatch " +
                                   std::to_string(mismatch) + ")");
    }
    const long long nj = specfun::nearest_integer(qj);
    std::array<Complex, 4> anchor{};
    for (int k = 0; k < 4; ++k)
        if (k != kj) anchor[static_cast<std::size_t>(k)] = factor(e, k, center);
    auto integrand = [&](Complex z) {
        Complex lg{0.0, 0.0};
        for (int k = 0; k < 4; ++k) {
            if (k == kj) continue;
            const Complex a = anchor[static_cast<std::size_t>(k)];
            lg += q[static_cast<std::size_t>(k)] * (std::log(a) + std::log(factor(e, k, z) / a));
        }
        const Complex fj = factor(e, kj, z);
        return std::exp(lg) * std::pow(fj, static_cast<int>(nj));
    };
    return quad::trapezoid_circle(integrand, center, radius, n_nodes);
}

Point frame_base_point(const Params& p, const Epsilon& e, Frame frame) {
    const auto q = quotient_exponents(p, e);
    const std::array<Point, 2> cand =
        frame == Frame::Origin ? std::array<Point, 2>{Point::R, Point::L} : std::array<Point, 2>{Point::RR, Point::LL};
    for (Point pt : cand)
        if (q[static_cast<std::size_t>(factor_index(pt))].real() > -1.0) return pt;
    throw DomainError(std::string("frame_base_point: Phi2/Phi1 is not integrable at either point of the ") +
                      std::string(to_string(frame)) + " pair");
}

Complex phi12_quadrature(const Params& p, const Epsilon& e, Complex x, Frame frame, double tol) {
    const Point bp = frame_base_point(p, e, frame);
    const auto sp = singular_points(e);
    const Complex base = sp.at(bp);
    const int kb = factor_index(bp);
    const double clear = clearance(e);
    for (Point q : all_points) {
        if (q == bp) continue;
        if (distance_to_segment(sp.at(q), base, x) < clear)
            throw PathError("phi12_quadrature: segment from the base point passes through " +
                            std::string(to_string(q)));
    }
    if (std::abs(x - base) < clear) throw PathError("phi12_quadrature: x coincides with the base point");

    const auto q = quotient_exponents(p, e);
    const Complex qb = q[static_cast<std::size_t>(kb)];
    int m = 1;
    const bool smooth = specfun::is_integer(qb, 1e-12) && qb.real() > -0.5;
    if (!smooth) m = std::clamp(static_cast<int>(std::ceil(4.0 / (qb.real() + 1.0))), 1, 40);

    std::array<Complex, 4> logx{};
    for (int k = 0; k < 4; ++k) logx[static_cast<std::size_t>(k)] = std::log(factor(e, k, x));
    const Complex dx = x - base;
    auto integrand = [&](double tau) -> Complex {
        if (tau <= 0.0) return 0.0;
        const Complex z = base + dx * std::pow(tau, m);
        Complex lg{0.0, 0.0};
        for (int k = 0; k < 4; ++k) {
            if (k == kb) continue;
            const Complex fx = factor(e, k, x);
            lg += q[static_cast<std::size_t>(k)] * (logx[static_cast<std::size_t>(k)] + std::log(factor(e, k, z) / fx));
        }
        lg += qb * logx[static_cast<std::size_t>(kb)];
        lg += (qb * static_cast<double>(m) + static_cast<double>(m - 1)) * std::log(tau);
        return std::exp(lg) * static_cast<double>(m) * dx;
    };
    const auto r = quad::integrate(integrand, 0.0, 1.0, tol);
    return phi_solution(p, e, 1, x) * r.value;
}

double winding_number(const std::vector<Complex>& polygon, Complex z) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < polygon.size(); ++i)
        total += std::arg((polygon[i + 1] - z) / (polygon[i] - z));
    return total / (2.0 * pi);
}

double min_singular_gap(const Epsilon& e) {
    double g = std::numeric_limits<double>::infinity();
    for (Point pt : all_points) g = std::min(g, gap_at(e, pt));
    return g;
}

Loop make_loop(const Epsilon& e, std::vector<Complex> vertices) {
    if (vertices.size() < 2) throw PathError("make_loop: need at least two vertices");
    if (std::abs(vertices.front() - vertices.back()) > 1e-14 * (1.0 + std::abs(vertices.front())))
        throw PathError("make_loop: polygon is not closed");
    const auto sp = singular_points(e);
    const double clear = clearance(e);
    Loop loop;
    loop.base = vertices.front();
    for (Point pt : all_points) {
        const Complex z = sp.at(pt);
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            if (distance_to_segment(z, vertices[i], vertices[i + 1]) < clear)
                throw PathError("make_loop: path passes within clearance of " + std::string(to_string(pt)));
        const double w = winding_number(vertices, z);
        const long long wi = std::llround(w);
        if (std::abs(w - static_cast<double>(wi)) > 1e-9) throw PathError("make_loop: non-integer winding number");
        if (wi == 1)
            loop.enclosed.push_back(pt);
        else if (wi != 0)
            throw PathError("make_loop: winding number " + std::to_string(wi) + " around " +
                            std::string(to_string(pt)));
    }
    loop.vertices = std::move(vertices);
    return loop;
}

Complex default_loop_base(const Epsilon& e) { return Complex(0.0, 0.5 * std::abs(e.sqrt_eps)); }

Loop loop_around(const Epsilon& e, Point pt, std::optional<Complex> base) {
    const Complex b = base.value_or(default_loop_base(e));
    const Complex c = singular_points(e).at(pt);
    return make_loop(e, diamond(c, 0.5 * gap_at(e, pt), b));
}

Loop loop_around_pair(const Epsilon& e, Point a, Point b, std::optional<Complex> base) {
    const auto sp = singular_points(e);
    const Complex za = sp.at(a), zb = sp.at(b);
    double other = std::numeric_limits<double>::infinity();
    for (Point q : all_points) {
        if (q == a || q == b) continue;
        other = std::min({other, std::abs(sp.at(q) - za), std::abs(sp.at(q) - zb)});
    }
    const Complex c = 0.5 * (za + zb);
    const double h = 0.5 * std::abs(za - zb) + 0.5 * other;
    return make_loop(e, diamond(c, h, base.value_or(default_loop_base(e))));
}

Loop empty_loop(const Epsilon& e, std::optional<Complex> base) {
    const Complex b = base.value_or(default_loop_base(e));
    const double h = 0.25 * std::abs(e.sqrt_eps);
    return make_loop(e, {b, b + Complex(h, 0.0), b + Complex(0.0, h), b});
}

Loop compose(const Epsilon& e, const Loop& first, const Loop& second) {
    if (std::abs(first.base - second.base) > 1e-14 * (1.0 + std::abs(first.base)))
        throw PathError("compose: loops have different base points");
    std::vector<Complex> v = first.vertices;
    v.insert(v.end(), second.vertices.begin() + 1, second.vertices.end());
    return make_loop(e, std::move(v));
}

FundamentalFrame make_frame(const Params& p, const Epsilon& e, Complex base, Frame which) {
    FundamentalFrame f;
    f.base = base;
    f.which = which;
    f.Y0 << phi_solution(p, e, 1, base), phi12_quadrature(p, e, base, which), 0.0, phi_solution(p, e, 2, base);
    if (std::abs(f.Y0.determinant()) == 0.0) throw DomainError("make_frame: singular fundamental matrix");
    return f;
}

Matrix2C monodromy_ode(const Params& p, const Epsilon& e, const Loop& loop, const FundamentalFrame& frame, double tol) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<Complex, 4>; // Y00, Y01, Y10, Y11
    if (std::abs(frame.base - loop.base) > 1e-14 * (1.0 + std::abs(loop.base)))
        throw PathError("monodromy_ode: frame base differs from loop base");
    const auto sp = singular_points(e);
    const double clear = clearance(e);
    for (Point pt : all_points)
        for (std::size_t i = 0; i + 1 < loop.vertices.size(); ++i)
            if (distance_to_segment(sp.at(pt), loop.vertices[i], loop.vertices[i + 1]) < clear)
                throw PathError("monodromy_ode: loop passes within clearance of " + std::string(to_string(pt)));

    State y{frame.Y0(0, 0), frame.Y0(0, 1), frame.Y0(1, 0), frame.Y0(1, 1)};
    const double scale = frame.Y0.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i + 1 < loop.vertices.size(); ++i) {
        const Complex z0 = loop.vertices[i];
        const Complex dz = loop.vertices[i + 1] - z0;
        if (dz == Complex{0.0, 0.0}) continue;
        auto sys = [&](const State& s, State& ds, double t) {
            const auto c = perturbed_coefficients(p, e, z0 + t * dz);
            ds[0] = dz * (c.a1 * s[0] + s[2]);
            ds[1] = dz * (c.a1 * s[1] + s[3]);
            ds[2] = dz * (c.a2 * s[2]);
            ds[3] = dz * (c.a2 * s[3]);
        };
        try {
            auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(tol * scale, tol);
            ode::integrate_adaptive(stepper, sys, y, 0.0, 1.0, 1e-3);
        } catch (const std::exception& ex) {
            throw ConvergenceFailure(std::string("monodromy_ode: step failure: ") + ex.what());
        }
        for (const Complex& v : y)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ConvergenceFailure("monodromy_ode: solution overflow");
    }
    Matrix2C Y;
    Y << y[0], y[1], y[2], y[3];
    return frame.Y0.inverse() * Y;
}

} // namespace heunstokes
