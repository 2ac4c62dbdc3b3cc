#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force checks of the closed forms of the unfolded equation.
 *
 * Solutions of the factorised system L_{2,eps} L_{1,eps} y = 0:
 *   Phi_j(x) = (x - s)^{cR_j} (x + s)^{cL_j} (a - x)^{cRR_j} (a + x)^{cLL_j},   s = sqrt(eps), a = 1/s,
 * principal branches, with c the residues of a_j. Y = [[Phi_1, Phi_12], [0, Phi_2]] solves
 * Y' = [[a_1, 1], [0, a_2]] Y when Phi_12 = Phi_1 int Phi_2/Phi_1.
 */

#include <array>
#include <optional>
#include <vector>

#include "heunstokes/model.hpp"
#include "heunstokes/types.hpp"

namespace heunstokes {

enum class Frame { Origin, Infinity };

std::string_view to_string(Frame f);

/// Exponents c_j at the four points: factor order R, L, RR, LL.
std::array<Complex, 4> solution_exponents(const Params& p, const Epsilon& e, int j);

/// Exponents of Phi_2/Phi_1 at R, L, RR, LL: d_beta/2s - 1, -d_beta/2s - 1, -d_gamma/2s, d_gamma/2s.
std::array<Complex, 4> quotient_exponents(const Params& p, const Epsilon& e);

/// Phi_j(x), j = 1, 2, principal branches.
Complex phi_solution(const Params& p, const Epsilon& e, int j, Complex x);

/// (1/(2 pi i)) closed integral of Phi_2/Phi_1 around x_point; radius 0 picks half the distance to the nearest other point.
Complex residue_contour(const Params& p, const Epsilon& e, Point point, double radius = 0.0, int n_nodes = 256);

/// Base point of a frame: the first of (R, L) or (RR, LL) where Phi_2/Phi_1 is integrable.
Point frame_base_point(const Params& p, const Epsilon& e, Frame frame);

/// Phi_1(x) int_{base}^{x} Phi_2/Phi_1 along the straight segment, branches continued from x.
Complex phi12_quadrature(const Params& p, const Epsilon& e, Complex x, Frame frame, double tol = 1e-13);

struct Loop {
    Complex base;
    std::vector<Complex> vertices; ///< closed polygon: front() == back() == base
    std::vector<Point> enclosed;
};

/// Winding number of a closed polygon around z.
double winding_number(const std::vector<Complex>& polygon, Complex z);

/// Smallest distance between two distinct singular points.
double min_singular_gap(const Epsilon& e);

/// Validates clearance and orientation, fills in the enclosed points.
Loop make_loop(const Epsilon& e, std::vector<Complex> vertices);

/// Default base: i |sqrt(eps)| / 2 (off the real axis).
Complex default_loop_base(const Epsilon& e);

/// base -> diamond of half-diagonal 0.5 * gap around the point (counterclockwise) -> base.
Loop loop_around(const Epsilon& e, Point pt, std::optional<Complex> base = std::nullopt);

/// One diamond around both points (centered at their midpoint).
Loop loop_around_pair(const Epsilon& e, Point a, Point b, std::optional<Complex> base = std::nullopt);

/// Small triangle at the base enclosing nothing.
Loop empty_loop(const Epsilon& e, std::optional<Complex> base = std::nullopt);

/// first then second (same base).
Loop compose(const Epsilon& e, const Loop& first, const Loop& second);

struct FundamentalFrame {
    Complex base;
    Matrix2C Y0;
    Frame which = Frame::Origin;
};

FundamentalFrame make_frame(const Params& p, const Epsilon& e, Complex base, Frame which);

/// Y0^{-1} Y(end) for Y continued along the loop by an adaptive Dormand-Prince 5(4) integrator.
Matrix2C monodromy_ode(const Params& p, const Epsilon& e, const Loop& loop, const FundamentalFrame& frame,
                       double tol = 1e-12);

} // namespace heunstokes
