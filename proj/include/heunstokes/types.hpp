#pragma once

/**
 * @file types.hpp
 * @brief Scalar and matrix aliases shared by every module.
 */

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace heunstokes {

using Complex = std::complex<double>;
using Matrix2C = Eigen::Matrix2cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};
inline constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};

} // namespace heunstokes
