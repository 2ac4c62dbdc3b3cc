#pragma once

/**
 * @file config.hpp
 * @brief Run configuration of the heunstokes command-line tool.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heunstokes/model.hpp"
#include "heunstokes/types.hpp"

namespace heunstokes::cli {

/// Malformed or missing command-line input (exit code 2).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Csv };

struct RunConfig {
    Complex alpha1{0.0, 0.0};
    Complex alpha2{-2.0, 0.0};
    Complex beta1{0.0, 0.0};
    Complex beta2{0.0, 0.0};
    Complex gamma1{0.0, 0.0};
    Complex gamma2{0.0, 0.0};
    std::optional<Complex> sqrt_eps;
    std::optional<Complex> x;
    std::optional<double> tol;      ///< overrides the command default
    std::optional<std::vector<int>> n_list;
    std::optional<int> which_case;  ///< converge: case 1..4 (default from signs)
    std::optional<std::string> type; ///< unfold / monodromy: force A1..A4
    std::string series_kind = "psi";
    int terms = 10;
    double eps_angle = 0.05;
    Format format = Format::Json;
    std::string out;                 ///< empty: stdout
    bool timestamp = true;

    Params params() const { return Params{beta1, beta2, gamma1, gamma2}; }
    GeneralParams general() const { return GeneralParams{alpha1, alpha2, beta1, beta2, gamma1, gamma2}; }
    double tol_or(double fallback) const { return tol.value_or(fallback); }
    /// Throws UsageError when --sqrt-eps is missing.
    Epsilon epsilon() const;
};

/// "re,im" or a bare real.
Complex parse_complex(const std::string& text);

/// Comma-separated positive integers; empty input throws UsageError.
std::vector<int> parse_n_list(const std::string& text);

Format parse_format(const std::string& text);

} // namespace heunstokes::cli
