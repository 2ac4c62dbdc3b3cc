#include "config.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace heunstokes::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_real(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t.empty()) throw UsageError("empty number in " + what);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + text + "' in " + what);
    }
    if (used != t.size() || !std::isfinite(v)) throw UsageError("not a number: '" + text + "' in " + what);
    return v;
}

} // namespace

Epsilon RunConfig::epsilon() const {
    if (!sqrt_eps) throw UsageError("--sqrt-eps is required for this command");
    try {
        return Epsilon::make(*sqrt_eps);
    } catch (const std::exception& ex) {
        throw UsageError(std::string("invalid --sqrt-eps: ") + ex.what());
    }
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_real(text, "'" + text + "'"), 0.0};
    if (text.find(',', comma + 1) != std::string::npos) throw UsageError("expected re,im but got '" + text + "'");
    return {parse_real(text.substr(0, comma), "'" + text + "'"), parse_real(text.substr(comma + 1), "'" + text + "'")};
}

std::vector<int> parse_n_list(const std::string& text) {
    if (trim(text).empty()) throw UsageError("--n-list must not be empty");
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const double v = parse_real(item, "--n-list");
        if (v < 1.0 || v != std::floor(v) || v > 1e6) throw UsageError("--n-list entries must be positive integers");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw UsageError("--n-list must not be empty");
    return out;
}

Format parse_format(const std::string& text) {
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    throw UsageError("--format must be json or csv");
}

} // namespace heunstokes::cli
