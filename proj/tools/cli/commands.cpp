#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "heunstokes/borel.hpp"
#include "heunstokes/errors.hpp"
#include "heunstokes/model.hpp"
#include "heunstokes/oracle.hpp"
#include "heunstokes/stokes.hpp"
#include "heunstokes/unfold.hpp"

namespace heunstokes::cli {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json cjson(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json mjson(const Matrix2C& m) {
    return Json::array({Json::array({cjson(m(0, 0)), cjson(m(0, 1))}), Json::array({cjson(m(1, 0)), cjson(m(1, 1))})});
}

Json params_json(const Params& p) {
    return Json{{"beta1", cjson(p.beta1)}, {"beta2", cjson(p.beta2)}, {"gamma1", cjson(p.gamma1)}, {"gamma2", cjson(p.gamma2)}};
}

void add_quantity(Table& t, const std::string& name, Complex v) {
    t.rows.push_back({name, num(v.real()), num(v.imag())});
}

double rel_err(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / std::abs(b == Complex{0.0, 0.0} ? a : b);
}

Resonance pick_resonance(const RunConfig& cfg, const Params& p, const Epsilon& e) {
    if (cfg.type) {
        const ResonanceKind kind = parse_resonance(*cfg.type);
        const auto r = resonance_data(p, e, kind);
        if (!r) throw ResonanceMismatch("parameters do not realise resonance " + *cfg.type);
        return *r;
    }
    const Resonance r = classify_resonance(p, e);
    if (r.kind == ResonanceKind::None)
        throw ResonanceMismatch("no double resonance: need eps real positive and integer ratios");
    return r;
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

CommandResult cmd_stokes(const RunConfig& cfg) {
    const Params p = cfg.params();
    const double tol = cfg.tol_or(1e-9);
    CommandResult res;
    const Complex S = bessel_sum_S(p);
    const StokesMatrix st0 = stokes_origin(p);
    Json& r = res.report;
    r["params"] = params_json(p);
    r["S"] = cjson(S);
    r["origin"] = Json{{"theta", st0.theta}, {"theta_mod_2pi", st0.theta_mod_2pi}, {"mu", cjson(st0.mu)},
                       {"matrix", mjson(st0.matrix())}};
    Complex mu_inf{0.0, 0.0};
    if (p.dgamma() == Complex{0.0, 0.0}) {
        r["infinity"] = Json{{"theta", nullptr},
                             {"mu", cjson(0.0)},
                             {"matrix", mjson(Matrix2C::Identity())},
                             {"note", "gamma1 == gamma2: no singular direction at infinity, identity Stokes matrix"}};
    } else {
        const StokesMatrix stI = stokes_infinity(p);
        mu_inf = stI.mu;
        r["infinity"] = Json{{"theta", stI.theta}, {"theta_mod_2pi", stI.theta_mod_2pi}, {"mu", cjson(stI.mu)},
                             {"matrix", mjson(stI.matrix())}};
    }
    const double anti = std::abs(st0.mu + mu_inf);
    const bool anti_ok = anti <= 1e-13 * std::max(1.0, std::abs(st0.mu));
    const bool trivial = std::abs(st0.mu) < tol && std::abs(mu_inf) < tol;
    r["checks"] = Json{{"mu_origin_plus_mu_infinity", anti}, {"antisymmetric", anti_ok}};
    r["trivial_stokes"] = trivial;
    res.ok = anti_ok;
    res.table.header = {"quantity", "re", "im"};
    add_quantity(res.table, "S", S);
    add_quantity(res.table, "mu_origin", st0.mu);
    add_quantity(res.table, "mu_infinity", mu_inf);
    return res;
}

CommandResult cmd_series(const RunConfig& cfg) {
    const Params p = cfg.params();
    if (cfg.terms < 1 || cfg.terms > 10000) throw UsageError("--terms must be in 1..10000");
    CommandResult res;
    SeriesCoefficients c;
    if (cfg.series_kind == "psi")
        c = psi_coefficients(p, cfg.terms);
    else if (cfg.series_kind == "phi")
        c = phi_coefficients(p, cfg.terms);
    else if (cfg.series_kind == "ak")
        c = a_k_recursion(p, cfg.terms);
    else if (cfg.series_kind == "ck")
        c = c_k_series(p, cfg.terms);
    else
        throw UsageError("--kind must be psi, phi, ak or ck");
    Json& r = res.report;
    r["params"] = params_json(p);
    r["kind"] = std::string(to_string(c.kind));
    Json vals = Json::array();
    res.table.header = {"k", "re", "im"};
    for (int k = c.first_index; k <= c.last_index(); ++k) {
        vals.push_back(Json{{"k", k}, {"value", cjson(c.at(k))}});
        res.table.rows.push_back({std::to_string(k), num(c.at(k).real()), num(c.at(k).imag())});
    }
    r["coefficients"] = vals;
    if (c.kind == SeriesKind::CK) {
        const auto b = psi_coefficients(p, cfg.terms);
        const Complex f = -p.dgamma() / p.dbeta();
        double worst = 0.0;
        for (int k = 1; k <= cfg.terms; ++k) worst = std::max(worst, rel_err(c.at(k), f * b.at(k)));
        const double tol = cfg.tol_or(1e-10);
        r["checks"] = Json{{"max_rel_err_vs_psi", worst}, {"tol", tol}};
        res.ok = worst <= tol;
    }
    return res;
}

CommandResult cmd_borel(const RunConfig& cfg) {
    if (!cfg.x) throw UsageError("--x is required for borel");
    const Params p = cfg.params();
    const Complex x = *cfg.x;
    const double tol = cfg.tol_or(1e-6);
    CommandResult res;
    const JumpReport j = stokes_jump_origin(p, x, cfg.eps_angle);
    const Complex S = bessel_sum_S(p);
    const bool zero_jump = p.dgamma() == Complex{0.0, 0.0} || std::abs(S) < 1e-12;
    Json& r = res.report;
    r["params"] = params_json(p);
    r["x"] = cjson(x);
    r["S"] = cjson(S);
    r["theta"] = j.theta;
    r["eps_angle"] = j.eps_angle;
    r["jump"] = Json{{"quadrature", cjson(j.quadrature)},
                     {"residue", cjson(j.residue)},
                     {"rel_err", j.rel_err},
                     {"sector", cjson(j.sector)},
                     {"sector_rel_err", j.sector_rel_err},
                     {"half_angle", cjson(j.half_angle)},
                     {"eps_angle_sensitivity", j.sensitivity},
                     {"phi1_abs", j.phi1_abs}};
    if (p.dgamma() != Complex{0.0, 0.0}) {
        const OneSum minus = psi_sum(p, j.theta - cfg.eps_angle, x);
        const OneSum plus = psi_sum(p, j.theta + cfg.eps_angle, x);
        r["psi"] = Json{{"theta_minus", cjson(minus.value)}, {"theta_plus", cjson(plus.value)}};
    }
    bool ok = false;
    if (zero_jump) {
        const double rel = std::abs(j.quadrature) / std::max(j.phi1_abs, std::numeric_limits<double>::min());
        ok = rel < 1e-8;
        r["checks"] = Json{{"mode", "zero jump"}, {"jump_over_phi1", rel}, {"tol", 1e-8}, {"pass", ok}};
    } else {
        ok = j.rel_err <= tol;
        r["checks"] = Json{{"mode", "residue"}, {"rel_err", j.rel_err}, {"tol", tol}, {"pass", ok}};
    }
    res.ok = ok;
    res.table.header = {"quantity", "re", "im"};
    add_quantity(res.table, "jump_quadrature", j.quadrature);
    add_quantity(res.table, "jump_residue", j.residue);
    add_quantity(res.table, "jump_sector", j.sector);
    add_quantity(res.table, "rel_err", j.rel_err);
    return res;
}

CommandResult cmd_unfold(const RunConfig& cfg) {
    const Params p = cfg.params();
    const Epsilon e = cfg.epsilon();
    const Resonance rs = pick_resonance(cfg, p, e);
    const double tol = cfg.tol_or(1e-8);
    const auto logs = logarithmic_points(rs.kind);
    CommandResult res;
    Json& r = res.report;
    r["params"] = params_json(p);
    r["sqrt_eps"] = cjson(e.sqrt_eps);
    r["resonance"] = Json{{"type", std::string(to_string(rs.kind))}, {"n_beta", rs.n_beta}, {"n_gamma", rs.n_gamma}};
    Json pts = Json::array();
    res.table.header = {"point", "logarithmic", "re_d", "im_d", "re_oracle", "im_oracle", "rel_err"};
    double worst = 0.0;
    double worst_comm = 0.0;
    for (Point pt : all_points) {
        const bool is_log = pt == logs[0] || pt == logs[1];
        const MonodromyDecomp dec = monodromy_decomp(p, e, rs, pt);
        const Complex orc = residue_contour(p, e, pt);
        const double err = rel_err(dec.d, orc);
        const double abs_gap = std::abs(dec.d - orc);
        const double check = (std::abs(orc) < 1e-12 && std::abs(dec.d) < 1e-12) ? abs_gap : err;
        worst = std::max(worst, check);
        worst_comm = std::max(worst_comm, dec.commutator_norm());
        pts.push_back(Json{{"point", std::string(to_string(pt))},
                           {"logarithmic", is_log},
                           {"d", cjson(dec.d)},
                           {"oracle_residue", cjson(orc)},
                           {"rel_err", check},
                           {"exponent_part", mjson(dec.exponent_part)},
                           {"unfolded_stokes", mjson(unfolded_stokes(p, e, rs, pt))},
                           {"M", mjson(dec.M)},
                           {"commutator_norm", dec.commutator_norm()}});
        res.table.rows.push_back({std::string(to_string(pt)), is_log ? "1" : "0", num(dec.d.real()), num(dec.d.imag()),
                                  num(orc.real()), num(orc.imag()), num(check)});
    }
    r["points"] = pts;
    const LimitPair lim = limit_closed_form(p);
    r["limits"] = Json{{"d_j", cjson(lim.d_j)}, {"d_jj", cjson(lim.d_jj)}};
    res.ok = worst <= tol && worst_comm <= 1e-12;
    r["checks"] = Json{{"max_rel_err_vs_oracle", worst}, {"tol", tol}, {"max_commutator_norm", worst_comm}, {"pass", res.ok}};
    return res;
}

CommandResult cmd_converge(const RunConfig& cfg) {
    if (!cfg.n_list) throw UsageError("--n-list is required for converge");
    const Params p = cfg.params();
    const int which = cfg.which_case.value_or(limit_case(p));
    const double threshold = cfg.tol_or(5e-2);
    const ConvergenceTable tab = limit_experiment(p, which, *cfg.n_list);
    CommandResult res;
    Json& r = res.report;
    r["params"] = params_json(p);
    r["case"] = which;
    r["type"] = std::string(to_string(tab.kind));
    r["finite_point"] = std::string(to_string(tab.finite_point));
    r["infinity_point"] = std::string(to_string(tab.infinity_point));
    r["mu_origin"] = cjson(tab.mu_origin);
    r["mu_infinity"] = cjson(tab.mu_infinity);
    const LimitPair lim = limit_closed_form(p);
    r["limit_d_j"] = cjson(lim.d_j);
    r["limit_d_jj"] = cjson(lim.d_jj);
    Json rows = Json::array();
    res.table.header = {"n", "sqrt_eps", "point", "re_d", "im_d", "abs_err"};
    for (const auto& row : tab.rows) {
        rows.push_back(Json{{"n", row.n},
                            {"sqrt_eps", row.sqrt_eps},
                            {"point", std::string(to_string(row.point))},
                            {"d", cjson(row.d)},
                            {"abs_err", row.abs_err}});
        res.table.rows.push_back({std::to_string(row.n), num(row.sqrt_eps), std::string(to_string(row.point)),
                                  num(row.d.real()), num(row.d.imag()), num(row.abs_err)});
    }
    r["rows"] = rows;
    res.ok = tab.converged(threshold);
    r["checks"] = Json{{"threshold", threshold}, {"converged", res.ok}};
    return res;
}

CommandResult cmd_classify(const RunConfig& cfg) {
    const GeneralParams g = cfg.general();
    const Epsilon e = cfg.epsilon();
    const HeunReport rep = heun_case_check(g, e);
    static const char* labels[5] = {"0", "sqrt(eps)", "-sqrt(eps)", "1/sqrt(eps)", "-1/sqrt(eps)"};
    CommandResult res;
    Json& r = res.report;
    r["params"] = Json{{"alpha1", cjson(g.alpha1)}, {"alpha2", cjson(g.alpha2)}, {"beta1", cjson(g.beta1)},
                       {"beta2", cjson(g.beta2)}, {"gamma1", cjson(g.gamma1)}, {"gamma2", cjson(g.gamma2)}};
    r["sqrt_eps"] = cjson(e.sqrt_eps);
    std::string singular;
    Json pts = Json::array();
    res.table.header = {"t", "ordinary", "p_re", "p_im", "q0_re", "q0_im", "q1_re", "q1_im"};
    for (const auto& pt : rep.points) {
        const std::string label = labels[pt.index - 1];
        if (!pt.ordinary) singular += (singular.empty() ? "" : ", ") + label;
        pts.push_back(Json{{"t", label},
                           {"ordinary", pt.ordinary},
                           {"p", cjson(pt.exact.p)},
                           {"q0", cjson(pt.exact.q0)},
                           {"q1", cjson(pt.exact.q1)}});
        res.table.rows.push_back({label, pt.ordinary ? "1" : "0", num(pt.exact.p.real()), num(pt.exact.p.imag()),
                                  num(pt.exact.q0.real()), num(pt.exact.q0.imag()), num(pt.exact.q1.real()),
                                  num(pt.exact.q1.imag())});
    }
    Json cases = Json::array();
    for (HeunCase c : rep.matched) cases.push_back(std::string(to_string(c)));
    std::string summary;
    if (rep.matched.empty()) {
        summary = "no case, " + std::to_string(rep.singular_count) + " singular points";
    } else {
        for (std::size_t i = 0; i < rep.matched.size(); ++i)
            summary += (i ? "/" : "") + std::string(to_string(rep.matched[i]));
        summary = "case " + summary + ", singular: {" + singular + "}";
    }
    r["summary"] = summary;
    r["singular_count"] = rep.singular_count;
    r["matched_cases"] = cases;
    r["points"] = pts;
    if (g.alpha1 == Complex{0.0, 0.0} && g.alpha2 == Complex{-2.0, 0.0}) {
        const Resonance rs = classify_resonance(cfg.params(), e);
        r["resonance"] = Json{{"type", std::string(to_string(rs.kind))}, {"n_beta", rs.n_beta}, {"n_gamma", rs.n_gamma}};
    }
    res.ok = rep.consistent;
    r["checks"] = Json{{"consistent", rep.consistent}};
    return res;
}

CommandResult cmd_oracle_check(const RunConfig& cfg) {
    const Epsilon e = cfg.epsilon();
    const std::vector<int> grid = cfg.n_list.value_or(std::vector<int>{1, 2, 3});
    const double tol = cfg.tol_or(1e-8);
    CommandResult res;
    Json& r = res.report;
    r["sqrt_eps"] = cjson(e.sqrt_eps);
    r["beta1"] = cjson(cfg.beta1);
    r["gamma1"] = cjson(cfg.gamma1);
    r["grid"] = grid;
    res.table.header = {"type", "n_beta", "n_gamma", "point", "re_closed", "im_closed", "re_oracle", "im_oracle",
                        "rel_err", "status"};
    Json rows = Json::array();
    double worst = 0.0;
    int compared = 0;
    auto push = [&](const std::string& type, long long nb, long long ng, const std::string& pt, Complex dc, Complex orc,
                    double err, const std::string& status) {
        rows.push_back(Json{{"type", type}, {"n_beta", nb}, {"n_gamma", ng}, {"point", pt}, {"closed", cjson(dc)},
                            {"oracle", cjson(orc)}, {"rel_err", err}, {"status", status}});
        res.table.rows.push_back({type, std::to_string(nb), std::to_string(ng), pt, num(dc.real()), num(dc.imag()),
                                  num(orc.real()), num(orc.imag()), num(err), status});
    };
    if (!e.real_positive()) {
        r["skipped"] = "eps is not real positive: no double resonance, rows skipped";
        push("all", 0, 0, "-", 0.0, 0.0, 0.0, "skipped: eps not real positive");
    } else {
        const double s = e.sqrt_eps.real();
        for (ResonanceKind kind : {ResonanceKind::A1, ResonanceKind::A2, ResonanceKind::A3, ResonanceKind::A4}) {
            const double sb = (kind == ResonanceKind::A1 || kind == ResonanceKind::A2) ? 1.0 : -1.0;
            const double sg = (kind == ResonanceKind::A1 || kind == ResonanceKind::A3) ? -1.0 : 1.0;
            std::vector<int> ngs = grid;
            ngs.insert(ngs.begin(), 0);
            for (int nb : grid) {
                for (int ng : ngs) {
                    const Params p{cfg.beta1, cfg.beta1 + sb * 2.0 * s * nb, cfg.gamma1, cfg.gamma1 + sg * 2.0 * s * ng};
                    const auto rs = resonance_data(p, e, kind);
                    const std::string type(to_string(kind));
                    if (!rs) {
                        push(type, nb, ng, "-", 0.0, 0.0, 0.0, "skipped: not resonant");
                        continue;
                    }
                    for (Point pt : logarithmic_points(kind)) {
                        const Complex dc = d_coefficient(p, e, *rs, pt);
                        const Complex orc = residue_contour(p, e, pt);
                        double err = 0.0;
                        std::string status = "ok";
                        if (ng == 0) {
                            err = std::abs(dc) + std::abs(orc);
                            status = "gamma1 == gamma2";
                        } else {
                            err = rel_err(dc, orc);
                        }
                        const bool pass = ng == 0 ? err < 1e-10 : err <= tol;
                        if (!pass) status = "FAIL";
                        if (ng != 0) worst = std::max(worst, err);
                        if (!pass) res.ok = false;
                        ++compared;
                        push(type, nb, ng, std::string(to_string(pt)), dc, orc, err, status);
                    }
                }
            }
        }
    }
    r["rows"] = rows;
    r["checks"] = Json{{"compared", compared}, {"max_rel_err", worst}, {"tol", tol}, {"pass", res.ok}};
    return res;
}

CommandResult cmd_monodromy(const RunConfig& cfg) {
    const Params p = cfg.params();
    const Epsilon e = cfg.epsilon();
    const Resonance rs = pick_resonance(cfg, p, e);
    const double tol = cfg.tol_or(1e-6);
    const CharExponents ce = char_exponents(p, e);
    CommandResult res;
    Json& r = res.report;
    r["params"] = params_json(p);
    r["sqrt_eps"] = cjson(e.sqrt_eps);
    r["resonance"] = Json{{"type", std::string(to_string(rs.kind))}, {"n_beta", rs.n_beta}, {"n_gamma", rs.n_gamma}};
    const Complex base = default_loop_base(e);
    FundamentalFrame frame;
    try {
        frame = make_frame(p, e, base, Frame::Origin);
    } catch (const DomainError&) {
        frame = make_frame(p, e, base, Frame::Infinity);
    }
    r["frame"] = Json{{"which", std::string(to_string(frame.which))}, {"base", cjson(base)}, {"Y0", mjson(frame.Y0)}};
    res.table.header = {"loop", "max_entry_err", "eigenvector_err", "det_err"};
    Json loops = Json::array();
    bool ok = true;
    std::map<Point, Matrix2C> numeric;
    for (Point pt : all_points) {
        const Loop loop = loop_around(e, pt, base);
        const Matrix2C M = monodromy_ode(p, e, loop, frame);
        numeric[pt] = M;
        const MonodromyDecomp dec = monodromy_decomp(p, e, rs, pt);
        const double err = (M - dec.M).cwiseAbs().maxCoeff();
        const auto rho = ce.at(pt);
        const Complex l1 = std::exp(two_pi_i * rho[0]);
        const double eig = std::max(std::abs(M(1, 0)), std::abs(M(0, 0) - l1));
        const Complex det_expected = std::exp(two_pi_i * (rho[0] + rho[1] - 1.0));
        const double det_err = std::abs(M.determinant() - det_expected);
        const bool pass = err <= tol && eig <= tol && det_err <= tol;
        ok = ok && pass;
        loops.push_back(Json{{"loop", std::string(to_string(pt))},
                             {"numeric", mjson(M)},
                             {"closed_form", mjson(dec.M)},
                             {"max_entry_err", err},
                             {"eigenvector_err", eig},
                             {"det_err", det_err},
                             {"pass", pass}});
        res.table.rows.push_back({std::string(to_string(pt)), num(err), num(eig), num(det_err)});
    }
    {
        const Matrix2C M = monodromy_ode(p, e, empty_loop(e, base), frame);
        const double err = (M - Matrix2C::Identity()).cwiseAbs().maxCoeff();
        ok = ok && err <= tol;
        loops.push_back(Json{{"loop", "empty"}, {"numeric", mjson(M)}, {"max_entry_err", err}, {"pass", err <= tol}});
        res.table.rows.push_back({"empty", num(err), "0", "0"});
    }
    {
        const Matrix2C expected = numeric[Point::R] * numeric[Point::L];
        const Matrix2C pair = monodromy_ode(p, e, loop_around_pair(e, Point::L, Point::R, base), frame);
        const Loop comp = compose(e, loop_around(e, Point::L, base), loop_around(e, Point::R, base));
        const Matrix2C composed = monodromy_ode(p, e, comp, frame);
        const double err_pair = (pair - expected).cwiseAbs().maxCoeff();
        const double err_comp = (composed - expected).cwiseAbs().maxCoeff();
        const bool pass = err_pair <= tol && err_comp <= tol;
        ok = ok && pass;
        loops.push_back(Json{{"loop", "L then R"},
                             {"pair_loop", mjson(pair)},
                             {"composed", mjson(composed)},
                             {"product_M_R_M_L", mjson(expected)},
                             {"pair_err", err_pair},
                             {"composition_err", err_comp},
                             {"pass", pass}});
        res.table.rows.push_back({"L then R", num(std::max(err_pair, err_comp)), "0", "0"});
    }
    r["loops"] = loops;
    r["checks"] = Json{{"tol", tol}, {"pass", ok}};
    res.ok = ok;
    return res;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg) {
    if (name == "stokes") return cmd_stokes(cfg);
    if (name == "series") return cmd_series(cfg);
    if (name == "borel") return cmd_borel(cfg);
    if (name == "unfold") return cmd_unfold(cfg);
    if (name == "converge") return cmd_converge(cfg);
    if (name == "classify") return cmd_classify(cfg);
    if (name == "oracle-check") return cmd_oracle_check(cfg);
    if (name == "monodromy") return cmd_monodromy(cfg);
    throw UsageError("unknown command: " + name);
}

std::string render(const std::string& name, const CommandResult& result, const RunConfig& cfg) {
    if (cfg.format == Format::Csv) {
        std::ostringstream os;
        if (cfg.timestamp) os << "# generated_at " << timestamp_now() << '\n';
        for (std::size_t i = 0; i < result.table.header.size(); ++i)
            os << (i ? "," : "") << csv_escape(result.table.header[i]);
        os << '\n';
        for (const auto& row : result.table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
            os << '\n';
        }
        return os.str();
    }
    Json doc;
    doc["schema"] = schema_version;
    doc["command"] = name;
    if (cfg.timestamp) doc["generated_at"] = timestamp_now();
    for (const auto& [k, v] : result.report.items()) doc[k] = v;
    doc["ok"] = result.ok;
    return doc.dump(2) + "\n";
}

namespace {

struct RawOptions {
    std::string alpha1 = "0", alpha2 = "-2";
    std::string beta1 = "0", beta2 = "0", gamma1 = "0", gamma2 = "0";
    std::string sqrt_eps, x, n_list, type, format = "json", out, kind = "psi";
    double tol = 0.0;
    int which_case = 0;
    int terms = 10;
    double eps_angle = 0.05;
    bool no_timestamp = false;
};

void add_common(CLI::App* sub, RawOptions& o) {
    sub->add_option("--beta1", o.beta1, "beta1 as re,im or a real");
    sub->add_option("--beta2", o.beta2, "beta2 as re,im or a real");
    sub->add_option("--gamma1", o.gamma1, "gamma1 as re,im or a real");
    sub->add_option("--gamma2", o.gamma2, "gamma2 as re,im or a real");
    sub->add_option("--tol", o.tol, "tolerance of the command's checks (default per command)");
    sub->add_option("--format", o.format, "json or csv");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp header");
}

RunConfig to_config(const RawOptions& o, const CLI::App& app, const std::string& name) {
    const CLI::App* sub = app.get_subcommand(name);
    RunConfig c;
    c.alpha1 = parse_complex(o.alpha1);
    c.alpha2 = parse_complex(o.alpha2);
    c.beta1 = parse_complex(o.beta1);
    c.beta2 = parse_complex(o.beta2);
    c.gamma1 = parse_complex(o.gamma1);
    c.gamma2 = parse_complex(o.gamma2);
    auto given = [&](const std::string& opt) { return sub->get_option_no_throw(opt) && sub->count(opt) > 0; };
    if (given("--sqrt-eps")) c.sqrt_eps = parse_complex(o.sqrt_eps);
    if (given("--x")) c.x = parse_complex(o.x);
    if (given("--n-list")) c.n_list = parse_n_list(o.n_list);
    if (given("--tol")) {
        if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
        c.tol = o.tol;
    }
    if (given("--case")) c.which_case = o.which_case;
    if (given("--type")) c.type = o.type;
    c.series_kind = o.kind;
    c.terms = o.terms;
    c.eps_angle = o.eps_angle;
    if (!(c.eps_angle > 0.0 && c.eps_angle < 1.0)) throw UsageError("--eps-angle must lie in (0, 1)");
    c.format = parse_format(o.format);
    c.out = o.out;
    c.timestamp = !o.no_timestamp;
    return c;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"heunstokes: Stokes data of a rank-1 equation and its Heun-type unfolding"};
    app.require_subcommand(1);
    RawOptions o;
    struct SubcommandInfo {
        const char* name;
        const char* help;
    };
    const SubcommandInfo specs[] = {
        {"stokes", "S, both Stokes matrices and singular directions"},
        {"series", "coefficients of psi_hat, phi_hat, a_k or c_k"},
        {"borel", "Stokes jump at the origin: two-ray quadrature vs residue formula"},
        {"unfold", "closed-form d, monodromy decompositions and unfolded Stokes matrices"},
        {"converge", "convergence of 2 pi i d to the Stokes multipliers as eps -> 0"},
        {"classify", "four-singular-point classification of the unfolded equation"},
        {"oracle-check", "closed-form d vs contour residues over a resonance grid"},
        {"monodromy", "numeric monodromy by ODE continuation vs the closed form"},
    };
    for (const auto& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, o);
        const std::string n = s.name;
        if (n == "classify") {
            sub->add_option("--alpha1", o.alpha1, "alpha1 (default 0)");
            sub->add_option("--alpha2", o.alpha2, "alpha2 (default -2)");
        }
        if (n == "classify" || n == "unfold" || n == "oracle-check" || n == "monodromy")
            sub->add_option("--sqrt-eps", o.sqrt_eps, "sqrt(eps) as re,im or a real");
        if (n == "borel") {
            sub->add_option("--x", o.x, "evaluation point x as re,im or a real");
            sub->add_option("--eps-angle", o.eps_angle, "half opening of the two rays (default 0.05)");
        }
        if (n == "converge" || n == "oracle-check") sub->add_option("--n-list", o.n_list, "comma-separated integers");
        if (n == "converge") sub->add_option("--case", o.which_case, "case 1..4 (default from the signs)");
        if (n == "unfold" || n == "monodromy") sub->add_option("--type", o.type, "force resonance type A1..A4");
        if (n == "series") {
            sub->add_option("--kind", o.kind, "psi, phi, ak or ck");
            sub->add_option("--terms", o.terms, "number of coefficients");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    CommandResult result;
    try {
        cfg = to_config(o, app, name);
        result = run_command(name, cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    const std::string text = render(name, result, cfg);
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            err << "error: cannot open " << cfg.out << '\n';
            return 3;
        }
        f << text;
    }
    if (!result.ok) err << name << ": checks failed\n";
    return result.ok ? 0 : 1;
}

} // namespace heunstokes::cli
