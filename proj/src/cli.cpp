#include "soliton/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>

#include "soliton/serialize.hpp"

namespace soliton {

std::string fixtures_dir() {
    if (const char* env = std::getenv("SOLITON_FIXTURES"); env && *env) return env;
    return SOLITON_DEFAULT_FIXTURES;
}

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Config {
    std::string model = "kdv";
    int n = 1;
    int sigma = 1;
    std::string A0;
    std::string format = "json";
    std::string operator_file;
    // verify
    std::string check = "all";
    std::string solution = "plane_wave";
    double kappa = 1.0, C = 1.0, k = 0.7, omega = 0.5, velocity = 0.0;
    double perturb = 0.0, tol = -1.0;
    int grid_n = 1001;
    bool branch_flip = false, details = false;
    // export
    bool compare = false;
};

struct Model {
    std::string name;
    OperatorSpec L;
    GaussianRational A0;
};

void validate_format(const Config& c) {
    if (c.format != "json" && c.format != "latex" && c.format != "text")
        throw UsageError("--format must be json, latex or text");
}

Model make_model(const Config& c) {
    if (c.n < 0) throw UsageError("--n must be non-negative");
    if (c.sigma != 1 && c.sigma != -1) throw UsageError("--sigma must be 1 or -1");
    Model m{c.model, kdv_operator(), kdv_A0(c.n)};
    if (c.model == "kdv") {
        m.A0 = kdv_A0(c.n);
    } else if (c.model == "nls") {
        m.L = nls_operator();
        m.A0 = GaussianRational(2);
    } else if (c.model == "custom") {
        if (c.operator_file.empty()) throw UsageError("--model custom needs --operator FILE");
        std::ifstream in(c.operator_file);
        if (!in) throw UsageError("cannot read " + c.operator_file);
        json j = json::parse(in);
        RingPtr ring = ring_from_json(j.at("ring"));
        std::vector<DiffPoly> coeffs;
        for (const auto& t : j.at("L")) coeffs.push_back(parse_diffpoly(t.get<std::string>(), ring));
        m.L = OperatorSpec(coeffs);
        m.A0 = j.contains("A0") ? GaussianRational::parse(j["A0"].get<std::string>())
                                : GaussianRational(-2) * m.L.L0();
    } else {
        throw UsageError("--model must be kdv, nls or custom");
    }
    if (!c.A0.empty()) {
        try {
            m.A0 = GaussianRational::parse(c.A0);
        } catch (const std::exception&) {
            throw UsageError("--A0 must be a rational like 3/2");
        }
        if (m.A0.is_zero()) throw UsageError("--A0 must be nonzero");
    }
    return m;
}

std::string render(const DiffPoly& p, const std::string& fmt) { return fmt == "latex" ? to_latex(p) : to_text(p); }
std::string render(const LambdaPoly& p, const std::string& fmt) { return fmt == "latex" ? to_latex(p) : to_text(p); }

std::string sub(const std::string& base, const std::string& idx, const std::string& fmt) {
    if (fmt == "latex") return base + "_{" + idx + "}";
    return base + "_" + idx;
}

int cmd_derive(const Config& c, std::ostream& out, bool conditions_only) {
    validate_format(c);
    Model m = make_model(c);
    SolitonDerivation der = derive_soliton(m.L, c.n, m.A0);
    ConditionSet cs = conditions(der, m.L), alt = conditions_alternative(der, m.L);
    if (c.format == "json") {
        json j = {{"model", m.name}, {"n", c.n}, {"d", m.L.d()}};
        if (!conditions_only) j["derivation"] = to_json(der);
        j["conditions"] = to_json(cs);
        j["conditions_alternative"] = to_json(alt);
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    const std::string& f = c.format;
    std::string phi = f == "latex" ? "\\phi" : "phi";
    std::string cal = f == "latex" ? "\\mathcal{A}" : "cond";
    if (!conditions_only) {
        out << sub(phi, std::to_string(c.n), f) << (f == "latex" ? "(\\lambda)" : "(lambda)") << " = "
            << render(der.phi(), f) << "\n";
        for (std::size_t e = 0; e < der.extended.size(); ++e)
            out << sub("A", std::to_string(c.n + 1 + e), f) << " = " << render(der.extended[e], f) << "\n";
    }
    for (int s = m.L.d() - 1; s >= 0; --s)
        out << sub(cal, std::to_string(c.n) + "," + std::to_string(s), f) << " = " << render(cs.at_s(s), f) << "\n";
    for (int s = m.L.d() - 1; s >= 0; --s)
        out << sub(cal, std::to_string(c.n) + "," + std::to_string(s), f) << " (alternative) = "
            << render(alt.at_s(s), f) << "\n";
    return exit_ok;
}

int cmd_curve(const Config& c, std::ostream& out) {
    validate_format(c);
    Model m = make_model(c);
    SolitonDerivation der = derive_soliton(m.L, c.n, m.A0);
    CurveData cd = curve_data(m.L, der);
    if (c.format == "json") {
        json j = {{"model", m.name}, {"n", c.n}, {"d", m.L.d()}, {"curve", to_json(cd)}};
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    const std::string& f = c.format;
    out << "degree: " << cd.degree << "\n"
        << "genus: " << cd.genus << "\n"
        << "leading: " << (f == "latex" ? to_latex(cd.leading) : cd.leading.str()) << "\n"
        << "gap: " << (cd.gap_ok ? "ok" : "nonzero") << (cd.gap_guaranteed ? "" : " (not guaranteed)") << "\n";
    out << sub(f == "latex" ? "\\mathcal{H}" : "H", std::to_string(c.n), f) << (f == "latex" ? "(\\lambda)" : "(lambda)")
        << " = " << render(cd.H, f) << "\n";
    for (int p = cd.degree; p >= 0; --p) {
        DiffPoly co = cd.H.coeff(p);
        if (co.is_zero()) continue;
        out << "  [lambda^" << p << "] " << render(co, f) << "\n";
    }
    return exit_ok;
}

int cmd_hierarchy(const Config& c, std::ostream& out) {
    validate_format(c);
    if (c.sigma != 1 && c.sigma != -1) throw UsageError("--sigma must be 1 or -1");
    std::vector<ReducedCondition> rcs;
    if (c.model == "nls") {
        if (c.n < 0 || c.n > 2) throw UsageError("hierarchy reductions exist for n = 0, 1, 2");
        rcs = nls_reduce_conditions(c.n, c.sigma);
    } else if (c.model == "kdv") {
        if (c.n < 0) throw UsageError("--n must be non-negative");
        rcs = {kdv_condition(c.n)};
    } else {
        throw UsageError("hierarchy needs --model nls or kdv");
    }
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& rc : rcs) arr.push_back(to_json(rc));
        json j = {{"model", c.model}, {"n", c.n}, {"sigma", c.sigma}, {"conditions", arr}};
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    for (const auto& rc : rcs) {
        std::string rhs = rc.rhs.is_zero() ? "const (" + rc.constant_symbol + ")" : render(rc.rhs, c.format);
        out << rc.name << ": " << render(rc.lhs, c.format) << " = " << rhs << "\n";
    }
    return exit_ok;
}

std::vector<VerifyReport> verify_kdv(const Config& c) {
    if (!(c.kappa > 0)) throw UsageError("--kappa must be positive");
    if (c.grid_n < 5) throw UsageError("--grid-n must be at least 5");
    const double kappa = c.kappa;
    ProviderPtr prov = provider_kdv_soliton(kappa);
    OperatorSpec L = kdv_operator();
    GaussianRational k2(mpq_class(kappa * kappa));
    SolitonDerivation psi =
        linear_combination({GaussianRational(1), GaussianRational(-4) * k2}, {kdv_soliton(1), kdv_soliton(0)});
    LambdaPoly H = hamiltonian(L, psi.phi());
    Grid wide{-10.0 / kappa, 10.0 / kappa, c.grid_n};
    Grid abel{-4.0 / kappa, 4.0 / kappa, c.grid_n};

    std::vector<VerifyReport> reps;
    bool all = c.check == "all";
    if (all || c.check == "constancy") {
        double tol = c.tol > 0 ? c.tol : 1e-9;
        auto F = kdv_densities(1);
        reps.push_back(constancy_check("F1-4kappa^2F0", F[1] - GaussianRational(4) * k2 * F[0], *prov, wide,
                                       c.tol > 0 ? c.tol : 1e-10));
        for (int p = H.degree(); p >= 0; --p)
            reps.push_back(constancy_check("H(psi1)[lambda^" + std::to_string(p) + "]", H.coeff(p), *prov, wide, tol));
    }
    if (all || c.check == "curve") {
        auto pts = curve_points(psi.phi(), *prov, wide, c.perturb);
        reps.push_back(curve_membership(pts, H, *prov, c.tol > 0 ? c.tol : 1e-8));
    }
    if (all || c.check == "abel") {
        AbelOptions opt;
        if (c.branch_flip) opt.branch_sign = -1.0;
        reps.push_back(abel_sum_check(psi.phi(), *prov, 1, abel, c.tol > 0 ? c.tol : 1e-8, opt));
    }
    if (reps.empty()) throw UsageError("--check must be constancy, curve, abel or all");
    return reps;
}

std::vector<VerifyReport> verify_nls(const Config& c) {
    if (c.check != "all" && c.check != "constancy") throw UsageError("nls supports --check constancy or all");
    NlsParams p;
    p.sigma = c.sigma;
    if (c.solution == "plane_wave") {
        p.kind = NlsKind::plane_wave;
        p.C = c.C;
        p.k = c.k;
    } else if (c.solution == "bright" || c.solution == "bright_boosted") {
        if (c.sigma != 1) throw UsageError("bright soliton needs --sigma 1");
        if (!(c.omega > 0)) throw UsageError("--omega must be positive");
        p.kind = NlsKind::bright;
        p.omega = c.omega;
        p.velocity = c.solution == "bright" ? c.velocity : std::sqrt(2.0 * c.omega / 3.0);
    } else {
        throw UsageError("--solution must be plane_wave, bright or bright_boosted");
    }
    ProviderPtr prov = provider_nls(p);
    double tol = c.tol > 0 ? c.tol : 1e-8;
    double scale = p.kind == NlsKind::plane_wave ? std::max(std::abs(p.k), 0.1) : std::sqrt(2.0 * p.omega);
    Grid g{-10.0 / scale, 10.0 / scale, c.grid_n};

    const RingPtr& ef = nls_ef_ring();
    auto n1 = nls_reduce_conditions(1, c.sigma);
    auto n2 = nls_reduce_conditions(2, c.sigma);
    std::vector<VerifyReport> reps;
    if (p.kind == NlsKind::plane_wave) {
        reps.push_back(constancy_check("E", nls_to_q(DiffPoly::var(ef, "E"), c.sigma), *prov, g, tol));
        reps.push_back(constancy_check("F", nls_to_q(DiffPoly::var(ef, "F"), c.sigma), *prov, g, tol));
    }
    // the boosted profile only targets the third density; its phase flux is not constant
    bool boosted = c.solution == "bright_boosted";
    if (!boosted) reps.push_back(constancy_check("phase-flux", n1[1].lhs, *prov, g, tol));
    reps.push_back(constancy_check("third-density", n2[1].lhs, *prov, g, tol));
    if (!boosted) reps.push_back(constancy_check("stationary-NLS residual", n1[0].equation(), *prov, g, tol));
    return reps;
}

int cmd_verify(const Config& c, std::ostream& out) {
    if (c.format != "json" && c.format != "text") throw UsageError("verify supports --format json or text");
    std::vector<VerifyReport> reps;
    if (c.model == "kdv") reps = verify_kdv(c);
    else if (c.model == "nls") reps = verify_nls(c);
    else throw UsageError("verify needs --model kdv or nls");
    bool ok = std::all_of(reps.begin(), reps.end(), [](const VerifyReport& r) { return r.pass; });
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& r : reps) arr.push_back(to_json(r, c.details));
        out << json({{"model", c.model}, {"pass", ok}, {"reports", arr}}).dump(2) << "\n";
    } else {
        for (const auto& r : reps) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%-28s %s  deviation %.3e  tolerance %.3e", r.check.c_str(),
                          r.pass ? "PASS" : "FAIL", r.max_abs_deviation, r.tolerance);
            out << buf << (r.note.empty() ? "" : "  (" + r.note + ")") << "\n";
        }
    }
    return ok ? exit_ok : exit_check_failed;
}

json export_bundle(const std::string& model, int n) {
    json j;
    if (model == "kdv") {
        OperatorSpec L = kdv_operator();
        j["model"] = "kdv";
        j["ring"] = to_json(*kdv_ring());
        json F = json::array(), phi = json::array(), H = json::array();
        for (const auto& f : kdv_densities(n)) F.push_back(to_json(f));
        for (int m = 0; m <= n; ++m) {
            SolitonDerivation der = kdv_soliton(m);
            phi.push_back(to_json(der.phi()));
            H.push_back(to_json(hamiltonian(L, der.phi())));
        }
        j["densities"] = F;
        j["phi"] = phi;
        j["H"] = H;
    } else if (model == "nls") {
        OperatorSpec L = nls_operator();
        j["model"] = "nls";
        j["ring"] = to_json(*nls_ef_ring());
        json phi = json::array(), H = json::array();
        for (int m = 0; m <= n; ++m) {
            SolitonDerivation der = nls_soliton_table(m);
            phi.push_back(to_json(der.phi()));
            H.push_back(to_json(hamiltonian(L, der.phi())));
        }
        j["phi"] = phi;
        j["H"] = H;
    } else {
        throw UsageError("export needs --model kdv or nls");
    }
    return j;
}

int cmd_export(const Config& c, std::ostream& out, std::ostream& err) {
    if (c.n < 0) throw UsageError("--n must be non-negative");
    json bundle = export_bundle(c.model, c.n);
    if (!c.compare) {
        out << bundle.dump(2) << "\n";
        return exit_ok;
    }
    std::string path = fixtures_dir() + "/" + c.model + "_oracle.json";
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read fixture " + path);
    json golden = json::parse(in);
    RingPtr ring = ring_from_json(bundle["ring"]);
    bool ok = true;
    json report = json::array();
    for (const std::string key : {"densities", "phi", "H"}) {
        if (!bundle.contains(key) || !golden.contains(key)) continue;
        std::size_t cnt = std::min(bundle[key].size(), golden[key].size());
        for (std::size_t i = 0; i < cnt; ++i) {
            bool same;
            if (key == "densities")
                same = diffpoly_from_json(bundle[key][i], ring) == diffpoly_from_json(golden[key][i], ring);
            else
                same = lambdapoly_from_json(bundle[key][i], ring) == lambdapoly_from_json(golden[key][i], ring);
            ok = ok && same;
            report.push_back({{"item", key + "[" + std::to_string(i) + "]"}, {"match", same}});
        }
    }
    out << json({{"fixture", path}, {"match", ok}, {"items", report}}).dump(2) << "\n";
    if (!ok) err << "export: computed values differ from " << path << "\n";
    return ok ? exit_ok : exit_check_failed;
}

void add_common(CLI::App* sc, Config& c) {
    sc->add_option("--model", c.model, "kdv, nls or custom");
    sc->add_option("--n", c.n, "soliton degree");
    sc->add_option("--sigma", c.sigma, "NLS focusing sign (1 or -1)");
    sc->add_option("--A0", c.A0, "leading coefficient (rational), overrides the model preset");
    sc->add_option("--format", c.format, "json, latex or text");
    sc->add_option("--operator", c.operator_file, "JSON operator for --model custom");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Squared-eigenfunction soliton engine", "soliton"};
    app.require_subcommand(1);
    auto* derive = app.add_subcommand("derive", "soliton coefficients and conditions");
    auto* conds = app.add_subcommand("conditions", "solvability conditions in both forms");
    auto* curve = app.add_subcommand("curve", "hyperelliptic curve polynomial");
    auto* hier = app.add_subcommand("hierarchy", "reduced hierarchy equations and densities");
    auto* verify = app.add_subcommand("verify", "numeric checks on closed-form solutions");
    auto* exp = app.add_subcommand("export", "canonical JSON bundle, optionally compared to fixtures");
    for (auto* sc : {derive, conds, curve, hier, verify, exp}) add_common(sc, c);
    verify->add_option("--check", c.check, "constancy, curve, abel or all");
    verify->add_option("--solution", c.solution, "plane_wave, bright or bright_boosted (nls)");
    verify->add_option("--kappa", c.kappa, "KdV soliton parameter");
    verify->add_option("--C", c.C, "plane wave amplitude");
    verify->add_option("--k", c.k, "plane wave number");
    verify->add_option("--omega", c.omega, "bright soliton frequency");
    verify->add_option("--velocity", c.velocity, "bright soliton phase velocity");
    verify->add_option("--perturb", c.perturb, "shift added to every root (negative control)");
    verify->add_option("--tol", c.tol, "override tolerance");
    verify->add_option("--grid-n", c.grid_n, "grid points");
    verify->add_flag("--branch-flip", c.branch_flip, "use -Y as the branch (negative control)");
    verify->add_flag("--details", c.details, "include per-grid-point values");
    exp->add_flag("--compare", c.compare, "compare against the golden fixture directory");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (derive->parsed()) return cmd_derive(c, out, false);
        if (conds->parsed()) return cmd_derive(c, out, true);
        if (curve->parsed()) return cmd_curve(c, out);
        if (hier->parsed()) return cmd_hierarchy(c, out);
        if (verify->parsed()) return cmd_verify(c, out);
        if (exp->parsed()) return cmd_export(c, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const NotExact& e) {
        err << "not exact: no primitive for " << to_text(e.remainder) << "\n";
        return exit_not_exact;
    } catch (const ReductionError& e) {
        err << "reduction failed: " << e.what() << "\n";
        return exit_not_exact;
    } catch (const StructuralViolation& e) {
        err << "structural violation: " << e.what() << "\n";
        return exit_structural;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const json::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_structural;
    }
    return exit_usage;
}

} // namespace soliton
