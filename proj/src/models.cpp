#include "soliton/models.hpp"

#include <map>

namespace soliton {

namespace {

GaussianRational pow4(int n) {
    mpq_class s = 1;
    for (int e = 0; e < n; ++e) s *= 4;
    return GaussianRational(s);
}

const GaussianRational I = GaussianRational::i();

DiffPoly jet(const RingPtr& r, const std::string& name, int order = 0, int exp = 1) {
    return DiffPoly::var(r, name, order, exp);
}

} // namespace

// ---------------------------------------------------------------- KdV

RingPtr kdv_ring() {
    static const RingPtr ring = Ring::make({{"q"}});
    return ring;
}

OperatorSpec kdv_operator() {
    const RingPtr& r = kdv_ring();
    return OperatorSpec({DiffPoly(r, GaussianRational(1)), -jet(r, "q")});
}

GaussianRational kdv_A0(int n) { return pow4(n) * GaussianRational::frac(1, 2); }

SolitonDerivation kdv_soliton(int n) { return derive_soliton(kdv_operator(), n, kdv_A0(n)); }

DiffPoly kdv_M(const DiffPoly& phi) {
    const RingPtr& r = phi.ring();
    DiffPoly q = jet(r, "q");
    return D(phi, 3) + GaussianRational(4) * q * D(phi) + GaussianRational(2) * D(q) * phi;
}

std::vector<DiffPoly> kdv_densities(int n) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    std::vector<DiffPoly> F;
    DiffPoly prev(kdv_ring(), GaussianRational::frac(1, 2));
    for (int j = 0; j <= n; ++j) {
        prev = integrate_exact(kdv_M(prev));
        F.push_back(prev);
    }
    return F;
}

ReducedCondition kdv_condition(int n) {
    SolitonDerivation der = kdv_soliton(n);
    OperatorSpec L = kdv_operator();
    DiffPoly Fn = GaussianRational(4) * der.coeff(n + 1);
    ReducedCondition rc{"kdv-density-" + std::to_string(n), "A", Fn, DiffPoly(kdv_ring()), "F_" + std::to_string(n),
                        Fn, GaussianRational(1), Fn, {}};
    // integrating the single residual once gives exactly F_n
    rc.conserved = D(Fn) == conditions(der, L).at_s(0);
    return rc;
}

// ---------------------------------------------------------------- NLS

RingPtr nls_ef_ring() {
    static const RingPtr ring = Ring::make({{"E"}, {"F"}});
    return ring;
}

OperatorSpec nls_operator() {
    const RingPtr& r = nls_ef_ring();
    return OperatorSpec({DiffPoly(r, GaussianRational(-1)), jet(r, "E"), jet(r, "F")});
}

SolitonDerivation nls_soliton_table(int n) { return derive_soliton(nls_operator(), n, GaussianRational(2)); }

RingPtr nls_q_ring() {
    static const RingPtr ring = Ring::make({{"q", true},
                                            {"qbar", true},
                                            {"k", false, true},
                                            {"nu", false, true},
                                            {"omega", false, true},
                                            {"Omega", false, true},
                                            {"omega2", false, true},
                                            {"Omega2", false, true}});
    return ring;
}

SubstitutionMap nls_substitution(int sigma) {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
    const RingPtr& r = nls_q_ring();
    DiffPoly E = I * jet(r, "q", 1) * jet(r, "q", 0, -1);
    DiffPoly F = GaussianRational::frac(-1, 4) * E * E -
                 GaussianRational(sigma) * jet(r, "q") * jet(r, "qbar") +
                 GaussianRational::frac(0, 1, 1, 2) * D(E);
    return {{"E", E}, {"F", F}};
}

DiffPoly nls_to_q(const DiffPoly& ef, int sigma) { return substitute(ef, nls_substitution(sigma), nls_q_ring()); }

DiffPoly nls_conjugate(const DiffPoly& p) {
    const RingPtr& r = p.ring();
    static const std::map<std::string, int> parity = {{"k", 1},     {"nu", 1},      {"omega", 1},
                                                      {"Omega", -1}, {"omega2", -1}, {"Omega2", 1}};
    std::map<std::string, std::string> swap = {{"q", "qbar"}, {"qbar", "q"}};
    DiffPoly out(r);
    for (const auto& [m, c] : p.terms()) {
        GaussianRational coeff = c.conj();
        std::vector<std::pair<JetVar, int>> f;
        for (const auto& [v, e] : m.factors()) {
            const std::string& name = r->var(v.var).name;
            auto s = swap.find(name);
            if (s != swap.end()) {
                f.emplace_back(JetVar{r->index(s->second), v.order}, e);
                continue;
            }
            auto par = parity.find(name);
            if (par == parity.end()) throw std::invalid_argument("no conjugation rule for '" + name + "'");
            if (par->second < 0 && (e % 2)) coeff = -coeff;
            f.emplace_back(v, e);
        }
        out.add_term(Monomial(f), coeff);
    }
    return out;
}

RingPtr e_calculus_ring() {
    static const RingPtr ring = Ring::make({{"E"}, {"E2"}, {"E3"}, {"E4"}});
    return ring;
}

std::vector<IdentityReport> e_calculus_check() {
    const RingPtr& e = e_calculus_ring();
    const RingPtr& r = nls_q_ring();
    SubstitutionMap m;
    m.emplace("E", I * jet(r, "q", 1) * jet(r, "q", 0, -1));
    for (int k = 2; k <= 4; ++k) m.emplace("E" + std::to_string(k), I * jet(r, "q", k) * jet(r, "q", 0, -1));
    DiffPoly E = jet(e, "E"), E2 = jet(e, "E2"), E3 = jet(e, "E3"), E4 = jet(e, "E4");
    auto gr = [](long a, long b = 0) { return GaussianRational(mpq_class(a), mpq_class(b)); };

    std::vector<std::pair<std::string, std::pair<DiffPoly, DiffPoly>>> ids = {
        {"E' = E_(2) + iE^2", {D(E), E2 + I * E * E}},
        {"E'' = E_(3) + 3iE_(2)E - 2E^3", {D(E, 2), E3 + gr(0, 3) * E2 * E - gr(2) * E.pow(3)}},
        {"E''' = E_(4) + 4iE_(3)E - 12E^2E_(2) - 6iE^4 + 3iE_(2)^2",
         {D(E, 3), E4 + gr(0, 4) * E3 * E - gr(12) * E * E * E2 - gr(0, 6) * E.pow(4) + gr(0, 3) * E2 * E2}},
        {"E_(2)' = E_(3) + iE_(2)E", {D(E2), E3 + I * E2 * E}},
        {"E_(3)' = E_(4) + iE_(3)E", {D(E3), E4 + I * E3 * E}},
    };
    std::vector<IdentityReport> out;
    for (const auto& [name, sides] : ids) {
        DiffPoly l = substitute(sides.first, m, r);
        DiffPoly rr = substitute(sides.second, m, r);
        out.push_back({name, l == rr, l, rr});
    }
    return out;
}

RewriteRule rule_from_equation(const DiffPoly& eq, const std::string& base) {
    const RingPtr& r = eq.ring();
    int v = r->index(base);
    int top = eq.max_order(v);
    if (top < 0) throw ReductionError("equation does not contain '" + base + "'");
    JetVar target{v, top};
    Monomial lone({{target, 1}});
    GaussianRational c;
    for (const auto& [m, coeff] : eq.terms()) {
        if (m.exponent(target) == 0) continue;
        if (!(m == lone)) throw ReductionError("highest jet of '" + base + "' does not occur linearly");
        c = coeff;
    }
    DiffPoly rest = eq - DiffPoly::monomial(r, lone, c);
    return {target, GaussianRational(-1) / c * rest};
}

namespace {

DiffPoly divide_common_monomial(const DiffPoly& p) {
    if (p.is_zero()) return p;
    std::map<JetVar, int> g;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::map<JetVar, int> cur(m.factors().begin(), m.factors().end());
        if (first) {
            g = cur;
            first = false;
            continue;
        }
        for (auto it = g.begin(); it != g.end();) {
            auto f = cur.find(it->first);
            if (f == cur.end()) {
                it = g.erase(it);
                continue;
            }
            it->second = std::min(it->second, f->second);
            ++it;
        }
    }
    std::vector<std::pair<JetVar, int>> inv;
    for (const auto& [v, e] : g)
        if (e > 0) inv.emplace_back(v, -e);
    Monomial ginv(inv);
    DiffPoly out(p.ring());
    for (const auto& [m, c] : p.terms()) out.add_term(m * ginv, c);
    return out;
}

DiffPoly clear_denominators(const DiffPoly& p) {
    std::map<JetVar, int> need;
    for (const auto& [m, c] : p.terms())
        for (const auto& [v, e] : m.factors())
            if (e < 0) need[v] = std::max(need[v], -e);
    std::vector<std::pair<JetVar, int>> f(need.begin(), need.end());
    DiffPoly out(p.ring());
    Monomial mult(f);
    for (const auto& [m, c] : p.terms()) out.add_term(m * mult, c);
    return out;
}

struct ReductionSpec {
    std::string name;
    std::string condition;
    GaussianRational scale;
    std::string symbol;
    std::vector<std::pair<JetVar, int>> norm; // monomial fixing the normalization
    GaussianRational norm_coeff;
};

bool conserved_modulo(const DiffPoly& eq, const std::vector<RewriteRule>& rules) {
    std::vector<RewriteRule> all = rules;
    const RingPtr& r = eq.ring();
    for (const auto& rule : rules) {
        const std::string& name = r->var(rule.target.var).name;
        std::string other = name == "q" ? "qbar" : "q";
        all.push_back({JetVar{r->index(other), rule.target.order}, nls_conjugate(rule.replacement)});
    }
    return reduce_modulo(D(eq), all).is_zero();
}

ReducedCondition reduce_one(const ReductionSpec& spec, const DiffPoly& integrated, int sigma,
                            const std::vector<RewriteRule>& rules) {
    const RingPtr& r = nls_q_ring();
    DiffPoly sym = jet(r, spec.symbol);
    DiffPoly raw = clear_denominators(nls_to_q(integrated, sigma) - spec.scale * sym);
    DiffPoly red = divide_common_monomial(reduce_modulo(raw, rules));

    int sv = r->index(spec.symbol);
    DiffPoly lhs(r), rhs(r);
    for (const auto& [m, c] : red.terms()) {
        bool has_sym = false;
        for (const auto& [v, e] : m.factors()) has_sym |= v.var == sv;
        if (has_sym) rhs.add_term(m, -c);
        else lhs.add_term(m, c);
    }
    GaussianRational have = lhs.coeff(Monomial(spec.norm));
    if (have.is_zero())
        throw ReductionError(spec.name + ": normalizing monomial missing after reduction");
    GaussianRational f = spec.norm_coeff / have;
    ReducedCondition rc{spec.name, spec.condition, f * lhs, f * rhs, spec.symbol, integrated, spec.scale, raw, rules};
    return rc;
}

} // namespace

std::vector<ReducedCondition> nls_reduce_conditions(int n, int sigma) {
    if (n < 0 || n > 2) throw std::invalid_argument("NLS reductions are available for n = 0, 1, 2");
    const RingPtr& r = nls_q_ring();
    SolitonDerivation der = nls_soliton_table(n);
    const RingPtr& ef = nls_ef_ring();
    DiffPoly E = jet(ef, "E");
    DiffPoly IA = GaussianRational(-4) * der.coeff(n + 1);
    DiffPoly IB = GaussianRational(-4) * der.coeff(n + 2) + GaussianRational(2) * der.coeff(n + 1) * E;

    const int q = r->index("q"), qb = r->index("qbar");
    auto jv = [](int v, int o) { return JetVar{v, o}; };
    ReductionSpec a, b;
    switch (n) {
    case 0:
        a = {"zeroth-hierarchy", "A", GaussianRational(-4), "k", {{jv(q, 1), 1}}, GaussianRational(1)};
        b = {"first-density", "B", GaussianRational(4 * sigma), "nu", {{jv(q, 0), 1}, {jv(qb, 0), 1}},
             GaussianRational(1)};
        break;
    case 1:
        a = {"stationary-NLS", "A", GaussianRational(4), "omega", {{jv(q, 2), 1}}, GaussianRational::frac(1, 2)};
        b = {"phase-flux", "B", I, "Omega", {{jv(q, 1), 1}, {jv(qb, 0), 1}}, GaussianRational(1)};
        break;
    default:
        a = {"mKdV", "A", I, "omega2", {{jv(q, 3), 1}}, GaussianRational(1)};
        b = {"third-density", "B", GaussianRational(1), "Omega2", {{jv(q, 1), 1}, {jv(qb, 1), 1}},
             GaussianRational::frac(1, 3)};
        break;
    }
    ReducedCondition ca = reduce_one(a, IA, sigma, {});
    RewriteRule rule = rule_from_equation(ca.equation(), "q");
    ca.conserved = conserved_modulo(ca.equation(), {rule});
    ReducedCondition cb = reduce_one(b, IB, sigma, {rule});
    cb.conserved = conserved_modulo(cb.equation(), {rule});
    return {ca, cb};
}

std::vector<IdentityReport> nls_curve_check(int n) {
    const RingPtr& r = nls_ef_ring();
    OperatorSpec L = nls_operator();
    SolitonDerivation der = nls_soliton_table(n);
    LambdaPoly H = hamiltonian(L, der.phi());
    DiffPoly An1 = der.coeff(n + 1);
    DiffPoly Bn = D(der.A[n], 3) - GaussianRational(2) * bracket(L.L(2), der.A[n]);

    std::vector<IdentityReport> out;
    DiffPoly eight(r, GaussianRational(8));
    out.push_back({"leading 8 lambda^(2n+2)", H.coeff(2 * n + 2) == eight && H.degree() == 2 * n + 2,
                   H.coeff(2 * n + 2), eight});
    bool gap = true;
    for (int p = n + 2; p <= 2 * n + 1; ++p) gap = gap && H.coeff(p).is_zero();
    out.push_back({"gap lambda^(n+2)..lambda^(2n+1)", gap, DiffPoly(r), DiffPoly(r)});
    DiffPoly top = GaussianRational(-8) * An1;
    out.push_back({"lambda^(n+1) coefficient -8 A_{n+1}", H.coeff(n + 1) == top, H.coeff(n + 1), top});
    for (int i = 1; i <= n; ++i) {
        DiffPoly lhs = D(H.coeff(n + 1 - i));
        DiffPoly rhs = GaussianRational(-4) * der.A[i] * D(An1) + der.A[i - 1] * Bn;
        out.push_back({"D lambda^(n+1-" + std::to_string(i) + ") coefficient", lhs == rhs, lhs, rhs});
    }
    DiffPoly lhs0 = D(H.coeff(0));
    DiffPoly rhs0 = der.A[n] * Bn;
    out.push_back({"D lambda^0 coefficient A_n B_n", lhs0 == rhs0, lhs0, rhs0});
    return out;
}

} // namespace soliton
