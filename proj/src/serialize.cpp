#include "soliton/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace soliton {

// ---------------------------------------------------------------- JSON

json to_json(const GaussianRational& c) { return {{"re", rational_str(c.re())}, {"im", rational_str(c.im())}}; }

GaussianRational rational_from_json(const json& j) {
    return GaussianRational::parse(j.at("re").get<std::string>(), j.value("im", std::string("0")));
}

json to_json(const Ring& ring) {
    json vars = json::array();
    for (const auto& v : ring.vars())
        vars.push_back({{"name", v.name}, {"invertible", v.invertible}, {"constant", v.constant}});
    return {{"vars", vars}};
}

RingPtr ring_from_json(const json& j) {
    std::vector<VarSpec> vars;
    for (const auto& v : j.at("vars"))
        vars.push_back({v.at("name").get<std::string>(), v.value("invertible", false), v.value("constant", false)});
    return Ring::make(std::move(vars));
}

json to_json(const DiffPoly& p) {
    json terms = json::array();
    const Ring& ring = *p.ring();
    for (const auto& [m, c] : p.terms()) {
        json factors = json::array();
        for (const auto& [v, e] : m.factors())
            factors.push_back({{"var", ring.var(v.var).name}, {"order", v.order}, {"exp", e}});
        terms.push_back({{"coeff", to_json(c)}, {"factors", factors}});
    }
    return {{"terms", terms}};
}

DiffPoly diffpoly_from_json(const json& j, const RingPtr& ring) {
    DiffPoly p(ring);
    for (const auto& t : j.at("terms")) {
        std::vector<std::pair<JetVar, int>> f;
        for (const auto& x : t.at("factors"))
            f.emplace_back(JetVar{ring->index(x.at("var").get<std::string>()), x.at("order").get<int>()},
                           x.at("exp").get<int>());
        p.add_term(Monomial(f), rational_from_json(t.at("coeff")));
    }
    return p;
}

json to_json(const LambdaPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.descending()) coeffs.push_back(to_json(c));
    return {{"degree", p.degree()}, {"coeffs", coeffs}};
}

LambdaPoly lambdapoly_from_json(const json& j, const RingPtr& ring) {
    std::vector<DiffPoly> c;
    for (const auto& x : j.at("coeffs")) c.push_back(diffpoly_from_json(x, ring));
    return LambdaPoly::from_descending(ring, c);
}

json to_json(const SolitonDerivation& der) {
    json A = json::array(), ext = json::array(), consts = json::array();
    for (const auto& a : der.A) A.push_back(to_json(a));
    for (const auto& a : der.extended) ext.push_back(to_json(a));
    for (const auto& c : der.constants)
        consts.push_back({{"name", c.name}, {"index", c.index}, {"value", to_json(c.value)}});
    return {{"n", der.n},      {"d", der.d},          {"A0", to_json(der.A0)},    {"A", A},
            {"extended", ext}, {"constants", consts}, {"phi", to_json(der.phi())}};
}

json to_json(const ConditionSet& cs) {
    json r = json::array();
    const int d = static_cast<int>(cs.residuals.size());
    for (int k = 0; k < d; ++k) r.push_back({{"s", d - 1 - k}, {"residual", to_json(cs.residuals[k])}});
    return r;
}

json to_json(const CurveData& cd) {
    return {{"degree", cd.degree}, {"genus", cd.genus}, {"leading", to_json(cd.leading)},
            {"gap_ok", cd.gap_ok}, {"gap_guaranteed", cd.gap_guaranteed}, {"H", to_json(cd.H)}};
}

json to_json(const ReducedCondition& rc) {
    return {{"name", rc.name},
            {"condition", rc.condition},
            {"constant_symbol", rc.constant_symbol},
            {"scale", to_json(rc.scale)},
            {"lhs", to_json(rc.lhs)},
            {"rhs", to_json(rc.rhs)},
            {"latex", to_latex(rc.lhs) + " = " + (rc.rhs.is_zero() ? "\\text{const}" : to_latex(rc.rhs))},
            {"conserved", rc.conserved}};
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

namespace {
json num(double v) {
    if (!std::isfinite(v)) return std::to_string(v);
    return round12(v);
}
} // namespace

json to_json(const VerifyReport& rep, bool with_details) {
    json j = {{"check", rep.check},
              {"grid", {{"a", num(rep.grid.a)}, {"b", num(rep.grid.b)}, {"n", rep.grid.n}}},
              {"max_abs_deviation", num(rep.max_abs_deviation)},
              {"tolerance", num(rep.tolerance)},
              {"pass", rep.pass}};
    if (!rep.note.empty()) j["note"] = rep.note;
    json flagged = json::array();
    for (const auto& d : rep.details)
        if (d.flagged) flagged.push_back(num(d.x));
    if (!flagged.empty()) j["flagged_x"] = flagged;
    if (with_details) {
        json det = json::array();
        for (const auto& d : rep.details)
            det.push_back({{"x", num(d.x)},
                           {"re", num(d.value.real())},
                           {"im", num(d.value.imag())},
                           {"deviation", num(d.deviation)},
                           {"flagged", d.flagged}});
        j["details"] = det;
    }
    return j;
}

// ---------------------------------------------------------------- printing

namespace {

std::string latex_base(const std::string& name) {
    if (name == "qbar") return "\\bar{q}";
    if (name == "omega") return "{\\omega}";
    if (name == "Omega") return "{\\Omega}";
    if (name == "omega2") return "{\\omega_2}";
    if (name == "Omega2") return "{\\Omega_2}";
    if (name == "nu") return "{\\nu}";
    if (name == "kappa") return "{\\kappa}";
    if (name.size() == 2 && name[0] == 'E' && std::isdigit(static_cast<unsigned char>(name[1])))
        return std::string("E_{(") + name[1] + ")}";
    return name;
}

std::string exp_str(int e, bool latex) {
    std::string s = std::to_string(e);
    if (latex && s.size() > 1) return "^{" + s + "}";
    return "^" + s;
}

std::string factor_str(const std::string& name, int order, int e, bool latex) {
    std::string base = latex ? latex_base(name) : name;
    std::string jet = base;
    if (order > 0 && order <= 3) jet += std::string(order, '\'');
    else if (order > 3) jet += latex ? "^{(" + std::to_string(order) + ")}" : "[" + std::to_string(order) + "]";
    if (e == 1) return jet;
    if (latex && order > 0) return "(" + jet + ")" + exp_str(e, true);
    return jet + exp_str(e, latex);
}

std::string rational_latex(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

// magnitude string for a coefficient whose sign is emitted separately
std::string coeff_body(const GaussianRational& c, bool latex, bool bare_one) {
    auto rat = [&](const mpq_class& q) { return latex ? rational_latex(q) : rational_str(q); };
    if (c.is_real()) {
        mpq_class a = abs(c.re());
        if (a == 1 && bare_one) return "";
        return rat(a);
    }
    if (sgn(c.re()) == 0) {
        mpq_class b = abs(c.im());
        if (b == 1) return "i";
        return latex ? rat(b) + "i" : rat(b) + "*i";
    }
    // genuinely complex: parenthesized, sign carried inside
    std::string re = rat(c.re());
    std::string im = c.im() == 1 || c.im() == -1 ? "" : rat(abs(c.im())) + (latex ? "" : "*");
    return "(" + re + (sgn(c.im()) > 0 ? " + " : " - ") + im + "i)";
}

bool coeff_negative(const GaussianRational& c) {
    if (!c.is_real() && sgn(c.re()) != 0) return false;
    return c.is_real() ? sgn(c.re()) < 0 : sgn(c.im()) < 0;
}

// display order: jet orders sorted descending, compared lexicographically
// (higher first), then degree, then canonical order
std::vector<const std::pair<const Monomial, GaussianRational>*> display_order(const DiffPoly& p) {
    std::vector<const std::pair<const Monomial, GaussianRational>*> terms;
    for (const auto& t : p.terms()) terms.push_back(&t);
    const Ring& ring = *p.ring();
    auto key = [&](const Monomial& m) {
        std::vector<int> k;
        for (const auto& [v, e] : m.factors()) {
            if (ring.var(v.var).constant) continue;
            for (int r = 0; r < std::abs(e); ++r) k.push_back(v.order);
        }
        std::sort(k.rbegin(), k.rend());
        return k;
    };
    std::stable_sort(terms.begin(), terms.end(), [&](auto a, auto b) {
        auto ka = key(a->first), kb = key(b->first);
        if (ka != kb) return ka > kb;
        return a->first.degree() > b->first.degree();
    });
    return terms;
}

std::string monomial_str(const Ring& ring, const Monomial& m, bool latex) {
    std::string s;
    for (const auto& [v, e] : m.factors()) {
        if (!s.empty() && !latex) s += "*";
        s += factor_str(ring.var(v.var).name, v.order, e, latex);
    }
    return s;
}

// Joins terms; each is (negative, body).  Empty input gives "0".
std::string join_terms(const std::vector<std::pair<bool, std::string>>& parts) {
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k == 0) s += parts[k].first ? "-" : "";
        else s += parts[k].first ? " - " : " + ";
        s += parts[k].second;
    }
    return s;
}

std::vector<std::pair<bool, std::string>> term_parts(const DiffPoly& p, bool latex, const std::string& suffix) {
    std::vector<std::pair<bool, std::string>> parts;
    const Ring& ring = *p.ring();
    for (auto t : display_order(p)) {
        const Monomial& m = t->first;
        const GaussianRational& c = t->second;
        std::string mono = monomial_str(ring, m, latex) + suffix;
        std::string body = coeff_body(c, latex, !mono.empty());
        if (!latex && !body.empty() && !mono.empty()) body += "*";
        parts.emplace_back(coeff_negative(c), body + mono);
    }
    return parts;
}

std::string lambda_power(int p, bool latex) {
    if (p == 0) return "";
    std::string l = latex ? "\\lambda" : "lambda";
    return p == 1 ? l : l + exp_str(p, latex);
}

std::string lambda_str(const LambdaPoly& p, bool latex) {
    std::vector<std::pair<bool, std::string>> parts;
    for (int j = p.degree(); j >= 0; --j) {
        const DiffPoly c = p.coeff(j);
        if (c.is_zero()) continue;
        std::string lp = lambda_power(j, latex);
        if (j == 0 || c.size() == 1) {
            std::string suffix = lp.empty() ? "" : (latex || c.terms().begin()->first.is_one() ? "" : "*") + lp;
            for (auto& part : term_parts(c, latex, suffix)) parts.push_back(part);
            continue;
        }
        parts.emplace_back(false, "(" + join_terms(term_parts(c, latex, "")) + ")" + (latex ? "" : "*") + lp);
    }
    return join_terms(parts);
}

} // namespace

std::string to_latex(const GaussianRational& c) {
    std::string b = coeff_body(c, true, false);
    return (coeff_negative(c) ? "-" : "") + b;
}

std::string to_latex(const DiffPoly& p) { return join_terms(term_parts(p, true, "")); }
std::string to_latex(const LambdaPoly& p) { return lambda_str(p, true); }
std::string to_text(const DiffPoly& p) { return join_terms(term_parts(p, false, "")); }
std::string to_text(const LambdaPoly& p) { return lambda_str(p, false); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(const std::string& s, RingPtr ring, bool allow_lambda)
        : s_(s), ring_(std::move(ring)), allow_lambda_(allow_lambda) {}

    LambdaPoly run() {
        LambdaPoly v = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse error at " + std::to_string(pos_) + " in '" + s_ + "': " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    LambdaPoly constant(const GaussianRational& c) const { return LambdaPoly(DiffPoly(ring_, c)); }

    static std::optional<GaussianRational> as_number(const LambdaPoly& v) {
        if (v.degree() != 0) return std::nullopt;
        const DiffPoly c = v.coeff(0);
        if (!c.is_constant()) return std::nullopt;
        return c.constant_term();
    }

    LambdaPoly sum() {
        LambdaPoly acc(ring_);
        bool first = true;
        while (true) {
            bool neg = false;
            if (eat('-')) neg = true;
            else if (!eat('+') && !first) break;
            LambdaPoly t = term();
            acc += neg ? -t : t;
            first = false;
        }
        return acc;
    }

    LambdaPoly term() {
        LambdaPoly acc = factor();
        while (true) {
            if (eat('*')) acc = acc * factor();
            else if (eat('/')) {
                auto d = as_number(factor());
                if (!d || d->is_zero()) fail("division only by nonzero numbers");
                acc = d->inverse() * acc;
            } else break;
        }
        return acc;
    }

    int integer() {
        skip();
        bool paren = eat('(');
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        int v = std::stoi(s_.substr(start, pos_ - start));
        if (paren && !eat(')')) fail("expected ')'");
        return neg ? -v : v;
    }

    LambdaPoly factor() {
        LambdaPoly base = primary();
        if (!eat('^')) return base;
        int e = integer();
        if (e >= 0) {
            LambdaPoly r = constant(GaussianRational(1));
            for (int k = 0; k < e; ++k) r = r * base;
            return r;
        }
        if (auto n = as_number(base)) {
            if (n->is_zero()) fail("zero to a negative power");
            GaussianRational inv = n->inverse(), r(1);
            for (int k = 0; k < -e; ++k) r *= inv;
            return constant(r);
        }
        const DiffPoly b0 = base.coeff(0);
        if (base.degree() == 0 && b0.size() == 1) {
            const auto& [m, c] = *b0.terms().begin();
            if (c.is_one()) return LambdaPoly(DiffPoly::monomial(ring_, m.pow(e), GaussianRational(1)));
        }
        fail("negative exponent needs a bare invertible symbol");
    }

    LambdaPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LambdaPoly v = sum();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return constant(GaussianRational(mpq_class(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (ring_->find(name) < 0) {
                if (name == "i") return constant(GaussianRational::i());
                if (name == "lambda" && allow_lambda_) return LambdaPoly::lambda(ring_);
                fail("unknown symbol '" + name + "'");
            }
            int order = 0;
            while (pos_ < s_.size() && s_[pos_] == '\'') {
                ++order;
                ++pos_;
            }
            if (order == 0 && pos_ < s_.size() && s_[pos_] == '[') {
                ++pos_;
                order = integer();
                if (!eat(']')) fail("expected ']'");
            }
            return LambdaPoly(DiffPoly::var(ring_, name, order));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    RingPtr ring_;
    bool allow_lambda_;
    std::size_t pos_ = 0;
};

} // namespace

DiffPoly parse_diffpoly(const std::string& text, const RingPtr& ring) {
    LambdaPoly v = Parser(text, ring, false).run();
    return v.coeff(0);
}

LambdaPoly parse_lambdapoly(const std::string& text, const RingPtr& ring) { return Parser(text, ring, true).run(); }

} // namespace soliton
