#include "soliton/diffring.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace soliton {

// ---------------------------------------------------------------- Ring

RingPtr Ring::make(std::vector<VarSpec> vars) {
    std::sort(vars.begin(), vars.end(), [](const VarSpec& a, const VarSpec& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].name.empty()) throw std::invalid_argument("empty variable name");
        if (i > 0 && vars[i].name == vars[i - 1].name)
            throw std::invalid_argument("duplicate variable name '" + vars[i].name + "'");
    }
    return RingPtr(new Ring(std::move(vars)));
}

int Ring::find(const std::string& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name,
                               [](const VarSpec& v, const std::string& n) { return v.name < n; });
    if (it == vars_.end() || it->name != name) return -1;
    return static_cast<int>(it - vars_.begin());
}

int Ring::index(const std::string& name) const {
    int i = find(name);
    if (i < 0) throw std::invalid_argument("unknown variable '" + name + "' in ring " + describe());
    return i;
}

bool Ring::same_as(const Ring& o) const {
    if (this == &o) return true;
    if (vars_.size() != o.vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const auto& a = vars_[i];
        const auto& b = o.vars_[i];
        if (a.name != b.name || a.invertible != b.invertible || a.constant != b.constant) return false;
    }
    return true;
}

std::string Ring::describe() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) os << ",";
        os << vars_[i].name;
        if (vars_[i].invertible) os << "*";
        if (vars_[i].constant) os << "#";
    }
    os << "}";
    return os.str();
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::pair<JetVar, int>> factors) {
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [v, e] : factors) {
        if (!f_.empty() && f_.back().first == v) f_.back().second += e;
        else f_.emplace_back(v, e);
        if (f_.back().second == 0) f_.pop_back();
    }
}

int Monomial::exponent(JetVar v) const {
    for (const auto& [w, e] : f_)
        if (w == v) return e;
    return 0;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& f : f_) d += f.second;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<std::pair<JetVar, int>> out;
    out.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() || j < o.f_.size()) {
        if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) out.push_back(f_[i++]);
        else if (i == f_.size() || o.f_[j].first < f_[i].first) out.push_back(o.f_[j++]);
        else {
            int e = f_[i].second + o.f_[j].second;
            if (e != 0) out.emplace_back(f_[i].first, e);
            ++i;
            ++j;
        }
    }
    Monomial m;
    m.f_ = std::move(out);
    return m;
}

Monomial Monomial::pow(int e) const {
    if (e == 0) return {};
    Monomial m = *this;
    for (auto& f : m.f_) f.second *= e;
    return m;
}

Monomial Monomial::without(JetVar v) const {
    Monomial m;
    for (const auto& f : f_)
        if (!(f.first == v)) m.f_.push_back(f);
    return m;
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(RingPtr ring, const GaussianRational& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

DiffPoly DiffPoly::var(RingPtr ring, const std::string& name, int order, int exp) {
    int idx = ring->index(name);
    DiffPoly p(ring);
    p.add_term(Monomial({{JetVar{idx, order}, exp}}), GaussianRational(1));
    return p;
}

DiffPoly DiffPoly::monomial(RingPtr ring, const Monomial& m, const GaussianRational& c) {
    DiffPoly p(std::move(ring));
    p.add_term(m, c);
    return p;
}

void DiffPoly::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    for (const auto& [v, e] : m.factors()) {
        if (v.var < 0 || v.var >= ring_->size()) throw std::out_of_range("jet variable outside ring");
        const VarSpec& spec = ring_->var(v.var);
        if (v.order < 0) throw std::invalid_argument("negative jet order");
        if (spec.constant && v.order > 0)
            throw std::invalid_argument("constant symbol '" + spec.name + "' has no jets");
        if (e < 0 && !(spec.invertible && v.order == 0))
            throw std::invalid_argument("negative exponent on non-invertible jet of '" + spec.name + "'");
    }
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool DiffPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool DiffPoly::is_x_independent() const {
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors())
            if (!ring_->var(v.var).constant) return false;
    return true;
}

GaussianRational DiffPoly::constant_term() const { return coeff(Monomial{}); }

GaussianRational DiffPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

int DiffPoly::max_order(int var) const {
    int best = -1;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors())
            if (v.var == var) best = std::max(best, v.order);
    return best;
}

bool DiffPoly::has_negative_exponent() const {
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors())
            if (f.second < 0) return true;
    return false;
}

void DiffPoly::check_ring(const DiffPoly& o) const {
    if (!ring_->same_as(*o.ring_))
        throw RingMismatch("ring mismatch: " + ring_->describe() + " vs " + o.ring_->describe());
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(m, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

DiffPoly& DiffPoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    a.check_ring(b);
    DiffPoly out(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            GaussianRational c = ca * cb;
            auto [it, inserted] = out.terms_.emplace(ma * mb, c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    return out;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
    return a.ring_->same_as(*b.ring_) && a.terms_ == b.terms_;
}

DiffPoly DiffPoly::pow(unsigned e) const {
    DiffPoly result(ring_, GaussianRational(1));
    DiffPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

DiffPoly add(const DiffPoly& a, const DiffPoly& b) { return a + b; }
DiffPoly mul(const DiffPoly& a, const DiffPoly& b) { return a * b; }

// ---------------------------------------------------------------- derivation

DiffPoly total_derivative(const DiffPoly& p) {
    DiffPoly out(p.ring());
    const Ring& ring = *p.ring();
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.factors()) {
            if (ring.var(v.var).constant) continue;
            Monomial dm = m * Monomial({{v, -1}, {JetVar{v.var, v.order + 1}, 1}});
            out.add_term(dm, c * GaussianRational(e));
        }
    }
    return out;
}

DiffPoly total_derivative(const DiffPoly& p, int times) {
    if (times < 0) throw std::invalid_argument("negative derivative count");
    DiffPoly r = p;
    for (int k = 0; k < times; ++k) r = total_derivative(r);
    return r;
}

DiffPoly bracket(const DiffPoly& psi, const DiffPoly& phi) {
    return D(psi) * phi + GaussianRational(2) * (psi * D(phi));
}

// ---------------------------------------------------------------- linear algebra

bool solve_linear(std::vector<std::vector<GaussianRational>> a, std::vector<GaussianRational> b,
                  std::vector<GaussianRational>& x) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : x.size();
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        GaussianRational inv = a[r][c].inverse();
        for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            GaussianRational f = a[i][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return false;
    x.assign(cols, GaussianRational(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return true;
}

// ---------------------------------------------------------------- integration
//
// D preserves the constant-symbol part and the degree in each base symbol and
// raises the order sum by one, so each graded piece of the integrand is
// integrated against every monomial one grade lower.  On such a piece D is
// injective (kernel = constants), hence the primitive is unique.

NotExact::NotExact(DiffPoly rem)
    : std::runtime_error("integrand is not an exact derivative (" + std::to_string(rem.size()) +
                         " unintegrable terms)"),
      remainder(std::move(rem)) {}

namespace {

struct Grade {
    Monomial constant_part;
    std::vector<int> degree;
    int order_sum = 0;
    auto operator<=>(const Grade&) const = default;
};

Grade grade_of(const Ring& ring, const Monomial& m) {
    Grade g;
    g.degree.assign(ring.size(), 0);
    std::vector<std::pair<JetVar, int>> cp;
    for (const auto& [v, e] : m.factors()) {
        if (ring.var(v.var).constant) {
            cp.emplace_back(v, e);
            continue;
        }
        g.degree[v.var] += e;
        g.order_sum += v.order * e;
    }
    g.constant_part = Monomial(cp);
    return g;
}

// Monomials (without the constant part) with the given degrees and order sum.
// An invertible symbol may appear with any number of positive-order jets, its
// order-zero exponent absorbing the rest of the degree.
std::vector<Monomial> graded_monomials(const Ring& ring, const std::vector<int>& degree, int order_sum) {
    std::vector<int> vars;
    for (std::size_t v = 0; v < degree.size(); ++v)
        if (degree[v] != 0 || ring.var(static_cast<int>(v)).invertible) vars.push_back(static_cast<int>(v));
    std::vector<Monomial> out;
    std::vector<std::pair<JetVar, int>> cur;

    // distribute the order budget over the vars; within a var, choose a
    // non-decreasing sequence of positive orders
    std::function<void(std::size_t, int)> per_var;
    std::function<void(std::size_t, int, int, int)> orders;
    orders = [&](std::size_t vi, int used, int lo, int budget) {
        int v = vars[vi];
        int rest = degree[v] - used;
        if (rest >= 0 || ring.var(v).invertible) {
            if (rest != 0) cur.emplace_back(JetVar{v, 0}, rest);
            per_var(vi + 1, budget);
            if (rest != 0) cur.pop_back();
        }
        if (!ring.var(v).invertible && rest <= 0) return;
        for (int o = lo; o <= budget; ++o) {
            cur.emplace_back(JetVar{v, o}, 1);
            orders(vi, used + 1, o, budget - o);
            cur.pop_back();
        }
    };
    per_var = [&](std::size_t vi, int budget) {
        if (vi == vars.size()) {
            if (budget == 0) out.emplace_back(cur);
            return;
        }
        orders(vi, 0, 1, budget);
    };
    per_var(0, order_sum);
    return out;
}

} // namespace

IntegrationResult try_integrate(const DiffPoly& p) {
    const RingPtr& ring = p.ring();
    std::map<Grade, DiffPoly> pieces;
    for (const auto& [m, c] : p.terms()) {
        Grade g = grade_of(*ring, m);
        auto it = pieces.try_emplace(g, ring).first;
        it->second.add_term(m, c);
    }

    IntegrationResult res{true, DiffPoly(ring), DiffPoly(ring)};
    for (const auto& [g, piece] : pieces) {
        if (g.order_sum == 0) {
            res.exact = false;
            res.remainder += piece;
            continue;
        }
        std::vector<Monomial> cand = graded_monomials(*ring, g.degree, g.order_sum - 1);
        std::vector<DiffPoly> images;
        std::map<Monomial, std::size_t> row_of;
        for (const auto& [m, c] : piece.terms()) row_of.emplace(m, row_of.size());
        for (auto& m : cand) {
            m = m * g.constant_part;
            images.push_back(D(DiffPoly::monomial(ring, m, GaussianRational(1))));
            for (const auto& [im, ic] : images.back().terms()) row_of.emplace(im, row_of.size());
        }
        std::vector<std::vector<GaussianRational>> a(row_of.size(),
                                                     std::vector<GaussianRational>(cand.size()));
        std::vector<GaussianRational> b(row_of.size());
        for (std::size_t j = 0; j < cand.size(); ++j)
            for (const auto& [im, ic] : images[j].terms()) a[row_of[im]][j] = ic;
        for (const auto& [m, c] : piece.terms()) b[row_of[m]] = c;
        std::vector<GaussianRational> x(cand.size());
        if (cand.empty() || !solve_linear(std::move(a), std::move(b), x)) {
            res.exact = false;
            res.remainder += piece;
            continue;
        }
        for (std::size_t j = 0; j < cand.size(); ++j) res.primitive.add_term(cand[j], x[j]);
    }
    return res;
}

DiffPoly integrate_exact(const DiffPoly& p) {
    IntegrationResult r = try_integrate(p);
    if (!r.exact) throw NotExact(r.remainder);
    return r.primitive;
}

// ---------------------------------------------------------------- substitution

DiffPoly substitute(const DiffPoly& p, const SubstitutionMap& images, const RingPtr& target) {
    const Ring& src = *p.ring();
    for (const auto& [name, img] : images) {
        if (src.find(name) < 0) throw std::invalid_argument("substitution for unknown variable '" + name + "'");
        if (!img.ring()->same_as(*target)) throw RingMismatch("substitution image lives in a different ring");
    }
    std::map<JetVar, DiffPoly> jet_image;
    auto image_of = [&](JetVar v) -> const DiffPoly& {
        auto it = jet_image.find(v);
        if (it != jet_image.end()) return it->second;
        const std::string& name = src.var(v.var).name;
        auto mapped = images.find(name);
        DiffPoly img(target);
        if (mapped == images.end()) {
            int t = target->find(name);
            if (t < 0) throw std::invalid_argument("variable '" + name + "' has no image in target ring");
            img = DiffPoly::var(target, name, v.order);
        } else {
            img = mapped->second;
            img = D(img, v.order);
        }
        return jet_image.emplace(v, std::move(img)).first->second;
    };

    DiffPoly out(target);
    for (const auto& [m, c] : p.terms()) {
        DiffPoly term(target, c);
        for (const auto& [v, e] : m.factors()) {
            const DiffPoly& img = image_of(v);
            if (e >= 0) {
                term = term * img.pow(static_cast<unsigned>(e));
                continue;
            }
            if (img.size() != 1)
                throw std::invalid_argument("substitution requires inverting a non-monomial image of '" +
                                            src.var(v.var).name + "'");
            const auto& [im, ic] = *img.terms().begin();
            for (const auto& [w, we] : im.factors())
                if (!target->var(w.var).invertible || w.order != 0)
                    throw std::invalid_argument("substitution requires inverting non-invertible '" +
                                                target->var(w.var).name + "'");
            DiffPoly inv = DiffPoly::monomial(target, im.pow(-1), ic.inverse());
            term = term * inv.pow(static_cast<unsigned>(-e));
        }
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------- reduction

namespace {

class Reducer {
public:
    Reducer(const RingPtr& ring, const std::vector<RewriteRule>& rules, int max_passes)
        : ring_(ring), max_passes_(max_passes) {
        for (const auto& r : rules) {
            if (!r.replacement.ring()->same_as(*ring)) throw RingMismatch("rewrite rule in a different ring");
            if (ring->var(r.target.var).constant) throw std::invalid_argument("rule targets a constant symbol");
            if (r.replacement.max_order(r.target.var) >= r.target.order)
                throw std::invalid_argument("rule replacement contains its target (or a higher jet)");
            if (!base_.emplace(r.target.var, r.target.order).second)
                throw std::invalid_argument("two rewrite rules for the same base symbol");
            cache_.emplace(r.target, r.replacement);
        }
    }

    DiffPoly reduce(DiffPoly p) {
        for (int pass = 0; pass < max_passes_; ++pass) {
            bool changed = false;
            DiffPoly out(ring_);
            for (const auto& [m, c] : p.terms()) {
                const std::pair<JetVar, int>* hit = nullptr;
                for (const auto& f : m.factors()) {
                    auto b = base_.find(f.first.var);
                    if (b != base_.end() && f.first.order >= b->second) {
                        hit = &f;
                        break;
                    }
                }
                if (!hit) {
                    out.add_term(m, c);
                    continue;
                }
                if (hit->second < 0) throw ReductionError("rewrite target carries a negative exponent");
                changed = true;
                DiffPoly rest = DiffPoly::monomial(ring_, m.without(hit->first), c);
                out += rest * rule_at(hit->first).pow(static_cast<unsigned>(hit->second));
            }
            if (!changed) return p;
            p = std::move(out);
        }
        throw ReductionError("reduce_modulo: pass limit reached (inconsistent or cyclic rules)");
    }

private:
    const DiffPoly& rule_at(JetVar v) {
        auto it = cache_.find(v);
        if (it != cache_.end()) return it->second;
        int lo = base_.at(v.var);
        for (int o = lo + 1; o <= v.order; ++o) {
            JetVar w{v.var, o};
            if (cache_.count(w)) continue;
            DiffPoly next = reduce(D(cache_.at(JetVar{v.var, o - 1})));
            cache_.emplace(w, std::move(next));
        }
        return cache_.at(v);
    }

    RingPtr ring_;
    int max_passes_;
    std::map<int, int> base_;
    std::map<JetVar, DiffPoly> cache_;
};

} // namespace

DiffPoly reduce_modulo(const DiffPoly& p, const std::vector<RewriteRule>& rules, int max_passes) {
    if (rules.empty()) return p;
    Reducer r(p.ring(), rules, max_passes);
    return r.reduce(p);
}

} // namespace soliton
