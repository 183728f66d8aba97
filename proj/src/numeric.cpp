#include "soliton/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace soliton {

namespace {

// Polynomial in s = sech(c x), t = tanh(c x); key (i, j) -> coefficient of s^i t^j.
using SechPoly = std::map<std::pair<int, int>, double>;

SechPoly sech_derivative(const SechPoly& p, double c) {
    // s' = -c s t, t' = c s^2
    SechPoly out;
    for (const auto& [ij, v] : p) {
        auto [i, j] = ij;
        if (i) out[{i, j + 1}] += -c * i * v;
        if (j) out[{i + 2, j - 1}] += c * j * v;
    }
    return out;
}

std::vector<SechPoly> sech_jets(SechPoly p, double c, int max_order) {
    std::vector<SechPoly> out{p};
    for (int k = 1; k <= max_order; ++k) out.push_back(sech_derivative(out.back(), c));
    return out;
}

double eval_sech(const SechPoly& p, double s, double t) {
    double r = 0.0;
    for (const auto& [ij, v] : p) r += v * std::pow(s, ij.first) * std::pow(t, ij.second);
    return r;
}

cplx ipow(cplx z, int e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    cplx r = 1.0;
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

class KdvSoliton : public JetProvider {
public:
    KdvSoliton(double kappa, int max_order) : kappa_(kappa), max_order_(max_order) {
        if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
        jets_ = sech_jets({{{2, 0}, 2 * kappa * kappa}}, kappa, max_order);
    }
    std::string name() const override { return "kdv_soliton"; }
    std::map<std::string, double> params() const override { return {{"kappa", kappa_}}; }
    int max_order() const override { return max_order_; }
    std::vector<std::string> bases() const override { return {"q"}; }
    std::map<std::string, std::vector<cplx>> jets(double x) const override {
        double s = 1.0 / std::cosh(kappa_ * x), t = std::tanh(kappa_ * x);
        std::vector<cplx> q;
        for (const auto& p : jets_) q.emplace_back(eval_sech(p, s, t), 0.0);
        return {{"q", q}};
    }

private:
    double kappa_;
    int max_order_;
    std::vector<SechPoly> jets_;
};

class NlsProvider : public JetProvider {
public:
    NlsProvider(const NlsParams& p, int max_order) : p_(p), max_order_(max_order) {
        if (p.sigma != 1 && p.sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
        if (p.kind == NlsKind::bright) {
            if (p.sigma != 1) throw std::invalid_argument("bright soliton needs sigma = +1");
            if (!(p.omega > 0)) throw std::invalid_argument("bright soliton needs omega > 0");
            a_ = std::sqrt(2.0 * p.omega);
            env_ = sech_jets({{{1, 0}, a_}}, a_, max_order);
        }
    }
    std::string name() const override { return p_.kind == NlsKind::bright ? "nls_bright" : "nls_plane_wave"; }
    std::map<std::string, double> params() const override {
        if (p_.kind == NlsKind::bright)
            return {{"omega", p_.omega}, {"velocity", p_.velocity}, {"sigma", double(p_.sigma)}};
        return {{"C", p_.C}, {"k", p_.k}, {"sigma", double(p_.sigma)}};
    }
    int max_order() const override { return max_order_; }
    std::vector<std::string> bases() const override { return {"q", "qbar"}; }
    std::map<std::string, cplx> constants() const override {
        if (p_.kind == NlsKind::bright) return {{"omega", p_.omega}, {"k", 0.0}};
        return {{"k", p_.k}, {"nu", p_.C * p_.C}, {"omega", p_.sigma * p_.C * p_.C - 0.5 * p_.k * p_.k}};
    }
    std::map<std::string, std::vector<cplx>> jets(double x) const override {
        std::vector<cplx> q(max_order_ + 1), qb(max_order_ + 1);
        if (p_.kind == NlsKind::plane_wave) {
            cplx ik(0.0, -p_.k);
            cplx base = p_.C * std::exp(cplx(0.0, -p_.k * x));
            for (int n = 0; n <= max_order_; ++n) q[n] = ipow(ik, n) * base;
        } else {
            double s = 1.0 / std::cosh(a_ * x), t = std::tanh(a_ * x);
            std::vector<double> f;
            for (const auto& p : env_) f.push_back(eval_sech(p, s, t));
            cplx iv(0.0, -p_.velocity);
            cplx g = std::exp(cplx(0.0, -p_.velocity * x));
            for (int n = 0; n <= max_order_; ++n) {
                cplx acc = 0.0;
                double binom = 1.0;
                for (int m = 0; m <= n; ++m) {
                    acc += binom * f[n - m] * ipow(iv, m) * g;
                    binom = binom * (n - m) / (m + 1);
                }
                q[n] = acc;
            }
        }
        for (int n = 0; n <= max_order_; ++n) qb[n] = std::conj(q[n]);
        return {{"q", q}, {"qbar", qb}};
    }

private:
    NlsParams p_;
    int max_order_;
    double a_ = 0.0;
    std::vector<SechPoly> env_;
};

} // namespace

ProviderPtr provider_kdv_soliton(double kappa, int max_order) {
    return std::make_shared<KdvSoliton>(kappa, max_order);
}

ProviderPtr provider_nls(const NlsParams& p, int max_order) { return std::make_shared<NlsProvider>(p, max_order); }

cplx eval_at(const DiffPoly& expr, const std::map<std::string, std::vector<cplx>>& jets,
             const std::map<std::string, cplx>& constants) {
    const Ring& ring = *expr.ring();
    cplx total = 0.0;
    for (const auto& [m, c] : expr.terms()) {
        cplx term = c.to_complex();
        for (const auto& [v, e] : m.factors()) {
            const VarSpec& spec = ring.var(v.var);
            cplx val;
            if (spec.constant) {
                auto it = constants.find(spec.name);
                if (it == constants.end())
                    throw std::out_of_range("no value for constant symbol '" + spec.name + "'");
                val = it->second;
            } else {
                auto it = jets.find(spec.name);
                if (it == jets.end()) throw std::out_of_range("provider lacks variable '" + spec.name + "'");
                if (v.order >= static_cast<int>(it->second.size()))
                    throw std::out_of_range("provider lacks order " + std::to_string(v.order) + " of '" +
                                            spec.name + "'");
                val = it->second[v.order];
            }
            term *= ipow(val, e);
        }
        total += term;
    }
    return total;
}

cplx eval(const DiffPoly& expr, const JetProvider& prov, double x) {
    if (expr.is_zero()) return 0.0;
    return eval_at(expr, prov.jets(x), prov.constants());
}

cplx eval(const LambdaPoly& expr, const JetProvider& prov, double x, cplx lambda) {
    auto jets = prov.jets(x);
    auto consts = prov.constants();
    cplx acc = 0.0;
    for (int j = expr.degree(); j >= 0; --j) acc = acc * lambda + eval_at(expr.coeff(j), jets, consts);
    return acc;
}

VerifyReport constancy_check(const std::string& check, const DiffPoly& expr, const JetProvider& prov,
                             const Grid& grid, double tol) {
    VerifyReport rep{check, grid};
    std::vector<cplx> vals;
    cplx mean = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        vals.push_back(eval(expr, prov, grid.at(i)));
        mean += vals.back();
    }
    mean /= double(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        double dev = std::abs(vals[i] - mean);
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
        rep.details.push_back({grid.at(i), vals[i], dev});
    }
    rep.tolerance = tol * (1.0 + std::abs(mean));
    rep.pass = rep.max_abs_deviation <= rep.tolerance;
    return rep;
}

namespace {

std::vector<cplx> roots_from_values(const std::vector<cplx>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    if (std::abs(c[n]) == 0.0) throw std::domain_error("degenerate leading coefficient");
    std::vector<cplx> r;
    if (n == 1) {
        r.push_back(-c[0] / c[1]);
    } else {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
        for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()[i]);
    }
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return r;
}

std::vector<cplx> coefficient_values(const LambdaPoly& phi, const JetProvider& prov, double x) {
    auto jets = prov.jets(x);
    auto consts = prov.constants();
    std::vector<cplx> c;
    for (int j = 0; j <= phi.degree(); ++j) c.push_back(eval_at(phi.coeff(j), jets, consts));
    return c;
}

} // namespace

std::vector<cplx> phi_roots(const LambdaPoly& phi, const JetProvider& prov, double x) {
    return roots_from_values(coefficient_values(phi, prov, x));
}

std::vector<CurvePoint> curve_points(const LambdaPoly& phi, const JetProvider& prov, const Grid& grid,
                                     double perturb) {
    LambdaPoly dphi = D(phi);
    std::vector<CurvePoint> pts;
    for (int i = 0; i < grid.n; ++i) {
        double x = grid.at(i);
        auto roots = phi_roots(phi, prov, x);
        for (std::size_t k = 0; k < roots.size(); ++k) {
            cplx lam = roots[k] + perturb;
            pts.push_back({x, static_cast<int>(k), lam, eval(dphi, prov, x, lam)});
        }
    }
    return pts;
}

VerifyReport curve_membership(const std::vector<CurvePoint>& points, const LambdaPoly& H,
                              const JetProvider& prov, double tol) {
    VerifyReport rep{"curve_membership"};
    if (!points.empty()) rep.grid = {points.front().x, points.back().x, static_cast<int>(points.size())};
    for (const auto& p : points) {
        cplx v = eval(H, prov, p.x, p.lambda) + 0.5 * p.Y * p.Y;
        double dev = std::abs(v);
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
        rep.details.push_back({p.x, v, dev});
    }
    rep.tolerance = tol;
    rep.pass = rep.max_abs_deviation <= tol;
    return rep;
}

VerifyReport abel_sum_check(const LambdaPoly& phi, const JetProvider& prov, int mu, const Grid& grid, double tol,
                            const AbelOptions& opt) {
    const int n = phi.degree();
    if (mu < 1 || mu > n) throw std::invalid_argument("abel_sum_check needs 1 <= mu <= n");
    if (!phi.leading().is_constant()) throw std::invalid_argument("leading coefficient must be constant");
    const cplx A0 = phi.leading().constant_term().to_complex();
    const cplx expected = mu < n ? cplx(0.0) : -1.0 / A0;
    LambdaPoly dphi = D(phi);

    VerifyReport rep{"abel_sum_mu" + std::to_string(mu), grid};
    rep.tolerance = tol;
    int flagged = 0;
    const double h = opt.h;
    for (int i = 0; i < grid.n; ++i) {
        double x = grid.at(i);
        auto r0 = phi_roots(phi, prov, x);
        std::vector<std::vector<cplx>> st;
        for (double off : {-2.0, -1.0, 1.0, 2.0}) st.push_back(phi_roots(phi, prov, x + off * h));

        double sep = INFINITY;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) sep = std::min(sep, std::abs(r0[a] - r0[b]));

        bool flag = false;
        cplx sum = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx m[4];
            for (int s = 0; s < 4; ++s) {
                std::size_t best = 0;
                for (std::size_t j = 1; j < st[s].size(); ++j)
                    if (std::abs(st[s][j] - r0[k]) < std::abs(st[s][best] - r0[k])) best = j;
                m[s] = st[s][best];
                // a tracked root must stay much closer to its own branch than to any other
                if (std::abs(m[s] - r0[k]) > 0.25 * sep) flag = true;
            }
            cplx dl = (m[0] - 8.0 * m[1] + 8.0 * m[2] - m[3]) / (12.0 * h);
            cplx Y = opt.branch_sign * eval(dphi, prov, x, r0[k]);
            if (std::abs(Y) <= opt.branch_eps * (1.0 + std::abs(r0[k]))) flag = true;
            sum += ipow(r0[k], mu - 1) * dl / Y;
        }
        GridDetail det{x, sum, std::abs(sum - expected), flag};
        if (flag) ++flagged;
        else rep.max_abs_deviation = std::max(rep.max_abs_deviation, det.deviation);
        rep.details.push_back(det);
    }
    double frac = double(flagged) / grid.n;
    rep.note = std::to_string(flagged) + " branch/collision points excluded";
    rep.pass = rep.max_abs_deviation <= tol && frac <= opt.max_flagged;
    return rep;
}

} // namespace soliton
