#include "soliton/spectral.hpp"

namespace soliton {

OperatorSpec::OperatorSpec(std::vector<DiffPoly> coeffs) : L_(std::move(coeffs)) {
    if (L_.size() < 2) throw std::invalid_argument("operator degree d must be positive");
    for (const auto& c : L_)
        if (!c.ring()->same_as(*L_[0].ring())) throw RingMismatch("operator coefficients from different rings");
    if (!L_[0].is_constant() || L_[0].is_zero())
        throw std::invalid_argument("leading operator coefficient must be a nonzero constant");
    L0_ = L_[0].constant_term();
}

LambdaPoly OperatorSpec::as_lambda_poly() const { return LambdaPoly::from_descending(ring(), L_); }

LambdaPoly SolitonDerivation::phi() const {
    if (A.empty()) throw std::logic_error("empty derivation");
    return LambdaPoly::from_descending(A[0].ring(), A);
}

DiffPoly SolitonDerivation::coeff(int k) const {
    const RingPtr& ring = A.at(0).ring();
    if (k < 0) return DiffPoly(ring);
    if (k <= n) return A.at(k);
    if (k - n - 1 < static_cast<int>(extended.size())) return extended.at(k - n - 1);
    throw std::out_of_range("derivation not extended to A_" + std::to_string(k));
}

bool SolitonDerivation::normalized() const {
    for (const auto& c : constants)
        if (!c.value.is_zero()) return false;
    return true;
}

LambdaPoly residual(const OperatorSpec& L, const LambdaPoly& phi) {
    return D(phi, 3) - GaussianRational(2) * bracket(L.as_lambda_poly(), phi);
}

SolitonDerivation derive_soliton(const OperatorSpec& L, int n, const GaussianRational& A0,
                                 const ConstantPolicy& constants) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    if (A0.is_zero()) throw std::invalid_argument("A0 must be nonzero");
    if (!constants.constants.empty() && static_cast<int>(constants.constants.size()) != n)
        throw std::invalid_argument("explicit constant list must hold exactly n values");
    const RingPtr& ring = L.ring();
    const int d = L.d();
    const GaussianRational scale = -(GaussianRational(2) * L.L0()).inverse();

    SolitonDerivation der;
    der.n = n;
    der.d = d;
    der.A0 = A0;
    std::vector<DiffPoly> all{DiffPoly(ring, A0)};
    auto at = [&](int k) { return k < 0 ? DiffPoly(ring) : all[k]; };
    for (int k = 1; k <= n + d; ++k) {
        DiffPoly sum(ring);
        for (int i = 1; i <= std::min(d, k); ++i) sum += bracket(L.L(i), at(k - i));
        DiffPoly Ak = scale * (integrate_exact(sum) - GaussianRational::frac(1, 2) * D(at(k - d), 2));
        if (k <= n) {
            GaussianRational c = constants.constants.empty() ? GaussianRational(0) : constants.constants[k - 1];
            der.constants.push_back({"C_" + std::to_string(k), k, c});
            Ak += DiffPoly(ring, c);
        }
        all.push_back(std::move(Ak));
    }
    der.A.assign(all.begin(), all.begin() + n + 1);
    der.extended.assign(all.begin() + n + 1, all.end());
    return der;
}

ConditionSet conditions(const SolitonDerivation& der, const OperatorSpec& L) {
    const int d = L.d(), n = der.n;
    const RingPtr& ring = L.ring();
    auto A = [&](int k) { return k < 0 || k > n ? DiffPoly(ring) : der.A[k]; };
    ConditionSet cs;
    for (int s = d - 1; s >= 0; --s) {
        DiffPoly r = D(A(n - s), 3);
        DiffPoly sum(ring);
        for (int i = d - s; i <= d; ++i) sum += bracket(L.L(i), A(d + n - s - i));
        cs.residuals.push_back(r - GaussianRational(2) * sum);
    }
    return cs;
}

ConditionSet conditions_alternative(const SolitonDerivation& der, const OperatorSpec& L) {
    const int d = L.d(), n = der.n;
    const RingPtr& ring = L.ring();
    ConditionSet cs;
    for (int s = d - 1; s >= 0; --s) {
        DiffPoly r = GaussianRational(4) * L.L0() * D(der.coeff(n + d - s));
        DiffPoly sum(ring);
        for (int i = 1; i <= d - s - 1; ++i) sum += bracket(L.L(i), der.coeff(d + n - s - i));
        cs.residuals.push_back(r + GaussianRational(2) * sum);
    }
    return cs;
}

SolitonDerivation linear_combination(const std::vector<GaussianRational>& K,
                                     const std::vector<SolitonDerivation>& normalized) {
    if (K.empty() || K.size() != normalized.size())
        throw std::invalid_argument("need one coefficient per normalized soliton");
    if (K[0].is_zero()) throw std::invalid_argument("K_0 must be nonzero");
    const int n = normalized[0].n;
    const int d = normalized[0].d;
    for (std::size_t j = 0; j < normalized.size(); ++j)
        if (normalized[j].n != n - static_cast<int>(j) || normalized[j].d != d)
            throw std::invalid_argument("normalized list must be phi_n, ..., phi_0 of one operator");
    const RingPtr& ring = normalized[0].A[0].ring();

    SolitonDerivation psi;
    psi.n = n;
    psi.d = d;
    psi.A0 = K[0] * normalized[0].A0;
    for (int k = 0; k <= n + d; ++k) {
        DiffPoly B(ring);
        for (int j = 0; j <= std::min(k, n); ++j) B += K[j] * normalized[j].coeff(k - j);
        if (k <= n) psi.A.push_back(std::move(B));
        else psi.extended.push_back(std::move(B));
    }
    for (std::size_t j = 1; j < K.size(); ++j)
        psi.constants.push_back({"K_" + std::to_string(j), static_cast<int>(j), K[j]});
    return psi;
}

std::optional<std::vector<GaussianRational>> recover_combination(
    const SolitonDerivation& psi, const std::vector<SolitonDerivation>& normalized) {
    const int n = psi.n;
    if (static_cast<int>(normalized.size()) != n + 1) return std::nullopt;
    std::vector<GaussianRational> K;
    for (int k = 0; k <= n; ++k) {
        DiffPoly rest = psi.A[k];
        for (int j = 0; j < k; ++j) rest -= K[j] * normalized[j].coeff(k - j);
        if (!rest.is_constant()) return std::nullopt;
        K.push_back(rest.constant_term() / normalized[k].A0);
    }
    if (K[0].is_zero()) return std::nullopt;
    SolitonDerivation check = linear_combination(K, normalized);
    if (check.A != psi.A) return std::nullopt;
    return K;
}

} // namespace soliton
