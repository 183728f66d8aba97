#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soliton/lambda_poly.hpp"

namespace soliton {

// L = L_0 lambda^d + L_1 lambda^(d-1) + ... + L_d with L_0 a nonzero constant.
class OperatorSpec {
public:
    // coeffs[j] = L_j, j = 0..d
    explicit OperatorSpec(std::vector<DiffPoly> coeffs);

    int d() const { return static_cast<int>(L_.size()) - 1; }
    const GaussianRational& L0() const { return L0_; }
    const DiffPoly& L(int j) const { return L_.at(j); }
    LambdaPoly as_lambda_poly() const;
    const RingPtr& ring() const { return L_[0].ring(); }

private:
    std::vector<DiffPoly> L_;
    GaussianRational L0_;
};

struct NamedConstant {
    std::string name;
    int index; // A_index received the constant
    GaussianRational value;
};

// Integration-constant policy: empty list means every constant is zero
// (normalized soliton); otherwise constants[k-1] is added to A_k, k = 1..n.
struct ConstantPolicy {
    std::vector<GaussianRational> constants;
    static ConstantPolicy zero() { return {}; }
};

struct SolitonDerivation {
    int n = 0;
    int d = 0;
    GaussianRational A0;
    std::vector<DiffPoly> A;        // A_0..A_n
    std::vector<DiffPoly> extended; // A_{n+1}..A_{n+d}
    std::vector<NamedConstant> constants;

    LambdaPoly phi() const;
    // A_k for 0 <= k <= n+d, zero for k < 0
    DiffPoly coeff(int k) const;
    bool normalized() const;
};

// phi''' - 2 <L, phi>
LambdaPoly residual(const OperatorSpec& L, const LambdaPoly& phi);

SolitonDerivation derive_soliton(const OperatorSpec& L, int n, const GaussianRational& A0,
                                 const ConstantPolicy& constants = ConstantPolicy::zero());

struct ConditionSet {
    // residuals[0] is s = d-1, ..., residuals[d-1] is s = 0
    std::vector<DiffPoly> residuals;
    const DiffPoly& at_s(int s) const { return residuals.at(residuals.size() - 1 - s); }
};

ConditionSet conditions(const SolitonDerivation& der, const OperatorSpec& L);
ConditionSet conditions_alternative(const SolitonDerivation& der, const OperatorSpec& L);

// psi_n = sum_j K_j phi_{n-j}; normalized[j] must be phi_{n-j}
SolitonDerivation linear_combination(const std::vector<GaussianRational>& K,
                                     const std::vector<SolitonDerivation>& normalized);

// Recovers K with psi = sum K_j phi_{n-j}; empty when psi is not such a combination.
std::optional<std::vector<GaussianRational>> recover_combination(
    const SolitonDerivation& psi, const std::vector<SolitonDerivation>& normalized);

} // namespace soliton
