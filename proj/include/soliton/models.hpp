#pragma once

#include <string>
#include <vector>

#include "soliton/curve.hpp"

namespace soliton {

// ---- KdV: L = lambda - q, phi_n = sum F_{k-1} (4 lambda)^(n-k), F_{-1} = 1/2

RingPtr kdv_ring();
OperatorSpec kdv_operator();
GaussianRational kdv_A0(int n); // 4^n / 2
SolitonDerivation kdv_soliton(int n);
DiffPoly kdv_M(const DiffPoly& phi); // phi''' + 4 q phi' + 2 q' phi
std::vector<DiffPoly> kdv_densities(int n); // F_0..F_n

// ---- NLS: L = -lambda^2 + E lambda + F over the E,F ring, A_0 = 2

RingPtr nls_ef_ring();
OperatorSpec nls_operator();
SolitonDerivation nls_soliton_table(int n);

// q and qbar (invertible) plus the equation constants as constant symbols:
// k, nu, omega, Omega, omega2, Omega2
RingPtr nls_q_ring();
// E -> i q' / q,  F -> -E^2/4 - sigma q qbar + (i/2) E'
SubstitutionMap nls_substitution(int sigma);
DiffPoly nls_to_q(const DiffPoly& ef, int sigma);

// q <-> qbar, complex-conjugate coefficients, constant symbols mapped by
// their reality: k, nu, omega, Omega2 real; Omega, omega2 imaginary.
DiffPoly nls_conjugate(const DiffPoly& p);

struct IdentityReport {
    std::string name;
    bool holds;
    DiffPoly lhs; // in the q ring
    DiffPoly rhs;
};

// E_(n) = i q^(n) / q as order-0 symbols E2, E3, E4 of a separate ring
RingPtr e_calculus_ring();
std::vector<IdentityReport> e_calculus_check();

struct ReducedCondition {
    std::string name;            // stationary-NLS, phase-flux, mKdV, third-density, ...
    std::string condition;       // "A" or "B"
    DiffPoly lhs;                // free of constant symbols
    DiffPoly rhs;                // constant-symbol side
    std::string constant_symbol; // omega, Omega, ...
    DiffPoly integrated;         // integrated condition in the source ring
    GaussianRational scale;      // integrated = scale * constant_symbol
    DiffPoly raw;                // q-form after clearing denominators, before order reduction
    std::vector<RewriteRule> rules; // order-reduction rules applied to raw
    bool conserved = false;      // D(lhs - rhs) reduces to 0 modulo rules and their conjugates

    DiffPoly equation() const { return lhs - rhs; }
};

// n in {0, 1, 2}
std::vector<ReducedCondition> nls_reduce_conditions(int n, int sigma);

// KdV: the single condition integrated, F_n = 4 A_{n+1} is constant.
ReducedCondition kdv_condition(int n);

// Rule solving eq = 0 for the highest jet of `base`, which must occur linearly
// in a lone monomial.
RewriteRule rule_from_equation(const DiffPoly& eq, const std::string& base);

// Curve formula for NLS in derivative form: H_n = 8 lambda^(2n+2) - 8 A_{n+1} lambda^(n+1) + ...
// with D_x of the lambda^(n+1-i) coefficient equal to -4 A_i A_{n+1}' + A_{i-1} B_n.
std::vector<IdentityReport> nls_curve_check(int n);

} // namespace soliton
