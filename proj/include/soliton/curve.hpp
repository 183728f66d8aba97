#pragma once

#include "soliton/spectral.hpp"

namespace soliton {

// phi phi'' - (phi')^2 / 2 - 2 L phi^2
LambdaPoly hamiltonian(const OperatorSpec& L, const LambdaPoly& phi);

struct IdentityCheck {
    bool holds;
    LambdaPoly witness; // D_x H - phi * residual
};

IdentityCheck derivative_identity_check(const OperatorSpec& L, const LambdaPoly& phi);

struct StructuralViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct CurveData {
    LambdaPoly H;
    int degree = 0;
    int genus = 0;
    GaussianRational leading;
    bool gap_ok = false;
    // normalized derivation and L_1..L_d without constant terms: the gap is a theorem
    bool gap_guaranteed = false;

    LambdaPoly R() const { return GaussianRational(-2) * H; }
};

int curve_genus(int n, int d);

// Throws StructuralViolation on a degree or leading-coefficient mismatch, or on
// a gap violation when gap_guaranteed holds.
CurveData curve_data(const OperatorSpec& L, const SolitonDerivation& der);

// KdV only: the (4 lambda)-expansion with F_{k-1} = A_k / 4^(n-k), each
// F_k F_n - int F_k' F_n dx integrated exactly.
LambdaPoly kdv_integral_form(const SolitonDerivation& der);

} // namespace soliton
