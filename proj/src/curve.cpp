#include "soliton/curve.hpp"

namespace soliton {

LambdaPoly hamiltonian(const OperatorSpec& L, const LambdaPoly& phi) {
    LambdaPoly d1 = D(phi);
    return phi * D(phi, 2) - GaussianRational::frac(1, 2) * (d1 * d1) -
           GaussianRational(2) * (L.as_lambda_poly() * (phi * phi));
}

IdentityCheck derivative_identity_check(const OperatorSpec& L, const LambdaPoly& phi) {
    LambdaPoly w = D(hamiltonian(L, phi)) - phi * residual(L, phi);
    bool ok = w.is_zero();
    return {ok, std::move(w)};
}

int curve_genus(int n, int d) { return d % 2 ? n + (d - 1) / 2 : n + (d - 2) / 2; }

CurveData curve_data(const OperatorSpec& L, const SolitonDerivation& der) {
    const int n = der.n, d = L.d();
    CurveData cd{hamiltonian(L, der.phi())};
    cd.degree = cd.H.degree();
    cd.genus = curve_genus(n, d);
    cd.leading = cd.H.leading().constant_term();

    if (cd.degree != 2 * n + d)
        throw StructuralViolation("H has degree " + std::to_string(cd.degree) + ", expected " +
                                  std::to_string(2 * n + d));
    GaussianRational expected = GaussianRational(-2) * L.L0() * der.A0 * der.A0;
    if (!cd.H.leading().is_constant() || cd.leading != expected)
        throw StructuralViolation("H leading coefficient " + cd.leading.str() + ", expected " + expected.str());

    cd.gap_ok = true;
    for (int p = n + d; p <= 2 * n + d - 1; ++p)
        if (!cd.H.coeff(p).is_zero()) cd.gap_ok = false;
    cd.gap_guaranteed = der.normalized();
    for (int i = 1; i <= d; ++i)
        if (!L.L(i).constant_term().is_zero()) cd.gap_guaranteed = false;
    if (cd.gap_guaranteed && !cd.gap_ok) throw StructuralViolation("nonzero coefficient inside the gap");
    return cd;
}

LambdaPoly kdv_integral_form(const SolitonDerivation& der) {
    if (der.d != 1) throw std::invalid_argument("kdv_integral_form needs a d = 1 derivation");
    const int n = der.n;
    const RingPtr& ring = der.A[0].ring();
    // F_{k-1} = A_k / 4^(n-k), k = 0..n+1
    auto F = [&](int j) {
        int k = j + 1;
        mpq_class s = 1;
        for (int e = 0; e < n - k; ++e) s /= 4;
        for (int e = 0; e < k - n; ++e) s *= 4;
        return GaussianRational(s) * der.coeff(k);
    };
    auto four_lambda = [&](int p) {
        mpq_class s = 1;
        for (int e = 0; e < p; ++e) s *= 4;
        return GaussianRational(s) * LambdaPoly::lambda(ring, p);
    };
    const DiffPoly Fm1 = F(-1), Fn = F(n);
    LambdaPoly H = GaussianRational::frac(-1, 2) * four_lambda(2 * n + 1) * (Fm1 * Fm1);
    H += four_lambda(n) * (Fm1 * Fn);
    for (int j = 0; j <= n - 1; ++j) {
        DiffPoly Fj = F(j);
        DiffPoly c = Fj * Fn - integrate_exact(D(Fj) * Fn);
        H += four_lambda(n - 1 - j) * c;
    }
    return H;
}

} // namespace soliton
