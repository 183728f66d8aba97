#include <doctest.h>

#include "support.hpp"

using namespace soliton;
using testutil::var;

TEST_CASE("operator spec needs a nonzero constant leading coefficient") {
    RingPtr r = kdv_ring();
    CHECK_THROWS(OperatorSpec({var(r, "q"), DiffPoly(r)}));
    CHECK_THROWS(OperatorSpec({DiffPoly(r)}));
    CHECK_THROWS(OperatorSpec(std::vector<DiffPoly>{}));
    OperatorSpec L = kdv_operator();
    CHECK(L.d() == 1);
    CHECK(L.as_lambda_poly() == parse_lambdapoly("lambda - q", r));
}

TEST_CASE("KdV normalized solitons match the oracle") {
    json o = testutil::load_fixture("kdv_oracle.json");
    RingPtr r = kdv_ring();
    for (int n = 0; n < 4; ++n) {
        SolitonDerivation der = kdv_soliton(n);
        CHECK(der.normalized());
        CHECK(der.phi() == lambdapoly_from_json(o["phi"][n], r));
        CHECK(der.extended.size() == 1);
    }
}

TEST_CASE("normalized soliton solves the squared-eigenfunction equation modulo its conditions") {
    SolitonDerivation der = kdv_soliton(2);
    OperatorSpec L = kdv_operator();
    LambdaPoly res = residual(L, der.phi());
    CHECK(res.degree() == 0);
    CHECK(res.coeff(0) == conditions(der, L).at_s(0));
    LambdaPoly r0 = residual(L, kdv_soliton(0).phi());
    CHECK(r0 == LambdaPoly(testutil::var(kdv_ring(), "q", 1)));
}

TEST_CASE("both forms of the conditions agree for KdV and NLS") {
    for (int n = 0; n <= 4; ++n) {
        SolitonDerivation k = kdv_soliton(n);
        CHECK(conditions(k, kdv_operator()).residuals == conditions_alternative(k, kdv_operator()).residuals);
        SolitonDerivation s = nls_soliton_table(n);
        CHECK(conditions(s, nls_operator()).residuals == conditions_alternative(s, nls_operator()).residuals);
    }
}

TEST_CASE("KdV condition is the derivative of the next density") {
    auto F = kdv_densities(3);
    for (int n = 0; n < 3; ++n) {
        ConditionSet cs = conditions(kdv_soliton(n), kdv_operator());
        CHECK(cs.at_s(0) == D(F[n]));
    }
}

TEST_CASE("integration constants are recorded and recovered") {
    OperatorSpec L = nls_operator();
    std::vector<GaussianRational> C{GaussianRational::frac(1, 3), GaussianRational::frac(-2, 1, 1, 2)};
    SolitonDerivation psi = derive_soliton(L, 2, GaussianRational(2), ConstantPolicy{C});
    CHECK_FALSE(psi.normalized());
    REQUIRE(psi.constants.size() == 2);
    CHECK(psi.constants[0].name == "C_1");
    std::vector<SolitonDerivation> base;
    for (int j = 0; j <= 2; ++j) base.push_back(nls_soliton_table(2 - j));
    auto K = recover_combination(psi, base);
    REQUIRE(K.has_value());
    SolitonDerivation back = linear_combination(*K, base);
    CHECK(back.phi() == psi.phi());
    for (int k = 0; k <= 4; ++k) CHECK(back.coeff(k) == psi.coeff(k));
}

TEST_CASE("a non-combination is rejected") {
    SolitonDerivation psi = kdv_soliton(2);
    psi.A[2] += var(kdv_ring(), "q", 1);
    std::vector<SolitonDerivation> base{kdv_soliton(2), kdv_soliton(1), kdv_soliton(0)};
    CHECK_FALSE(recover_combination(psi, base).has_value());
}

TEST_CASE("A0 scales the normalized soliton") {
    SolitonDerivation a = derive_soliton(kdv_operator(), 2, GaussianRational(1));
    SolitonDerivation b = kdv_soliton(2);
    CHECK(GaussianRational(8) * a.phi() == b.phi());
}
