#include <doctest.h>

#include "support.hpp"

using namespace soliton;

TEST_CASE("JSON round trip of random polynomials") {
    std::mt19937_64 rng(11);
    RingPtr r = Ring::make({{"q", true}, {"qbar", true}, {"omega", false, true}});
    for (int t = 0; t < 30; ++t) {
        DiffPoly p = testutil::random_poly(rng, r, 5);
        p = p * DiffPoly::var(r, "q", 0, -1) + GaussianRational::i() * DiffPoly::var(r, "omega");
        json j = to_json(p);
        CHECK(diffpoly_from_json(json::parse(j.dump()), r) == p);
        CHECK(parse_diffpoly(to_text(p), r) == p);
    }
    RingPtr rr = ring_from_json(to_json(*r));
    CHECK(rr->same_as(*r));
}

TEST_CASE("lambda polynomials round trip") {
    LambdaPoly H = hamiltonian(nls_operator(), nls_soliton_table(2).phi());
    CHECK(lambdapoly_from_json(to_json(H), nls_ef_ring()) == H);
    CHECK(parse_lambdapoly(to_text(H), nls_ef_ring()) == H);
}

TEST_CASE("output is byte-deterministic") {
    json a = to_json(kdv_soliton(3)), b = to_json(kdv_soliton(3));
    CHECK(a.dump() == b.dump());
    CHECK(round12(0.1 + 0.2) == 0.3);
}

TEST_CASE("LaTeX printing") {
    CHECK(to_latex(kdv_soliton(2).phi()) == "8\\lambda^2 + 4q\\lambda + q'' + 3q^2");
    RingPtr r = kdv_ring();
    CHECK(to_latex(parse_diffpoly("q[4] + 1/2*q'^2", r)) == "q^{(4)} + \\frac{1}{2}(q')^2");
    RingPtr e = nls_q_ring();
    CHECK(to_latex(parse_diffpoly("omega*q", e)) == "{\\omega}q");
}

TEST_CASE("text parser") {
    RingPtr r = kdv_ring();
    CHECK(parse_diffpoly("(q + 1)^2", r) == parse_diffpoly("q^2 + 2*q + 1", r));
    CHECK(parse_diffpoly("q[3]", r) == parse_diffpoly("q'''", r));
    CHECK(parse_diffpoly("q/2", r) == GaussianRational::frac(1, 2) * DiffPoly::var(r, "q"));
    CHECK(parse_diffpoly("i*i", r) == DiffPoly(r, GaussianRational(-1)));
    CHECK_THROWS_AS(parse_diffpoly("q^(-1)", r), std::invalid_argument);
    CHECK_THROWS_AS(parse_diffpoly("q/q", r), std::invalid_argument);
    CHECK_THROWS_AS(parse_diffpoly("p", r), std::invalid_argument);
    CHECK_THROWS_AS(parse_diffpoly("q +", r), std::invalid_argument);
    CHECK_THROWS_AS(parse_diffpoly("lambda", r), std::invalid_argument);
}
