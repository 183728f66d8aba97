#include <doctest.h>

#include "support.hpp"

using namespace soliton;
using testutil::random_poly;
using testutil::var;

namespace {

RingPtr qr() { return Ring::make({{"r"}, {"q"}}); }

} // namespace

TEST_CASE("ring keeps variables sorted and rejects duplicates") {
    RingPtr r = qr();
    CHECK(r->var(0).name == "q");
    CHECK(r->find("r") == 1);
    CHECK(r->find("s") == -1);
    CHECK_THROWS(r->index("s"));
    CHECK_THROWS(Ring::make({{"q"}, {"q"}}));
}

TEST_CASE("total derivative of jets and Laurent monomials") {
    RingPtr r = Ring::make({{"q", true}});
    DiffPoly q = var(r, "q");
    CHECK(D(q) == var(r, "q", 1));
    CHECK(D(q * q) == GaussianRational(2) * q * var(r, "q", 1));
    CHECK(D(var(r, "q", 0, -1)) == -(var(r, "q", 1) * var(r, "q", 0, -2)));
    CHECK(D(DiffPoly(r, GaussianRational(5))).is_zero());
}

TEST_CASE("constant symbols have no jets") {
    RingPtr r = Ring::make({{"q"}, {"w", false, true}});
    DiffPoly w = var(r, "w");
    CHECK(D(w * var(r, "q")) == w * var(r, "q", 1));
    CHECK(w.is_x_independent());
    CHECK_THROWS(var(r, "w", 1));
}

TEST_CASE("negative exponents only on invertible order-zero symbols") {
    RingPtr r = Ring::make({{"q"}});
    CHECK_THROWS(var(r, "q", 0, -1));
    RingPtr s = Ring::make({{"q", true}});
    CHECK_THROWS(var(s, "q", 1, -1));
}

TEST_CASE("mixing rings is rejected") {
    RingPtr a = Ring::make({{"q"}}), b = Ring::make({{"p"}});
    CHECK_THROWS_AS(var(a, "q") + var(b, "p"), RingMismatch);
}

TEST_CASE("derivation laws on random polynomials") {
    std::mt19937_64 rng(20240601);
    RingPtr r = qr();
    for (int t = 0; t < 40; ++t) {
        DiffPoly a = random_poly(rng, r), b = random_poly(rng, r);
        GaussianRational c = testutil::small_rational(rng, true);
        CHECK(D(a * b) == D(a) * b + a * D(b));
        CHECK(D(a + c * b) == D(a) + c * D(b));
        CHECK(D(a, 3) == D(D(D(a))));
        CHECK(bracket(a, b) == D(a) * b + GaussianRational(2) * a * D(b));
        CHECK(a * b == b * a);
        CHECK((a + b) * c == c * a + c * b);
    }
}

TEST_CASE("canonical form does not depend on construction order") {
    RingPtr r = qr();
    DiffPoly q = var(r, "q"), s = var(r, "r", 2), q1 = var(r, "q", 1);
    DiffPoly x = q * s + GaussianRational(3) * q1 - q * q;
    DiffPoly y = -(q * q) + s * q + q1 + GaussianRational(2) * q1;
    CHECK(x == y);
    CHECK(x.size() == 3);
    CHECK((x - y).is_zero());
}

TEST_CASE("integration inverts the total derivative") {
    std::mt19937_64 rng(7);
    RingPtr r = qr();
    for (int t = 0; t < 40; ++t) {
        DiffPoly p = random_poly(rng, r, 4, 3, 3, false);
        CHECK(integrate_exact(D(p)) == p);
    }
}

TEST_CASE("integration of a non-exact integrand") {
    RingPtr r = Ring::make({{"q"}});
    DiffPoly q = var(r, "q");
    IntegrationResult res = try_integrate(q * q + var(r, "q", 3));
    CHECK_FALSE(res.exact);
    CHECK(res.remainder == q * q);
    CHECK(res.primitive == var(r, "q", 2));
    try {
        integrate_exact(q);
        FAIL("expected NotExact");
    } catch (const NotExact& e) {
        CHECK(e.remainder == q);
    }
    CHECK(integrate_exact(DiffPoly(r)).is_zero());
}

TEST_CASE("integration in the Laurent ring") {
    std::mt19937_64 rng(5);
    RingPtr r = Ring::make({{"q", true}, {"p"}});
    DiffPoly qi = var(r, "q", 0, -1);
    CHECK(integrate_exact(D(qi)) == qi);
    for (int t = 0; t < 20; ++t) {
        DiffPoly p = random_poly(rng, r, 3, 2, 2, false) * qi * qi;
        CHECK(integrate_exact(D(p)) == p);
    }
    // log q is not in the ring
    DiffPoly logq = var(r, "q", 1) * qi;
    try {
        integrate_exact(logq);
        FAIL("expected NotExact");
    } catch (const NotExact& e) {
        CHECK(e.remainder == logq);
    }
}

TEST_CASE("substitution commutes with the total derivative") {
    std::mt19937_64 rng(99);
    RingPtr src = Ring::make({{"u"}, {"v"}});
    RingPtr dst = qr();
    for (int t = 0; t < 20; ++t) {
        SubstitutionMap m{{"u", random_poly(rng, dst, 3, 2, 2)}, {"v", random_poly(rng, dst, 3, 2, 2)}};
        DiffPoly p = random_poly(rng, src, 3, 2, 2);
        CHECK(substitute(D(p), m, dst) == D(substitute(p, m, dst)));
    }
}

TEST_CASE("substitution of a monomial image handles inverses") {
    RingPtr src = Ring::make({{"u", true}});
    RingPtr dst = Ring::make({{"q", true}});
    DiffPoly q = var(dst, "q");
    SubstitutionMap m{{"u", q * q}};
    CHECK(substitute(var(src, "u", 0, -1), m, dst) == var(dst, "q", 0, -2));
}

TEST_CASE("reduction modulo an order-lowering rule") {
    RingPtr r = Ring::make({{"q"}});
    DiffPoly q = var(r, "q");
    // q'' = -q
    std::vector<RewriteRule> rules{{JetVar{0, 2}, -q}};
    CHECK(reduce_modulo(var(r, "q", 4), rules) == q);
    CHECK(reduce_modulo(var(r, "q", 3) * var(r, "q", 2), rules) == var(r, "q", 1) * q);
    DiffPoly energy = var(r, "q", 1).pow(2) + q * q;
    CHECK(reduce_modulo(D(energy), rules).is_zero());
}

TEST_CASE("exact linear solve") {
    std::vector<std::vector<GaussianRational>> a{{1, 2}, {3, 4}};
    std::vector<GaussianRational> x;
    REQUIRE(solve_linear(a, {5, 6}, x));
    CHECK(x[0] == GaussianRational(-4));
    CHECK(x[1] == GaussianRational::frac(9, 2));
    CHECK_FALSE(solve_linear({{1, 1}, {1, 1}}, {1, 2}, x));
}
