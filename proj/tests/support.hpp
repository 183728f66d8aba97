#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "soliton/cli.hpp"
#include "soliton/serialize.hpp"

namespace testutil {

using namespace soliton;

inline json load_fixture(const std::string& name) {
    std::ifstream in(fixtures_dir() + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return json::parse(in);
}

inline DiffPoly var(const RingPtr& r, const std::string& n, int order = 0, int e = 1) {
    return DiffPoly::var(r, n, order, e);
}

inline GaussianRational small_rational(std::mt19937_64& rng, bool complex = false) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    long a = num(rng);
    if (a == 0) a = 1;
    GaussianRational c = GaussianRational::frac(a, den(rng));
    if (complex && rng() % 3 == 0) c += GaussianRational::frac(0, 1, num(rng), den(rng));
    return c;
}

// random polynomial in the non-constant, non-inverted jets of ring
inline DiffPoly random_poly(std::mt19937_64& rng, const RingPtr& ring, int terms = 4, int max_order = 3,
                            int max_deg = 3, bool constant_term = true) {
    std::vector<int> bases;
    for (int i = 0; i < ring->size(); ++i)
        if (!ring->var(i).constant) bases.push_back(i);
    DiffPoly p(ring);
    std::uniform_int_distribution<int> ord(0, max_order), deg(0, max_deg);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::pair<JetVar, int>> f;
        int dg = deg(rng);
        if (dg == 0 && !constant_term) dg = 1;
        for (int k = 0; k < dg; ++k) f.push_back({JetVar{bases[rng() % bases.size()], ord(rng)}, 1});
        p.add_term(Monomial(f), small_rational(rng));
    }
    return p;
}

inline int run(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
    std::ostringstream o, e;
    int rc = run_cli(args, o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return rc;
}

} // namespace testutil
