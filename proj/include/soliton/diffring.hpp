#pragma once

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "soliton/rational.hpp"

namespace soliton {

// A base symbol.  Invertible symbols may carry negative exponents at order 0;
// constant symbols (omega, Omega, ...) have zero derivative and no jets.
struct VarSpec {
    std::string name;
    bool invertible = false;
    bool constant = false;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Variables are kept sorted by name so that index order is name order.
class Ring {
public:
    static RingPtr make(std::vector<VarSpec> vars);

    const std::vector<VarSpec>& vars() const { return vars_; }
    const VarSpec& var(int idx) const { return vars_.at(idx); }
    int size() const { return static_cast<int>(vars_.size()); }
    int find(const std::string& name) const; // -1 when absent
    int index(const std::string& name) const; // throws when absent
    bool same_as(const Ring& o) const;
    std::string describe() const;

private:
    explicit Ring(std::vector<VarSpec> vars) : vars_(std::move(vars)) {}
    std::vector<VarSpec> vars_;
};

struct RingMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct JetVar {
    int var = 0;
    int order = 0;
    auto operator<=>(const JetVar&) const = default;
};

// Sorted (JetVar, exponent) list, no zero exponents.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<JetVar, int>> factors); // normalises

    const std::vector<std::pair<JetVar, int>>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int exponent(JetVar v) const;
    int degree() const;
    Monomial operator*(const Monomial& o) const;
    Monomial pow(int e) const;
    Monomial without(JetVar v) const;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<std::pair<JetVar, int>> f_;
};

class DiffPoly {
public:
    using TermMap = std::map<Monomial, GaussianRational>;

    explicit DiffPoly(RingPtr ring) : ring_(std::move(ring)) {}
    DiffPoly(RingPtr ring, const GaussianRational& c);

    static DiffPoly var(RingPtr ring, const std::string& name, int order = 0, int exp = 1);
    static DiffPoly monomial(RingPtr ring, const Monomial& m, const GaussianRational& c);

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const; // only the unit monomial
    bool is_x_independent() const; // built from constant symbols only
    GaussianRational constant_term() const;
    GaussianRational coeff(const Monomial& m) const;
    int max_order(int var) const; // -1 when var does not occur
    bool has_negative_exponent() const;

    void add_term(const Monomial& m, const GaussianRational& c);

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const GaussianRational& c);

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const GaussianRational& c) { return a *= c; }
    friend DiffPoly operator*(const GaussianRational& c, DiffPoly a) { return a *= c; }
    DiffPoly operator-() const;

    friend bool operator==(const DiffPoly& a, const DiffPoly& b);
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

    DiffPoly pow(unsigned e) const;

private:
    void check_ring(const DiffPoly& o) const;
    RingPtr ring_;
    TermMap terms_;
};

DiffPoly add(const DiffPoly& a, const DiffPoly& b);
DiffPoly mul(const DiffPoly& a, const DiffPoly& b);

DiffPoly total_derivative(const DiffPoly& p);
DiffPoly total_derivative(const DiffPoly& p, int times);
inline DiffPoly D(const DiffPoly& p, int times = 1) { return total_derivative(p, times); }

// <psi, phi> = psi' phi + 2 psi phi'
DiffPoly bracket(const DiffPoly& psi, const DiffPoly& phi);

struct NotExact : std::runtime_error {
    explicit NotExact(DiffPoly rem);
    DiffPoly remainder;
};

struct IntegrationResult {
    bool exact;
    DiffPoly primitive; // D(primitive) = integrand - remainder
    DiffPoly remainder; // graded pieces with no primitive
};

IntegrationResult try_integrate(const DiffPoly& p);
// Constant-free primitive; throws NotExact with the unintegrable part.
DiffPoly integrate_exact(const DiffPoly& p);

// Images for base symbols; unmapped symbols go to the same-named symbol of the target.
using SubstitutionMap = std::map<std::string, DiffPoly>;
DiffPoly substitute(const DiffPoly& p, const SubstitutionMap& images, const RingPtr& target);

struct RewriteRule {
    JetVar target;
    DiffPoly replacement;
};

struct ReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rewrites every jet of a ruled base at or above the rule's order, using the
// derivative closure of the rule, until no such jet remains.
DiffPoly reduce_modulo(const DiffPoly& p, const std::vector<RewriteRule>& rules, int max_passes = 200);

// Lowest-terms exact linear solve over GaussianRational; empty when inconsistent.
// Free unknowns are set to zero.
bool solve_linear(std::vector<std::vector<GaussianRational>> a, std::vector<GaussianRational> b,
                  std::vector<GaussianRational>& x);

} // namespace soliton
