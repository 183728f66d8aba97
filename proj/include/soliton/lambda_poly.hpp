#pragma once

#include <vector>

#include "soliton/diffring.hpp"

namespace soliton {

// Polynomial in the spectral parameter lambda with DiffPoly coefficients.
// Storage is ascending (c_[j] multiplies lambda^j); descending() gives the
// leading-first view.
class LambdaPoly {
public:
    explicit LambdaPoly(RingPtr ring) : ring_(std::move(ring)) {}
    LambdaPoly(const DiffPoly& c0) : ring_(c0.ring()), c_{c0} { trim(); }
    // leading-first coefficients: lead * lambda^(k-1) + ... + last
    static LambdaPoly from_descending(RingPtr ring, const std::vector<DiffPoly>& coeffs);
    static LambdaPoly lambda(RingPtr ring, int power = 1);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
    DiffPoly coeff(int power) const; // zero outside range
    DiffPoly leading() const { return coeff(degree()); }
    std::vector<DiffPoly> descending() const;
    const std::vector<DiffPoly>& ascending() const { return c_; }

    void set_coeff(int power, const DiffPoly& c);

    LambdaPoly& operator+=(const LambdaPoly& o);
    LambdaPoly& operator-=(const LambdaPoly& o);
    friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
    friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
    friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b);
    friend LambdaPoly operator*(const LambdaPoly& a, const DiffPoly& b);
    friend LambdaPoly operator*(const GaussianRational& c, const LambdaPoly& a);
    LambdaPoly operator-() const;

    friend bool operator==(const LambdaPoly& a, const LambdaPoly& b);
    friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

private:
    void trim();
    RingPtr ring_;
    std::vector<DiffPoly> c_;
};

LambdaPoly total_derivative(const LambdaPoly& p, int times = 1);
inline LambdaPoly D(const LambdaPoly& p, int times = 1) { return total_derivative(p, times); }
LambdaPoly bracket(const LambdaPoly& psi, const LambdaPoly& phi);

} // namespace soliton
