#include "soliton/lambda_poly.hpp"

namespace soliton {

LambdaPoly LambdaPoly::from_descending(RingPtr ring, const std::vector<DiffPoly>& coeffs) {
    LambdaPoly p(ring);
    const int n = static_cast<int>(coeffs.size());
    for (int k = 0; k < n; ++k) p.set_coeff(n - 1 - k, coeffs[k]);
    return p;
}

LambdaPoly LambdaPoly::lambda(RingPtr ring, int power) {
    LambdaPoly p(ring);
    p.set_coeff(power, DiffPoly(ring, GaussianRational(1)));
    return p;
}

DiffPoly LambdaPoly::coeff(int power) const {
    if (power < 0 || power >= static_cast<int>(c_.size())) return DiffPoly(ring_);
    return c_[power];
}

std::vector<DiffPoly> LambdaPoly::descending() const {
    if (c_.empty()) return {DiffPoly(ring_)};
    return {c_.rbegin(), c_.rend()};
}

void LambdaPoly::set_coeff(int power, const DiffPoly& c) {
    if (power < 0) throw std::invalid_argument("negative lambda power");
    if (!c.ring()->same_as(*ring_)) throw RingMismatch("lambda coefficient from a different ring");
    if (power >= static_cast<int>(c_.size())) c_.resize(power + 1, DiffPoly(ring_));
    c_[power] = c;
    trim();
}

void LambdaPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
    if (!o.ring_->same_as(*ring_)) throw RingMismatch("lambda polynomials from different rings");
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), DiffPoly(ring_));
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
    trim();
    return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o) {
    if (!o.ring_->same_as(*ring_)) throw RingMismatch("lambda polynomials from different rings");
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), DiffPoly(ring_));
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
    trim();
    return *this;
}

LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    if (!a.ring_->same_as(*b.ring_)) throw RingMismatch("lambda polynomials from different rings");
    LambdaPoly out(a.ring_);
    if (a.c_.empty() || b.c_.empty()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, DiffPoly(a.ring_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    out.trim();
    return out;
}

LambdaPoly operator*(const LambdaPoly& a, const DiffPoly& b) { return a * LambdaPoly(b); }

LambdaPoly operator*(const GaussianRational& c, const LambdaPoly& a) {
    LambdaPoly out = a;
    for (auto& x : out.c_) x *= c;
    out.trim();
    return out;
}

LambdaPoly LambdaPoly::operator-() const { return GaussianRational(-1) * *this; }

bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    if (!a.ring_->same_as(*b.ring_) || a.c_.size() != b.c_.size()) return false;
    for (std::size_t j = 0; j < a.c_.size(); ++j)
        if (a.c_[j] != b.c_[j]) return false;
    return true;
}

LambdaPoly total_derivative(const LambdaPoly& p, int times) {
    LambdaPoly out(p.ring());
    for (int j = 0; j <= p.degree(); ++j) out.set_coeff(j, D(p.coeff(j), times));
    return out;
}

LambdaPoly bracket(const LambdaPoly& psi, const LambdaPoly& phi) {
    return D(psi) * phi + GaussianRational(2) * (psi * D(phi));
}

} // namespace soliton
