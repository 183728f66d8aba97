#include "soliton/rational.hpp"

#include <stdexcept>

namespace soliton {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::frac(long p, long q, long ip, long iq) {
    if (q == 0 || iq == 0) throw std::domain_error("zero denominator");
    return {mpq_class(p, q), mpq_class(ip, iq)};
}

static mpq_class parse_q(const std::string& s) {
    mpq_class r;
    if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
    if (sgn(r.get_den()) == 0) throw std::invalid_argument("bad rational: '" + s + "'");
    r.canonicalize();
    return r;
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im) {
    return {parse_q(re), parse_q(im)};
}

GaussianRational GaussianRational::inverse() const {
    mpq_class n = re_ * re_ + im_ * im_;
    if (sgn(n) == 0) throw std::domain_error("division by zero");
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) throw std::domain_error("division by zero");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string ipart;
    if (im_ == 1) ipart = "i";
    else if (im_ == -1) ipart = "-i";
    else ipart = rational_str(im_) + "i";
    if (sgn(re_) == 0) return ipart;
    if (sgn(im_) > 0) return rational_str(re_) + "+" + ipart;
    return rational_str(re_) + ipart;
}

} // namespace soliton
