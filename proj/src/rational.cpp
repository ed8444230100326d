#include "wickfock/rational.hpp"

#include <cmath>
#include <numbers>

#include "wickfock/errors.hpp"

namespace wickfock {

namespace {

// Gaussian-rational helpers on (re, im) pairs.
struct GQ {
    mpq_class re, im;
};

GQ gq_mul(const GQ& a, const GQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GQ gq_inv(const GQ& a) {
    mpq_class n = a.re * a.re + a.im * a.im;
    return {a.re / n, -a.im / n};
}

} // namespace

ExactCoeff ExactCoeff::rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return ExactCoeff(q);
}

ExactCoeff ExactCoeff::i() { return ExactCoeff(0, 1, 0, 0); }
ExactCoeff ExactCoeff::sqrt2() { return ExactCoeff(0, 0, 1, 0); }
ExactCoeff ExactCoeff::inv_sqrt2() { return ExactCoeff(0, 0, mpq_class(1, 2), 0); }

bool ExactCoeff::is_zero() const {
    return re_ == 0 && im_ == 0 && re_s2_ == 0 && im_s2_ == 0;
}

bool ExactCoeff::is_real() const { return im_ == 0 && im_s2_ == 0; }

ExactCoeff ExactCoeff::conj() const { return {re_, -im_, re_s2_, -im_s2_}; }

ExactCoeff ExactCoeff::inv() const {
    if (is_zero()) throw InputError("ExactCoeff: division by zero");
    // 1/(A + B*sqrt2) = (A - B*sqrt2) / (A^2 - 2 B^2), with A, B Gaussian
    // rationals. A^2 - 2B^2 is nonzero because sqrt2 is not in Q(i).
    GQ A{re_, im_}, B{re_s2_, im_s2_};
    GQ norm = gq_mul(A, A);
    GQ bb = gq_mul(B, B);
    norm.re -= 2 * bb.re;
    norm.im -= 2 * bb.im;
    GQ ninv = gq_inv(norm);
    GQ p = gq_mul(A, ninv);
    GQ q = gq_mul({-B.re, -B.im}, ninv);
    return {p.re, p.im, q.re, q.im};
}

std::complex<double> ExactCoeff::to_complex() const {
    const double s2 = std::numbers::sqrt2;
    return {re_.get_d() + s2 * re_s2_.get_d(), im_.get_d() + s2 * im_s2_.get_d()};
}

double ExactCoeff::abs_upper() const { return std::abs(to_complex()); }

ExactCoeff ExactCoeff::operator-() const { return {-re_, -im_, -re_s2_, -im_s2_}; }

ExactCoeff& ExactCoeff::operator+=(const ExactCoeff& o) {
    re_ += o.re_;
    im_ += o.im_;
    re_s2_ += o.re_s2_;
    im_s2_ += o.im_s2_;
    return *this;
}

ExactCoeff& ExactCoeff::operator-=(const ExactCoeff& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    re_s2_ -= o.re_s2_;
    im_s2_ -= o.im_s2_;
    return *this;
}

ExactCoeff& ExactCoeff::operator*=(const ExactCoeff& o) {
    // (A + B s)(C + D s) = (AC + 2BD) + (AD + BC) s,  s = sqrt2.
    GQ A{re_, im_}, B{re_s2_, im_s2_}, C{o.re_, o.im_}, D{o.re_s2_, o.im_s2_};
    GQ ac = gq_mul(A, C), bd = gq_mul(B, D), ad = gq_mul(A, D), bc = gq_mul(B, C);
    re_ = ac.re + 2 * bd.re;
    im_ = ac.im + 2 * bd.im;
    re_s2_ = ad.re + bc.re;
    im_s2_ = ad.im + bc.im;
    return *this;
}

ExactCoeff& ExactCoeff::operator/=(const ExactCoeff& o) { return *this *= o.inv(); }

std::string ExactCoeff::to_string() const {
    std::string s = rational_to_string(re_);
    if (im_ != 0) s += " + (" + rational_to_string(im_) + ")i";
    if (re_s2_ != 0) s += " + (" + rational_to_string(re_s2_) + ")sqrt2";
    if (im_s2_ != 0) s += " + (" + rational_to_string(im_s2_) + ")i*sqrt2";
    return s;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

mpq_class rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

} // namespace wickfock
