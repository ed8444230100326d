#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace wickfock {

// Element of the field Q(i)[sqrt2]:
//
//   value = (re + i*im) + (re_s2 + i*im_s2) * sqrt(2)
//
// with all four components arbitrary-precision rationals. The field is
// closed under the generator substitutions x -> (z + conj(w))/sqrt(2),
// xi -> i(z - conj(w))/sqrt(2) and their inverses, so every transform in
// the library stays exact. sqrt(2) is irrational over Q(i), hence the
// representation is unique and zero iff all components vanish.
class ExactCoeff {
public:
    ExactCoeff() : re_(0), im_(0), re_s2_(0), im_s2_(0) {}
    ExactCoeff(long n) : re_(n), im_(0), re_s2_(0), im_s2_(0) {}
    ExactCoeff(const mpq_class& re) : re_(re), im_(0), re_s2_(0), im_s2_(0) {}
    ExactCoeff(mpq_class re, mpq_class im, mpq_class re_s2, mpq_class im_s2)
        : re_(std::move(re)), im_(std::move(im)),
          re_s2_(std::move(re_s2)), im_s2_(std::move(im_s2)) {}

    static ExactCoeff rational(long num, long den);
    static ExactCoeff i();          // imaginary unit
    static ExactCoeff sqrt2();      // sqrt(2)
    static ExactCoeff inv_sqrt2();  // 1/sqrt(2) = sqrt(2)/2

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }
    const mpq_class& re_s2() const { return re_s2_; }
    const mpq_class& im_s2() const { return im_s2_; }

    bool is_zero() const;
    bool is_real() const;  // invariant under complex conjugation

    ExactCoeff conj() const;
    ExactCoeff inv() const;  // throws InputError on zero

    std::complex<double> to_complex() const;
    double abs_upper() const;  // |value| in double, for coefficient norms

    ExactCoeff operator-() const;
    ExactCoeff& operator+=(const ExactCoeff& o);
    ExactCoeff& operator-=(const ExactCoeff& o);
    ExactCoeff& operator*=(const ExactCoeff& o);
    ExactCoeff& operator/=(const ExactCoeff& o);

    friend ExactCoeff operator+(ExactCoeff a, const ExactCoeff& b) { return a += b; }
    friend ExactCoeff operator-(ExactCoeff a, const ExactCoeff& b) { return a -= b; }
    friend ExactCoeff operator*(ExactCoeff a, const ExactCoeff& b) { return a *= b; }
    friend ExactCoeff operator/(ExactCoeff a, const ExactCoeff& b) { return a /= b; }

    friend bool operator==(const ExactCoeff& a, const ExactCoeff& b) {
        return a.re_ == b.re_ && a.im_ == b.im_ &&
               a.re_s2_ == b.re_s2_ && a.im_s2_ == b.im_s2_;
    }
    friend bool operator!=(const ExactCoeff& a, const ExactCoeff& b) { return !(a == b); }

    std::string to_string() const;

private:
    mpq_class re_, im_, re_s2_, im_s2_;
};

// Canonical "p/q" string for one rational component (GMP canonical form).
std::string rational_to_string(const mpq_class& q);
mpq_class rational_from_string(const std::string& s);

} // namespace wickfock
