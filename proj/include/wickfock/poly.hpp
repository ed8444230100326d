#pragma once

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "wickfock/multiindex.hpp"
#include "wickfock/rational.hpp"

namespace wickfock {

// Sparse multivariate polynomial over Q(i)[sqrt2] in a fixed number of
// formal variables. Terms are kept in graded lexicographic order and zero
// coefficients are never stored. Values are immutable in spirit: every
// operation returns a fresh polynomial.
class Poly {
public:
    using TermMap = std::map<MultiIndex, ExactCoeff, GradedLexLess>;

    Poly() : nvars_(0) {}
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, ExactCoeff c);
    static Poly variable(std::size_t nvars, std::size_t j);
    static Poly monomial(std::size_t nvars, const MultiIndex& e, ExactCoeff c);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // -1 for the zero polynomial.
    int degree() const;
    // Max exponent sum over the variable window [lo, hi).
    int degree_in(std::size_t lo, std::size_t hi) const;

    ExactCoeff coeff(const MultiIndex& e) const;
    void add_term(const MultiIndex& e, const ExactCoeff& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);

    Poly scaled(const ExactCoeff& c) const;
    Poly derivative(std::size_t var, unsigned order = 1) const;
    Poly derivative(const MultiIndex& orders, std::size_t var_offset = 0) const;

    // Substitute variable j by images[j]; the images must agree on their
    // common variable count, which becomes the result's.
    Poly substitute(const std::vector<Poly>& images) const;

    std::complex<double> eval(std::span<const std::complex<double>> x) const;

    // Largest coefficient magnitude, 0 for the zero polynomial.
    double coeff_norm() const;

    Poly conj_coeffs() const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string to_string(const std::function<std::string(std::size_t)>& var_name) const;

private:
    std::size_t nvars_;
    TermMap terms_;
};

} // namespace wickfock
