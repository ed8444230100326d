#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wickfock {

// Multi-index in N^d. Factorials and binomials are arbitrary-precision;
// the only degree cap is memory.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t d) : e_(d, 0) {}
    MultiIndex(std::initializer_list<unsigned> init) : e_(init) {}
    explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) {}

    static MultiIndex unit(std::size_t d, std::size_t j);

    std::size_t dim() const { return e_.size(); }
    unsigned operator[](std::size_t j) const { return e_[j]; }
    unsigned& operator[](std::size_t j) { return e_[j]; }
    const std::vector<unsigned>& entries() const { return e_; }

    unsigned total() const;               // |alpha|
    mpz_class factorial() const;          // alpha!
    bool leq(const MultiIndex& o) const;  // componentwise <=
    MultiIndex plus(const MultiIndex& o) const;
    MultiIndex minus(const MultiIndex& o) const;  // requires o.leq(*this)

    // alpha! / (alpha - kappa)!   (falling factorial, kappa <= alpha)
    mpz_class falling(const MultiIndex& kappa) const;
    // product of binomials C(alpha_j, kappa_j)
    mpz_class binomial(const MultiIndex& kappa) const;

    // Iterate kappa over {0,...,alpha_1} x ... x {0,...,alpha_d}.
    // Returns false when the iteration wraps back to zero.
    bool next_below(const MultiIndex& bound);

    std::string to_string() const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }

private:
    std::vector<unsigned> e_;
};

// Graded lexicographic order: total degree first, then lexicographic.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return graded_lex_less(a, b);
    }
};

// All multi-indices of dimension d with |alpha| <= cutoff, graded lex order.
std::vector<MultiIndex> enumerate_multiindices(std::size_t d, unsigned cutoff);

mpz_class factorial(unsigned n);

} // namespace wickfock
