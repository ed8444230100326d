#pragma once

#include "wickfock/fock.hpp"
#include "wickfock/symbol.hpp"

namespace wickfock {

// Normal-ordered polynomial operator sum coeff * z^create d^annihilate,
// in bijection with wick symbols via z^b conj(w)^g <-> z^b d^g.
class NormalOrderedOp {
public:
    NormalOrderedOp() : dim_(0) {}
    explicit NormalOrderedOp(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::vector<NOTerm>& terms() const { return terms_; }

    void add_term(const MultiIndex& create, const MultiIndex& annihilate,
                  const ExactCoeff& coeff);

    Poly apply(const Poly& f) const { return apply_normal_ordered(terms_, f); }
    ExactFockMatrix matrix(unsigned cutoff) const {
        return matrix_of(terms_, dim_, cutoff);
    }

    // The wick symbol whose quantization this operator is.
    Symbol to_wick_symbol() const;

    std::string to_json() const;
    static NormalOrderedOp from_json(const std::string& text);

private:
    std::size_t dim_;
    std::vector<NOTerm> terms_;
};

// Term-by-term replacement conj(w)^g -> d^g. Exact and invertible.
NormalOrderedOp wick_quantize(const Symbol& a);

// Anti-normal ordering d^g (z^b . ), commuted into normal order with the
// Leibniz rule
//   d^g (z^b F) = sum_{k <= min(b,g)} C(g,k) b!/(b-k)! z^{b-k} d^{g-k} F.
NormalOrderedOp antiwick_quantize(const Symbol& a0);

// Kernel value a(z,w) e^{(z,w)}. The exponent is clamped at +-700 before
// exponentiation; `saturated` reports when the clamp was hit.
struct KernelValue {
    std::complex<double> value;
    bool saturated;
};
KernelValue kernel_eval(const Symbol& a, const ComplexPoint& z, const ComplexPoint& w);

// Diagonal (Berezin) symbol a(w,w): the same coefficients reread as a
// polynomial in (w, conj(w)).
Symbol berezin_diag(const Symbol& a);

} // namespace wickfock
