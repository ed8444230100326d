#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wickfock/symbol.hpp"

namespace wickfock {

// Orthonormal monomial basis e_alpha = z^alpha / sqrt(alpha!) of the
// truncated Fock space, enumerated in graded lexicographic order over
// |alpha| <= cutoff.
class FockBasis {
public:
    FockBasis() : dim_(0), cutoff_(0) {}
    FockBasis(std::size_t dim, unsigned cutoff);

    std::size_t dim() const { return dim_; }
    unsigned cutoff() const { return cutoff_; }
    std::size_t size() const { return index_.size(); }

    const MultiIndex& at(std::size_t i) const { return index_[i]; }
    // Position of alpha, or npos when |alpha| > cutoff.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position(const MultiIndex& alpha) const;

    friend bool operator==(const FockBasis& a, const FockBasis& b) {
        return a.dim_ == b.dim_ && a.cutoff_ == b.cutoff_;
    }

private:
    std::size_t dim_;
    unsigned cutoff_;
    std::vector<MultiIndex> index_;
    std::map<MultiIndex, std::size_t, GradedLexLess> pos_;
};

// One normal-ordered term coeff * z^create d^annihilate.
struct NOTerm {
    MultiIndex create;
    MultiIndex annihilate;
    ExactCoeff coeff;
};

// Element of the truncated space. Exact vectors carry monomial-basis
// coefficients (a polynomial), since orthonormal coordinates pick up
// sqrt(alpha!) factors that leave the coefficient field; floating vectors
// carry orthonormal coordinates.
class FockVector {
public:
    FockVector(FockBasis basis, Poly monomial_coeffs);               // exact
    FockVector(FockBasis basis, Eigen::VectorXcd orthonormal);       // floating

    const FockBasis& basis() const { return basis_; }
    bool is_exact() const { return exact_.has_value(); }

    const Poly& exact_poly() const;
    // Orthonormal coordinates; exact vectors are rescaled by sqrt(alpha!)
    // at this boundary.
    Eigen::VectorXcd to_float() const;

    FockVector apply(std::span<const NOTerm> op) const;
    std::complex<double> inner(const FockVector& other) const;
    double norm() const;

private:
    FockBasis basis_;
    std::optional<Poly> exact_;
    Eigen::VectorXcd float_;
};

// Exact image of a normal-ordered operator on an analytic polynomial
// (a Poly over d variables, coefficients in the monomial basis z^alpha).
Poly apply_normal_ordered(const NOTerm& term, const Poly& f);
Poly apply_normal_ordered(std::span<const NOTerm> op, const Poly& f);

// Exact Fock scalar product <F, G>_{A^2} = sum_alpha F_alpha conj(G_alpha) alpha!
// of analytic polynomials in monomial coordinates.
ExactCoeff fock_inner(const Poly& f, const Poly& g);

// Dense truncated operator matrix. Entries are stored exactly in the
// unnormalized monomial basis: column alpha holds the coefficients of
// Op z^alpha = sum_beta t[beta][alpha] z^beta. The orthonormal-basis
// matrix element is <Op e_alpha, e_beta> = t[beta][alpha] sqrt(beta!/alpha!);
// the square-root normalization enters only at the floating boundary,
// keeping the stored entries in Q(i)[sqrt2].
class ExactFockMatrix {
public:
    ExactFockMatrix() = default;
    explicit ExactFockMatrix(FockBasis basis);

    const FockBasis& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }
    unsigned band() const { return band_; }

    const ExactCoeff& at(std::size_t row, std::size_t col) const { return t_[row][col]; }
    void set(std::size_t row, std::size_t col, const ExactCoeff& v);

    ExactFockMatrix adjoint() const;
    ExactFockMatrix operator+(const ExactFockMatrix& o) const;
    ExactFockMatrix operator-(const ExactFockMatrix& o) const;
    ExactFockMatrix operator*(const ExactFockMatrix& o) const;
    ExactFockMatrix scaled(const ExactCoeff& c) const;

    bool operator==(const ExactFockMatrix& o) const;

    // Orthonormal-basis matrix element <Op e_col, e_row>, exact up to the
    // final sqrt of a rational.
    std::complex<double> element(std::size_t row, std::size_t col) const;
    Eigen::MatrixXcd to_float() const;

private:
    FockBasis basis_;
    std::vector<std::vector<ExactCoeff>> t_;
    unsigned band_ = 0;
    friend ExactFockMatrix matrix_of(std::span<const NOTerm>, const FockBasis&);
};

// Truncated matrix of a normal-ordered operator; entries are exact pairings,
// unaffected by the cutoff.
ExactFockMatrix matrix_of(std::span<const NOTerm> op, const FockBasis& basis);
ExactFockMatrix matrix_of(std::span<const NOTerm> op, std::size_t dim, unsigned cutoff);

// M = H + S with H self-adjoint and S skew-adjoint, exactly.
std::pair<ExactFockMatrix, ExactFockMatrix> hermitian_split(const ExactFockMatrix& m);

// Smallest eigenvalue of a self-adjoint matrix; throws PreconditionError if
// the input deviates from self-adjointness by more than tol (relative to
// the matrix scale).
double min_eig_sym(const Eigen::MatrixXcd& h, double tol = 1e-10);

// Operator norm (largest singular value).
double operator_norm(const Eigen::MatrixXcd& m);

// CSV dump: header row of basis multi-indices, complex entries "re+imi"
// with 17 significant digits.
void matrix_to_csv(const ExactFockMatrix& m, std::ostream& os);

} // namespace wickfock
