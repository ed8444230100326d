#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "wickfock/poly.hpp"

namespace wickfock {

using ComplexPoint = std::vector<std::complex<double>>;

// The three polynomial symbol families share one coefficient layout: a
// polynomial in two groups of d formal variables,
//
//   wick      a(z, w)     = sum c(b,g) z^b conj(w)^g
//   weyl      a(x, xi)    = sum c(b,g) x^b xi^g
//   antiwick  a0(w)       = sum c(b,g) w^b conj(w)^g
//
// Group A occupies variables [0, d), group B variables [d, 2d). For wick
// and antiwick symbols group B carries conjugate exponents, so conjugate
// analyticity is structural: there is no place to store a plain w power.
enum class SymbolKind { wick, weyl, antiwick };

std::string kind_name(SymbolKind k);
SymbolKind kind_from_name(const std::string& name);

class Symbol {
public:
    Symbol() : kind_(SymbolKind::wick), dim_(0), poly_(0) {}
    Symbol(SymbolKind kind, std::size_t dim)
        : kind_(kind), dim_(dim), poly_(2 * dim) {}
    Symbol(SymbolKind kind, std::size_t dim, Poly poly);

    SymbolKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    const Poly& poly() const { return poly_; }

    bool is_zero() const { return poly_.is_zero(); }
    int degree() const { return poly_.degree(); }
    int degree_a() const { return poly_.degree_in(0, dim_); }        // deg_z / deg_x / deg_w
    int degree_b() const { return poly_.degree_in(dim_, 2 * dim_); } // deg_wbar / deg_xi

    // Homogeneous of the stated total degree (zero symbol counts as such).
    bool is_homogeneous() const;

    void add_term(const MultiIndex& b, const MultiIndex& g, const ExactCoeff& c);
    ExactCoeff coeff(const MultiIndex& b, const MultiIndex& g) const;

    Symbol operator-() const { return {kind_, dim_, -poly_}; }
    Symbol& operator+=(const Symbol& o);
    Symbol& operator-=(const Symbol& o);
    friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
    friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
    friend Symbol operator*(const Symbol& a, const Symbol& b);

    Symbol scaled(const ExactCoeff& c) const { return {kind_, dim_, poly_.scaled(c)}; }

    Symbol derivative_a(const MultiIndex& orders) const;  // d/dz^b (resp. d/dx^b, d/dw^b)
    Symbol derivative_b(const MultiIndex& orders) const;  // conjugate side (resp. d/dxi^g)

    // Coefficient-wise complex conjugation. For a weyl symbol this is the
    // symbol of the complex conjugate function.
    Symbol conj_coeffs() const { return {kind_, dim_, poly_.conj_coeffs()}; }

    // Adjoint symbol (z,w) -> conj(a(w,z)): swap the exponent groups and
    // conjugate coefficients. Wick symbols only.
    Symbol adjoint() const;

    // a has real values on the diagonal (wick/antiwick) or on R^{2d} (weyl).
    bool is_real_symmetric() const;

    // Raw evaluation: group B values are substituted as stored, i.e. the
    // caller passes conj(w) for wick/antiwick symbols.
    std::complex<double> eval_raw(std::span<const std::complex<double>> a,
                                  std::span<const std::complex<double>> b) const;

    // Kind-aware evaluation.
    std::complex<double> eval_wick(const ComplexPoint& z, const ComplexPoint& w) const;
    std::complex<double> eval_weyl(std::span<const double> x, std::span<const double> xi) const;
    std::complex<double> eval_diag(const ComplexPoint& w) const;  // a(w,w) resp. a0(w)

    // Top total-degree homogeneous part.
    Symbol principal_part() const;

    double coeff_norm() const { return poly_.coeff_norm(); }

    // Serialization; round trips bit-exactly.
    std::string to_json() const;
    static Symbol from_json(const std::string& text);

    std::string to_string() const;

    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.poly_ == b.poly_;
    }
    friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }

private:
    SymbolKind kind_;
    std::size_t dim_;
    Poly poly_;
};

// Convenience builders for tests and the CLI.
Symbol symbol_term(SymbolKind kind, std::size_t dim, const MultiIndex& b,
                   const MultiIndex& g, const ExactCoeff& c);

void require_kind(const Symbol& s, SymbolKind k, const char* where);
void require_same_space(const Symbol& a, const Symbol& b, const char* where);

} // namespace wickfock
