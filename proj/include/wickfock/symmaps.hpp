#pragma once

#include <map>

#include "wickfock/config.hpp"
#include "wickfock/symbol.hpp"
#include "wickfock/weight.hpp"

namespace wickfock {

// ---------------------------------------------------------------------------
// Symbol transforms between the weyl and wick pictures.
//
// The backward map (wick -> weyl) has the exact finite form
//
//   a_weyl(x,-xi) = sum_{|alpha| <= N} (-1)^{|alpha|} / (2^{|alpha|} alpha!)
//                   (d_z^alpha dbar_w^alpha a)(z/sqrt2, z/sqrt2),   z = x + i xi,
//
// which terminates for polynomials (mixed derivatives vanish beyond the
// degree). The forward map inverts it: the correction sum is unitriangular
// in total degree, so the inverse is the finite Neumann series of the
// degree-lowering part composed with the exact linear change of variables.
// ---------------------------------------------------------------------------

Symbol wick_to_weyl(const Symbol& a);
Symbol weyl_to_wick(const Symbol& a_weyl);

// Unique wick symbol with the same quantization as the antiwick symbol a0
// (multiply-then-project). Computed by commuting the anti-normal order into
// normal order; gaussian_reduce(a0) evaluates the defining integral and is
// the cross-check path.
Symbol antiwick_to_wick(const Symbol& a0);

// Expansion of a wick operator in antiwick operators:
//   Op(a) = sum_{|alpha| <= N} ((-1)^{|alpha|}/alpha!) Op_aw(a_alpha) + Op(remainder),
//   a_alpha(w) = (d_z^alpha dbar_w^alpha a)(w,w).
// For polynomial a the remainder is exactly zero once N >= deg_z(a).
struct ExpansionResult {
    std::map<MultiIndex, Symbol, GradedLexLess> coefficients; // alpha -> antiwick symbol
    unsigned order = 0;
    Symbol remainder; // wick symbol, exact
};
ExpansionResult wick_to_antiwick_expansion(const Symbol& a, unsigned order);

// Top-degree parts: the weyl principal symbol and its wick counterpart
//   a_p(z,w) = 2^{-N/2} sum_{|alpha+beta|=N} c(alpha,beta) i^{|beta|}
//              (z + conj(w))^alpha (z - conj(w))^beta.
// The wick part equals the top-degree part of weyl_to_wick(a_weyl).
std::pair<Symbol, Symbol> principal_symbols(const Symbol& a_weyl);

// ---------------------------------------------------------------------------
// Ellipticity / hypoellipticity diagnostics. These are falsifiers over
// finite point sets, not proofs.
// ---------------------------------------------------------------------------

enum class EllipticityKind { elliptic, weakly_elliptic, hypoelliptic, fail };
std::string ellipticity_kind_name(EllipticityKind k);

struct EllipticityReport {
    EllipticityKind kind = EllipticityKind::fail;
    double min_sphere = 0.0;        // min |symbol| over the probed sphere
    std::vector<double> radii;      // radii probed
    WeightSpec omega;
    double rho = 0.0;
    double rho0 = 0.0;
    double fitted_upper = 0.0;      // smallest C in the derivative-quotient bound
    double fitted_lower = 0.0;      // largest c in the weight lower bound
    double fitted_order = 0.0;      // heuristic weak-ellipticity exponent
    double fit_residual = 0.0;      // rms residual of the exponent fit
    bool pass = false;

    std::string to_json() const;
};

// Deterministic quasi-uniform points on the unit sphere of R^{real_dim};
// the set is closed under negation of the second half of the coordinates.
std::vector<std::vector<double>> sphere_points(std::size_t real_dim, std::size_t count);

// Min of |p| over the unit sphere for a homogeneous symbol. Wick symbols
// are restricted to the diagonal z = w; weyl symbols are evaluated on the
// real sphere. Elliptic iff the min exceeds elliptic_tol * coeff norm.
EllipticityReport elliptic_check(const Symbol& principal, std::size_t samples = 4096,
                                 const ToleranceConfig& cfg = {});

// Shell-grid hypoellipticity falsifier: derivative-quotient bounds up to
// |alpha+beta| <= cfg.hypo_derivative_order and the weighted lower bound of
// order rho0. Reports the fitted constants.
EllipticityReport hypoelliptic_diagnostic(const Symbol& a, double rho, double rho0,
                                          const WeightSpec& omega, double R,
                                          const GridSpec& grid,
                                          const ToleranceConfig& cfg = {});

// Exact diagonal comparison: difference between the wick transform on the
// diagonal and the rescaled weyl symbol, as a polynomial in (w, conj(w)).
// Its total degree drops by at least two.
struct DiagDifference {
    Symbol difference;   // antiwick-shaped
    int degree = -1;     // -1 for identically zero
    int weyl_degree = -1;
};
DiagDifference diag_difference(const Symbol& a_weyl);

} // namespace wickfock
