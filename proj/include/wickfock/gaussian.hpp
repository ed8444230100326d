#pragma once

#include "wickfock/symbol.hpp"

namespace wickfock {

// Normalized Gaussian monomial moment
//
//   (s/pi)^d integral w^beta conj(w)^gamma exp(-s|w|^2) dlambda(w)
//     = delta_{beta,gamma} beta! / s^{|beta|},   s > 0 rational.
ExactCoeff gaussian_moment(const MultiIndex& beta, const MultiIndex& gamma,
                           const mpq_class& s);

// Exact reduction of the shifted-Gaussian integral
//
//   q(u, conj(v)) = pi^{-d} integral p(w, conj(w))
//                   exp(-(w - u, w - v)) dlambda(w)
//
// for a polynomial p given as an antiwick-shaped symbol in (w, conj(w)).
// Computed by centering w = u + t and applying the closed-form moment
//
//   pi^{-d} integral t^beta conj(t)^gamma exp(-|t|^2 - (t,c)) dlambda(t)
//     = [beta <= gamma] (gamma!/(gamma-beta)!) (-conj(c))^{gamma-beta},
//
// with c = u - v. Every conj(u) introduced by the shift cancels in the
// result; this is asserted. The result is wick-shaped in (u, conj(v)).
Symbol gaussian_reduce(const Symbol& p);

// Shared moment-integration core. `poly` lives over nvars variables of
// which [t_off, t_off + d) are t and [tbar_off, tbar_off + d) are conj(t);
// each t/conj(t) monomial is replaced via the moment formula above, with
// minus_cbar[j] the polynomial standing for -conj(c_j) over the remaining
// variables. Returns a polynomial over the same variable space with all
// t exponents zero.
Poly gaussian_pair_integral(const Poly& poly, std::size_t d, std::size_t t_off,
                            std::size_t tbar_off, const std::vector<Poly>& minus_cbar);

} // namespace wickfock
