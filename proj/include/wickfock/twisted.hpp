#pragma once

#include "wickfock/symbol.hpp"

namespace wickfock {

// Symbol-level operator composition: the product is the unique wick symbol
// with quantization Op(a1) o Op(a2). Production path is the finite
// normal-ordering sum
//
//   a1 # a2 = sum_kappa (1/kappa!) (dbar_w^kappa a1) (d_z^kappa a2),
//
// obtained by commuting the annihilation block of a1 past the creation
// block of a2.
Symbol twisted_product(const Symbol& a1, const Symbol& a2);

// Independent evaluation of the same product through the Gaussian
// composition integral
//
//   pi^{-d} integral a1(z,u) a2(u,w) exp(-(z-u, w-u)) dlambda(u),
//
// reduced exactly by the shifted-moment formula. Must agree with
// twisted_product coefficientwise.
Symbol twisted_product_oracle(const Symbol& a1, const Symbol& a2);

// Verifies both derivation identities
//   d_{z_j}(a1 # a2)    = (d_{z_j} a1) # a2    + a1 # (d_{z_j} a2)
//   dbar_{w_j}(a1 # a2) = (dbar_{w_j} a1) # a2 + a1 # (dbar_{w_j} a2)
// exactly.
bool product_rule_check(const Symbol& a1, const Symbol& a2, std::size_t j);

// Induced product on weyl symbols: transport both factors to the wick
// side, compose, transport back.
Symbol weyl_product(const Symbol& a, const Symbol& b);

} // namespace wickfock
