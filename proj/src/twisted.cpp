#include "wickfock/twisted.hpp"

#include "wickfock/errors.hpp"
#include "wickfock/gaussian.hpp"
#include "wickfock/symmaps.hpp"

namespace wickfock {

Symbol twisted_product(const Symbol& a1, const Symbol& a2) {
    require_kind(a1, SymbolKind::wick, "twisted_product");
    require_kind(a2, SymbolKind::wick, "twisted_product");
    if (a1.dim() != a2.dim()) throw InputError("twisted_product: dimension mismatch");
    const std::size_t d = a1.dim();

    int cap1 = a1.degree_b(), cap2 = a2.degree_a();
    unsigned cap = static_cast<unsigned>(std::max(0, std::min(cap1, cap2)));
    MultiIndex bound(d);
    for (std::size_t j = 0; j < d; ++j) bound[j] = cap;

    Symbol r(SymbolKind::wick, d);
    MultiIndex kappa(d);
    do {
        Symbol left = a1.derivative_b(kappa);
        if (left.is_zero()) continue;
        Symbol right = a2.derivative_a(kappa);
        if (right.is_zero()) continue;
        ExactCoeff inv_fact(mpq_class(1) / mpq_class(kappa.factorial()));
        r += (left * right).scaled(inv_fact);
    } while (kappa.next_below(bound));
    return r;
}

Symbol twisted_product_oracle(const Symbol& a1, const Symbol& a2) {
    require_kind(a1, SymbolKind::wick, "twisted_product_oracle");
    require_kind(a2, SymbolKind::wick, "twisted_product_oracle");
    if (a1.dim() != a2.dim()) throw InputError("twisted_product_oracle: dimension mismatch");
    const std::size_t d = a1.dim();

    // Scratch layout: [0,d) t  [d,2d) conj(t)  [2d,3d) z  [3d,4d) conj(z)
    //                 [4d,5d) conj(w).
    // The integration point is centered at z, so u = z + t and
    // conj(u) = conj(z) + conj(t); with c = z - w the moment formula
    // substitutes -conj(c) = conj(w) - conj(z).
    const std::size_t n = 5 * d;
    auto var = [&](std::size_t j) { return Poly::variable(n, j); };

    std::vector<Poly> img1(2 * d, Poly(n)), img2(2 * d, Poly(n));
    for (std::size_t j = 0; j < d; ++j) {
        img1[j] = var(2 * d + j);                  // a1 first slot stays z
        img1[d + j] = var(3 * d + j) + var(d + j); // a1 second slot becomes conj(u)
        img2[j] = var(2 * d + j) + var(j);         // a2 first slot becomes u
        img2[d + j] = var(4 * d + j);              // a2 second slot stays conj(w)
    }
    Poly integrand = a1.poly().substitute(img1) * a2.poly().substitute(img2);

    std::vector<Poly> minus_cbar;
    minus_cbar.reserve(d);
    for (std::size_t j = 0; j < d; ++j)
        minus_cbar.push_back(var(4 * d + j) - var(3 * d + j));

    Poly integrated = gaussian_pair_integral(integrand, d, 0, d, minus_cbar);

    Symbol out(SymbolKind::wick, d);
    for (const auto& [e, c] : integrated.terms()) {
        MultiIndex b(d), g(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (e[j] != 0 || e[d + j] != 0)
                throw InternalError("twisted_product_oracle: unintegrated exponent");
            if (e[3 * d + j] != 0)
                throw InternalError("twisted_product_oracle: conj(z) exponents did not cancel");
            b[j] = e[2 * d + j];
            g[j] = e[4 * d + j];
        }
        out.add_term(b, g, c);
    }
    return out;
}

bool product_rule_check(const Symbol& a1, const Symbol& a2, std::size_t j) {
    if (j >= a1.dim()) throw InputError("product_rule_check: coordinate out of range");
    MultiIndex ej = MultiIndex::unit(a1.dim(), j);

    Symbol lhs_z = twisted_product(a1, a2).derivative_a(ej);
    Symbol rhs_z = twisted_product(a1.derivative_a(ej), a2) +
                   twisted_product(a1, a2.derivative_a(ej));
    if (lhs_z != rhs_z) return false;

    Symbol lhs_w = twisted_product(a1, a2).derivative_b(ej);
    Symbol rhs_w = twisted_product(a1.derivative_b(ej), a2) +
                   twisted_product(a1, a2.derivative_b(ej));
    return lhs_w == rhs_w;
}

Symbol weyl_product(const Symbol& a, const Symbol& b) {
    require_kind(a, SymbolKind::weyl, "weyl_product");
    require_kind(b, SymbolKind::weyl, "weyl_product");
    return wick_to_weyl(twisted_product(weyl_to_wick(a), weyl_to_wick(b)));
}

} // namespace wickfock
