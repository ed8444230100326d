#include "wickfock/gaussian.hpp"

#include "wickfock/errors.hpp"

namespace wickfock {

ExactCoeff gaussian_moment(const MultiIndex& beta, const MultiIndex& gamma,
                           const mpq_class& s) {
    if (beta.dim() != gamma.dim()) throw InputError("gaussian_moment: dimension mismatch");
    if (s <= 0) throw InputError("gaussian_moment: s must be positive");
    if (beta != gamma) return ExactCoeff();
    mpq_class v(beta.factorial());
    for (unsigned k = 0; k < beta.total(); ++k) v /= s;
    return ExactCoeff(v);
}

Poly gaussian_pair_integral(const Poly& poly, std::size_t d, std::size_t t_off,
                            std::size_t tbar_off, const std::vector<Poly>& minus_cbar) {
    if (minus_cbar.size() != d) throw InputError("gaussian_pair_integral: c dimension mismatch");
    const std::size_t n = poly.nvars();
    Poly out(n);
    for (const auto& [e, c] : poly.terms()) {
        MultiIndex beta(d), gamma(d), rest = e;
        for (std::size_t j = 0; j < d; ++j) {
            beta[j] = e[t_off + j];
            gamma[j] = e[tbar_off + j];
            rest[t_off + j] = 0;
            rest[tbar_off + j] = 0;
        }
        if (!beta.leq(gamma)) continue;
        MultiIndex diff = gamma.minus(beta);
        Poly term = Poly::monomial(n, rest, c * ExactCoeff(mpq_class(gamma.falling(beta))));
        for (std::size_t j = 0; j < d; ++j)
            for (unsigned k = 0; k < diff[j]; ++k) term = term * minus_cbar[j];
        out += term;
    }
    return out;
}

Symbol gaussian_reduce(const Symbol& p) {
    require_kind(p, SymbolKind::antiwick, "gaussian_reduce");
    const std::size_t d = p.dim();
    // Variable layout of the scratch space:
    //   [0,d)   t        [d,2d)  conj(t)
    //   [2d,3d) u        [3d,4d) conj(u)     [4d,5d) conj(v)
    const std::size_t n = 5 * d;
    auto var = [&](std::size_t j) { return Poly::variable(n, j); };

    std::vector<Poly> images(2 * d, Poly(n));
    for (std::size_t j = 0; j < d; ++j) {
        images[j] = var(2 * d + j) + var(j);          // w_j = u_j + t_j
        images[d + j] = var(3 * d + j) + var(d + j);  // conj(w_j) = conj(u_j) + conj(t_j)
    }
    Poly shifted = p.poly().substitute(images);

    std::vector<Poly> minus_cbar;
    minus_cbar.reserve(d);
    for (std::size_t j = 0; j < d; ++j)
        minus_cbar.push_back(var(4 * d + j) - var(3 * d + j));  // conj(v_j) - conj(u_j)

    Poly integrated = gaussian_pair_integral(shifted, d, 0, d, minus_cbar);

    // Collapse to (u, conj(v)); any surviving conj(u) power would violate
    // analyticity of the reduced symbol.
    Symbol out(SymbolKind::wick, d);
    for (const auto& [e, c] : integrated.terms()) {
        MultiIndex b(d), g(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (e[j] != 0 || e[d + j] != 0)
                throw InternalError("gaussian_reduce: unintegrated t exponent");
            if (e[3 * d + j] != 0)
                throw InternalError("gaussian_reduce: conj(u) exponents did not cancel");
            b[j] = e[2 * d + j];
            g[j] = e[4 * d + j];
        }
        out.add_term(b, g, c);
    }
    return out;
}

} // namespace wickfock
