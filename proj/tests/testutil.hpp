#pragma once

#include <cstdint>
#include <random>

#include "wickfock/symbol.hpp"

namespace wickfock::testutil {

// Seeded symbol generators. Raw 64-bit draws are reduced by hand so the
// streams are identical across platforms.
class SymbolGen {
public:
    explicit SymbolGen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t raw() { return rng_(); }
    long pick(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    ExactCoeff coeff(bool real_only = false) {
        long num = pick(-4, 4);
        long den = pick(1, 3);
        mpq_class re(num, den);
        re.canonicalize();
        if (real_only) return ExactCoeff(re);
        mpq_class im(pick(-4, 4), pick(1, 3));
        im.canonicalize();
        return ExactCoeff(re, im, 0, 0);
    }

    MultiIndex index(std::size_t d, unsigned maxtotal) {
        MultiIndex m(d);
        unsigned budget = static_cast<unsigned>(pick(0, maxtotal));
        for (unsigned k = 0; k < budget; ++k) ++m[pick(0, static_cast<long>(d) - 1)];
        return m;
    }

    Symbol symbol(SymbolKind kind, std::size_t d, unsigned maxdeg, unsigned nterms,
                  bool real_only = false) {
        Symbol s(kind, d);
        for (unsigned t = 0; t < nterms; ++t) {
            MultiIndex b = index(d, maxdeg);
            MultiIndex g = index(d, maxdeg - std::min(maxdeg, b.total()));
            s.add_term(b, g, coeff(real_only));
        }
        return s;
    }

    // Random weyl polynomial of total degree <= maxdeg.
    Symbol weyl(std::size_t d, unsigned maxdeg, unsigned nterms, bool real_only = true) {
        return symbol(SymbolKind::weyl, d, maxdeg, nterms, real_only);
    }

private:
    std::mt19937_64 rng_;
};

} // namespace wickfock::testutil
