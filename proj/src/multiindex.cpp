#include "wickfock/multiindex.hpp"

#include <algorithm>
#include <numeric>

#include "wickfock/errors.hpp"

namespace wickfock {

MultiIndex MultiIndex::unit(std::size_t d, std::size_t j) {
    MultiIndex m(d);
    m[j] = 1;
    return m;
}

unsigned MultiIndex::total() const {
    return std::accumulate(e_.begin(), e_.end(), 0u);
}

mpz_class MultiIndex::factorial() const {
    mpz_class r = 1;
    for (unsigned k : e_) r *= wickfock::factorial(k);
    return r;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    if (dim() != o.dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j)
        if (e_[j] > o.e_[j]) return false;
    return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
    if (dim() != o.dim()) throw InputError("MultiIndex: dimension mismatch");
    MultiIndex r(dim());
    for (std::size_t j = 0; j < dim(); ++j) r[j] = e_[j] + o.e_[j];
    return r;
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
    if (!o.leq(*this)) throw InputError("MultiIndex: negative difference");
    MultiIndex r(dim());
    for (std::size_t j = 0; j < dim(); ++j) r[j] = e_[j] - o.e_[j];
    return r;
}

mpz_class MultiIndex::falling(const MultiIndex& kappa) const {
    if (!kappa.leq(*this)) return 0;
    mpz_class r = 1;
    for (std::size_t j = 0; j < dim(); ++j)
        for (unsigned t = 0; t < kappa[j]; ++t) r *= (e_[j] - t);
    return r;
}

mpz_class MultiIndex::binomial(const MultiIndex& kappa) const {
    if (!kappa.leq(*this)) return 0;
    return falling(kappa) / kappa.factorial();
}

bool MultiIndex::next_below(const MultiIndex& bound) {
    for (std::size_t j = 0; j < dim(); ++j) {
        if (e_[j] < bound[j]) {
            ++e_[j];
            return true;
        }
        e_[j] = 0;
    }
    return false;
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (std::size_t j = 0; j < dim(); ++j) {
        if (j) s += ",";
        s += std::to_string(e_[j]);
    }
    return s + ")";
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    unsigned ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.entries().begin(), a.entries().end(),
                                        b.entries().begin(), b.entries().end());
}

std::vector<MultiIndex> enumerate_multiindices(std::size_t d, unsigned cutoff) {
    std::vector<MultiIndex> out;
    MultiIndex bound(d);
    for (std::size_t j = 0; j < d; ++j) bound[j] = cutoff;
    MultiIndex m(d);
    do {
        if (m.total() <= cutoff) out.push_back(m);
    } while (m.next_below(bound));
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
}

mpz_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace wickfock
