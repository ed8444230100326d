#include "wickfock/poly.hpp"

#include <algorithm>

#include "wickfock/errors.hpp"

namespace wickfock {

Poly Poly::constant(std::size_t nvars, ExactCoeff c) {
    Poly p(nvars);
    p.add_term(MultiIndex(nvars), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t j) {
    return monomial(nvars, MultiIndex::unit(nvars, j), ExactCoeff(1));
}

Poly Poly::monomial(std::size_t nvars, const MultiIndex& e, ExactCoeff c) {
    if (e.dim() != nvars) throw InputError("Poly::monomial: exponent dimension mismatch");
    Poly p(nvars);
    p.add_term(e, c);
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.total()));
    return d;
}

int Poly::degree_in(std::size_t lo, std::size_t hi) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) {
        unsigned t = 0;
        for (std::size_t j = lo; j < hi && j < e.dim(); ++j) t += e[j];
        d = std::max(d, static_cast<int>(t));
    }
    return d;
}

ExactCoeff Poly::coeff(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ExactCoeff() : it->second;
}

void Poly::add_term(const MultiIndex& e, const ExactCoeff& c) {
    if (e.dim() != nvars_) throw InputError("Poly: exponent dimension mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (nvars_ != o.nvars_) throw InputError("Poly: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (nvars_ != o.nvars_) throw InputError("Poly: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw InputError("Poly: variable count mismatch");
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea.plus(eb), ca * cb);
    return r;
}

Poly Poly::scaled(const ExactCoeff& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

Poly Poly::derivative(std::size_t var, unsigned order) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] < order) continue;
        MultiIndex d = e;
        mpz_class fall = 1;
        for (unsigned t = 0; t < order; ++t) fall *= (e[var] - t);
        d[var] = e[var] - order;
        r.add_term(d, c * ExactCoeff(mpq_class(fall)));
    }
    return r;
}

Poly Poly::derivative(const MultiIndex& orders, std::size_t var_offset) const {
    Poly r = *this;
    for (std::size_t j = 0; j < orders.dim(); ++j)
        if (orders[j] > 0) r = r.derivative(var_offset + j, orders[j]);
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if (images.size() != nvars_) throw InputError("Poly::substitute: image count mismatch");
    std::size_t nout = nvars_ == 0 ? 0 : images[0].nvars();
    for (const auto& im : images)
        if (im.nvars() != nout) throw InputError("Poly::substitute: inconsistent image spaces");

    // Cached powers per variable; exponents at this scale are small.
    std::vector<std::vector<Poly>> powers(nvars_);
    auto power = [&](std::size_t j, unsigned k) -> const Poly& {
        auto& cache = powers[j];
        if (cache.empty()) cache.push_back(Poly::constant(nout, ExactCoeff(1)));
        while (cache.size() <= k) cache.push_back(cache.back() * images[j]);
        return cache[k];
    };

    Poly r(nout);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(nout, c);
        for (std::size_t j = 0; j < nvars_; ++j)
            if (e[j] > 0) term = term * power(j, e[j]);
        r += term;
    }
    return r;
}

std::complex<double> Poly::eval(std::span<const std::complex<double>> x) const {
    if (x.size() != nvars_) throw InputError("Poly::eval: point dimension mismatch");
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (std::size_t j = 0; j < nvars_; ++j)
            for (unsigned k = 0; k < e[j]; ++k) t *= x[j];
        acc += t;
    }
    return acc;
}

double Poly::coeff_norm() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, c.abs_upper());
    return m;
}

Poly Poly::conj_coeffs() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.conj());
    return r;
}

std::string Poly::to_string(const std::function<std::string(std::size_t)>& var_name) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")";
        for (std::size_t j = 0; j < nvars_; ++j) {
            if (e[j] == 0) continue;
            s += " " + var_name(j);
            if (e[j] > 1) s += "^" + std::to_string(e[j]);
        }
    }
    return s;
}

} // namespace wickfock
