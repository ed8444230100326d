#include "wickfock/symbol.hpp"

#include <nlohmann/json.hpp>

#include "wickfock/errors.hpp"

namespace wickfock {

using nlohmann::json;

std::string kind_name(SymbolKind k) {
    switch (k) {
        case SymbolKind::wick: return "wick";
        case SymbolKind::weyl: return "weyl";
        case SymbolKind::antiwick: return "aw";
    }
    throw InternalError("unknown symbol kind");
}

SymbolKind kind_from_name(const std::string& name) {
    if (name == "wick") return SymbolKind::wick;
    if (name == "weyl") return SymbolKind::weyl;
    if (name == "aw") return SymbolKind::antiwick;
    throw InputError("unknown symbol kind: " + name);
}

Symbol::Symbol(SymbolKind kind, std::size_t dim, Poly poly)
    : kind_(kind), dim_(dim), poly_(std::move(poly)) {
    if (poly_.nvars() != 2 * dim_) throw InputError("Symbol: polynomial variable count mismatch");
}

bool Symbol::is_homogeneous() const {
    int d = degree();
    for (const auto& [e, c] : poly_.terms())
        if (static_cast<int>(e.total()) != d) return false;
    return true;
}

namespace {
MultiIndex join(const MultiIndex& b, const MultiIndex& g) {
    std::vector<unsigned> e;
    e.reserve(b.dim() + g.dim());
    for (std::size_t j = 0; j < b.dim(); ++j) e.push_back(b[j]);
    for (std::size_t j = 0; j < g.dim(); ++j) e.push_back(g[j]);
    return MultiIndex(std::move(e));
}

std::pair<MultiIndex, MultiIndex> split(const MultiIndex& e, std::size_t d) {
    MultiIndex b(d), g(d);
    for (std::size_t j = 0; j < d; ++j) {
        b[j] = e[j];
        g[j] = e[d + j];
    }
    return {b, g};
}
} // namespace

void Symbol::add_term(const MultiIndex& b, const MultiIndex& g, const ExactCoeff& c) {
    if (b.dim() != dim_ || g.dim() != dim_)
        throw InputError("Symbol::add_term: index dimension mismatch");
    poly_.add_term(join(b, g), c);
}

ExactCoeff Symbol::coeff(const MultiIndex& b, const MultiIndex& g) const {
    return poly_.coeff(join(b, g));
}

Symbol& Symbol::operator+=(const Symbol& o) {
    require_same_space(*this, o, "Symbol::operator+=");
    poly_ += o.poly_;
    return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
    require_same_space(*this, o, "Symbol::operator-=");
    poly_ -= o.poly_;
    return *this;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
    require_same_space(a, b, "Symbol::operator*");
    return {a.kind_, a.dim_, a.poly_ * b.poly_};
}

Symbol Symbol::derivative_a(const MultiIndex& orders) const {
    if (orders.dim() != dim_) throw InputError("derivative_a: index dimension mismatch");
    return {kind_, dim_, poly_.derivative(orders, 0)};
}

Symbol Symbol::derivative_b(const MultiIndex& orders) const {
    if (orders.dim() != dim_) throw InputError("derivative_b: index dimension mismatch");
    return {kind_, dim_, poly_.derivative(orders, dim_)};
}

Symbol Symbol::adjoint() const {
    if (kind_ == SymbolKind::weyl)
        throw InputError("adjoint: defined for wick/antiwick symbols");
    Symbol r(kind_, dim_);
    for (const auto& [e, c] : poly_.terms()) {
        auto [b, g] = split(e, dim_);
        r.add_term(g, b, c.conj());
    }
    return r;
}

bool Symbol::is_real_symmetric() const {
    if (kind_ == SymbolKind::weyl) {
        for (const auto& [e, c] : poly_.terms())
            if (!c.is_real()) return false;
        return true;
    }
    return *this == adjoint();
}

std::complex<double> Symbol::eval_raw(std::span<const std::complex<double>> a,
                                      std::span<const std::complex<double>> b) const {
    if (a.size() != dim_ || b.size() != dim_)
        throw InputError("Symbol::eval_raw: point dimension mismatch");
    std::vector<std::complex<double>> x(a.begin(), a.end());
    x.insert(x.end(), b.begin(), b.end());
    return poly_.eval(x);
}

std::complex<double> Symbol::eval_wick(const ComplexPoint& z, const ComplexPoint& w) const {
    require_kind(*this, SymbolKind::wick, "eval_wick");
    std::vector<std::complex<double>> wb(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) wb[j] = std::conj(w[j]);
    return eval_raw(z, wb);
}

std::complex<double> Symbol::eval_weyl(std::span<const double> x, std::span<const double> xi) const {
    require_kind(*this, SymbolKind::weyl, "eval_weyl");
    std::vector<std::complex<double>> a(x.begin(), x.end()), b(xi.begin(), xi.end());
    return eval_raw(a, b);
}

std::complex<double> Symbol::eval_diag(const ComplexPoint& w) const {
    if (kind_ == SymbolKind::weyl) throw InputError("eval_diag: wick/antiwick symbols only");
    std::vector<std::complex<double>> wb(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) wb[j] = std::conj(w[j]);
    return eval_raw(w, wb);
}

Symbol Symbol::principal_part() const {
    int d = degree();
    Symbol r(kind_, dim_);
    for (const auto& [e, c] : poly_.terms())
        if (static_cast<int>(e.total()) == d) {
            auto [b, g] = split(e, dim_);
            r.add_term(b, g, c);
        }
    return r;
}

std::string Symbol::to_json() const {
    json j;
    j["dim"] = dim_;
    j["kind"] = kind_name(kind_);
    json terms = json::array();
    for (const auto& [e, c] : poly_.terms()) {
        auto [b, g] = split(e, dim_);
        json t;
        t["b"] = b.entries();
        t["g"] = g.entries();
        t["re"] = rational_to_string(c.re());
        t["im"] = rational_to_string(c.im());
        t["re_s2"] = rational_to_string(c.re_s2());
        t["im_s2"] = rational_to_string(c.im_s2());
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump(2);
}

Symbol Symbol::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("symbol JSON parse error: ") + e.what());
    }
    if (!j.contains("dim") || !j.contains("kind") || !j.contains("terms"))
        throw InputError("symbol JSON: missing dim/kind/terms");
    Symbol s(kind_from_name(j["kind"].get<std::string>()), j["dim"].get<std::size_t>());
    for (const auto& t : j["terms"]) {
        MultiIndex b(t["b"].get<std::vector<unsigned>>());
        MultiIndex g(t["g"].get<std::vector<unsigned>>());
        ExactCoeff c(rational_from_string(t["re"].get<std::string>()),
                     rational_from_string(t["im"].get<std::string>()),
                     rational_from_string(t["re_s2"].get<std::string>()),
                     rational_from_string(t["im_s2"].get<std::string>()));
        s.add_term(b, g, c);
    }
    return s;
}

std::string Symbol::to_string() const {
    const char* names_a[] = {"z", "x", "w"};
    const char* names_b[] = {"wbar", "xi", "wbar"};
    std::size_t k = static_cast<std::size_t>(kind_);
    std::size_t d = dim_;
    return poly_.to_string([&](std::size_t j) {
        std::string base = j < d ? names_a[k] : names_b[k];
        std::size_t idx = j < d ? j : j - d;
        return d == 1 ? base : base + std::to_string(idx + 1);
    });
}

Symbol symbol_term(SymbolKind kind, std::size_t dim, const MultiIndex& b,
                   const MultiIndex& g, const ExactCoeff& c) {
    Symbol s(kind, dim);
    s.add_term(b, g, c);
    return s;
}

void require_kind(const Symbol& s, SymbolKind k, const char* where) {
    if (s.kind() != k)
        throw InputError(std::string(where) + ": expected " + kind_name(k) +
                         " symbol, got " + kind_name(s.kind()));
}

void require_same_space(const Symbol& a, const Symbol& b, const char* where) {
    if (a.kind() != b.kind()) throw InputError(std::string(where) + ": kind mismatch");
    if (a.dim() != b.dim()) throw InputError(std::string(where) + ": dimension mismatch");
}

} // namespace wickfock
