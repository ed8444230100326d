#include "wickfock/quantize.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "wickfock/errors.hpp"

namespace wickfock {

using nlohmann::json;

void NormalOrderedOp::add_term(const MultiIndex& create, const MultiIndex& annihilate,
                               const ExactCoeff& coeff) {
    if (create.dim() != dim_ || annihilate.dim() != dim_)
        throw InputError("NormalOrderedOp: index dimension mismatch");
    if (coeff.is_zero()) return;
    terms_.push_back({create, annihilate, coeff});
}

Symbol NormalOrderedOp::to_wick_symbol() const {
    Symbol a(SymbolKind::wick, dim_);
    for (const auto& t : terms_) a.add_term(t.create, t.annihilate, t.coeff);
    return a;
}

std::string NormalOrderedOp::to_json() const {
    // Mirrors the symbol schema with kind "nops"; emitted through the
    // canonical symbol ordering so output is deterministic.
    Symbol a = to_wick_symbol();
    json j = json::parse(a.to_json());
    j["kind"] = "nops";
    return j.dump(2);
}

NormalOrderedOp NormalOrderedOp::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("operator JSON parse error: ") + e.what());
    }
    if (!j.contains("kind") || j["kind"].get<std::string>() != "nops")
        throw InputError("operator JSON: kind must be \"nops\"");
    j["kind"] = "wick";
    Symbol a = Symbol::from_json(j.dump());
    return wick_quantize(a);
}

NormalOrderedOp wick_quantize(const Symbol& a) {
    require_kind(a, SymbolKind::wick, "wick_quantize");
    const std::size_t d = a.dim();
    NormalOrderedOp op(d);
    for (const auto& [e, c] : a.poly().terms()) {
        MultiIndex b(d), g(d);
        for (std::size_t j = 0; j < d; ++j) {
            b[j] = e[j];
            g[j] = e[d + j];
        }
        op.add_term(b, g, c);
    }
    return op;
}

NormalOrderedOp antiwick_quantize(const Symbol& a0) {
    require_kind(a0, SymbolKind::antiwick, "antiwick_quantize");
    const std::size_t d = a0.dim();
    NormalOrderedOp op(d);
    for (const auto& [e, c] : a0.poly().terms()) {
        MultiIndex b(d), g(d);
        for (std::size_t j = 0; j < d; ++j) {
            b[j] = e[j];
            g[j] = e[d + j];
        }
        MultiIndex cap(d);
        for (std::size_t j = 0; j < d; ++j) cap[j] = std::min(b[j], g[j]);
        MultiIndex k(d);
        do {
            mpq_class w(g.binomial(k) * b.falling(k));
            op.add_term(b.minus(k), g.minus(k), c * ExactCoeff(w));
        } while (k.next_below(cap));
    }
    return op;
}

KernelValue kernel_eval(const Symbol& a, const ComplexPoint& z, const ComplexPoint& w) {
    require_kind(a, SymbolKind::wick, "kernel_eval");
    if (z.size() != a.dim() || w.size() != a.dim())
        throw InputError("kernel_eval: point dimension mismatch");
    std::complex<double> pairing = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) pairing += z[j] * std::conj(w[j]);
    bool saturated = false;
    double re = pairing.real();
    if (re > 700.0 || re < -700.0) {
        saturated = true;
        re = std::clamp(re, -700.0, 700.0);
    }
    std::complex<double> kernel =
        std::exp(re) * std::complex<double>(std::cos(pairing.imag()), std::sin(pairing.imag()));
    return {a.eval_wick(z, w) * kernel, saturated};
}

Symbol berezin_diag(const Symbol& a) {
    require_kind(a, SymbolKind::wick, "berezin_diag");
    return {SymbolKind::antiwick, a.dim(), a.poly()};
}

} // namespace wickfock
