#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wickfock/gaussian.hpp"
#include "wickfock/numeric.hpp"
#include "wickfock/quantize.hpp"
#include "wickfock/symmaps.hpp"

#include "testutil.hpp"

using namespace wickfock;
using testutil::SymbolGen;

namespace {

// Moment-integral matrix element <Op_aw(a0) e_alpha, e_beta> =
// integral a0 e_alpha conj(e_beta) dmu, evaluated by quadrature.
Cplx antiwick_moment_element(const Symbol& a0, const MultiIndex& alpha,
                             const MultiIndex& beta) {
    const std::size_t d = a0.dim();
    auto g = [&](std::span<const double> pq) -> Cplx {
        ComplexPoint w(d);
        for (std::size_t j = 0; j < d; ++j) w[j] = Cplx(pq[j], pq[d + j]);
        Cplx mono = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            for (unsigned k = 0; k < alpha[j]; ++k) mono *= w[j];
            for (unsigned k = 0; k < beta[j]; ++k) mono *= std::conj(w[j]);
        }
        return a0.eval_diag(w) * mono;
    };
    Cplx raw = gh_integrate(
        [&](std::span<const double> pq) -> Cplx {
            double n2 = 0.0;
            for (double t : pq) n2 += t * t;
            return g(pq) * std::exp(-n2);
        },
        2 * d, 96, 1.0);
    raw /= std::pow(std::numbers::pi, static_cast<double>(d));
    double norm = std::sqrt(mpq_class(alpha.factorial() * beta.factorial()).get_d());
    return raw / norm;
}

} // namespace

TEST_CASE("wick quantization bijection") {
    SymbolGen gen(47);
    for (int t = 0; t < 6; ++t) {
        Symbol a = gen.symbol(SymbolKind::wick, 2, 3, 5);
        CHECK(wick_quantize(a).to_wick_symbol() == a);
    }
}

TEST_CASE("quantization is linear at the matrix level") {
    SymbolGen gen(53);
    for (int t = 0; t < 4; ++t) {
        Symbol a = gen.symbol(SymbolKind::wick, 1, 3, 4);
        Symbol b = gen.symbol(SymbolKind::wick, 1, 3, 4);
        ExactFockMatrix lhs = wick_quantize(a + b).matrix(6);
        ExactFockMatrix rhs = wick_quantize(a).matrix(6) + wick_quantize(b).matrix(6);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("antiwick quantization reference cases") {
    // |w|^2 -> z d + 1, matrix diag(n+1)
    Symbol aw = symbol_term(SymbolKind::antiwick, 1, {1}, {1}, ExactCoeff(1));
    ExactFockMatrix m = antiwick_quantize(aw).matrix(5);
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(m.at(i, i) == ExactCoeff(static_cast<long>(i) + 1));

    // constant 1 -> identity
    Symbol one = symbol_term(SymbolKind::antiwick, 1, {0}, {0}, ExactCoeff(1));
    CHECK(antiwick_quantize(one).to_wick_symbol() ==
          symbol_term(SymbolKind::wick, 1, {0}, {0}, ExactCoeff(1)));

    // conj(w) -> d
    Symbol wb = symbol_term(SymbolKind::antiwick, 1, {0}, {1}, ExactCoeff(1));
    CHECK(antiwick_quantize(wb).to_wick_symbol() ==
          symbol_term(SymbolKind::wick, 1, {0}, {1}, ExactCoeff(1)));

    // w^2 -> z^2 (already normal ordered)
    Symbol w2 = symbol_term(SymbolKind::antiwick, 1, {2}, {0}, ExactCoeff(1));
    CHECK(antiwick_quantize(w2).to_wick_symbol() ==
          symbol_term(SymbolKind::wick, 1, {2}, {0}, ExactCoeff(1)));
}

TEST_CASE("antiwick matrix equals the moment integral Gram matrix") {
    SymbolGen gen(59);
    for (int t = 0; t < 3; ++t) {
        Symbol a0 = gen.symbol(SymbolKind::antiwick, 1, 2, 3);
        ExactFockMatrix m = antiwick_quantize(a0).matrix(4);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) {
                Cplx expect = antiwick_moment_element(a0, m.basis().at(j), m.basis().at(i));
                CHECK(std::abs(m.element(i, j) - expect) < 1e-8 * (1.0 + std::abs(expect)));
            }
    }
}

TEST_CASE("antiwick wick symbol agrees with the gaussian reduction") {
    SymbolGen gen(61);
    for (int t = 0; t < 6; ++t) {
        Symbol a0 = gen.symbol(SymbolKind::antiwick, 2, 3, 4);
        CHECK(antiwick_quantize(a0).to_wick_symbol() == gaussian_reduce(a0));
    }
}

TEST_CASE("antiwick positivity via Gram structure") {
    SymbolGen gen(67);
    for (int t = 0; t < 4; ++t) {
        // a0 = sum_k |p_k(w)|^2 with analytic polynomials p_k.
        Symbol a0(SymbolKind::antiwick, 1);
        for (int k = 0; k < 2; ++k) {
            Symbol p(SymbolKind::antiwick, 1);
            for (int j = 0; j < 2; ++j) p.add_term(gen.index(1, 2), MultiIndex{0}, gen.coeff());
            a0 += p * p.adjoint();
        }
        for (unsigned D : {4u, 8u}) {
            Eigen::MatrixXcd m = antiwick_quantize(a0).matrix(D).to_float();
            auto h = (0.5 * (m + m.adjoint())).eval();
            CHECK(min_eig_sym(h) >= -1e-10);
        }
    }
}

TEST_CASE("kernel evaluation") {
    Symbol one = symbol_term(SymbolKind::wick, 1, {0}, {0}, ExactCoeff(1));
    auto kv = kernel_eval(one, {{0.0, 0.0}}, {{0.0, 0.0}});
    CHECK(kv.value == Cplx(1.0, 0.0));
    CHECK_FALSE(kv.saturated);

    Symbol num = symbol_term(SymbolKind::wick, 1, {1}, {1}, ExactCoeff(1));
    auto kv2 = kernel_eval(num, {{1.0, 0.0}}, {{1.0, 0.0}});
    CHECK(std::abs(kv2.value - std::exp(1.0)) < 1e-14);

    auto kv3 = kernel_eval(one, {{30.0, 0.0}}, {{30.0, 0.0}});
    CHECK(kv3.saturated);
    CHECK(std::isfinite(std::abs(kv3.value)));
}

TEST_CASE("kernel matches the truncated spectral sum") {
    // diag(n) operator: kernel sum_alpha n e_alpha(z) conj(e_alpha(w)).
    Symbol num = symbol_term(SymbolKind::wick, 1, {1}, {1}, ExactCoeff(1));
    const unsigned D = 30;
    for (double zr : {0.3, 1.0, 1.5}) {
        ComplexPoint z = {{zr, 0.4}}, w = {{-0.7, 1.1}};
        Cplx spectral = 0.0;
        for (unsigned n = 0; n <= D; ++n) {
            double fact = mpq_class(factorial(n)).get_d();
            Cplx ez = std::pow(z[0], static_cast<double>(n)) / std::sqrt(fact);
            Cplx ew = std::pow(w[0], static_cast<double>(n)) / std::sqrt(fact);
            spectral += static_cast<double>(n) * ez * std::conj(ew);
        }
        auto kv = kernel_eval(num, z, w);
        CHECK(std::abs(kv.value - spectral) < 1e-8 * (1.0 + std::abs(kv.value)));
    }
}

TEST_CASE("berezin diagonal of the counterexample is the stated square form") {
    Symbol a(SymbolKind::wick, 1);
    a.add_term({0}, {0}, ExactCoeff(1));
    a.add_term({1}, {1}, ExactCoeff(-2));
    a.add_term({2}, {2}, ExactCoeff(2));
    Symbol diag = berezin_diag(a);

    // (1 - |w|^2)^2 + |w|^4 expanded: 1 - 2|w|^2 + 2|w|^4
    Symbol expect(SymbolKind::antiwick, 1);
    expect.add_term({0}, {0}, ExactCoeff(1));
    expect.add_term({1}, {1}, ExactCoeff(-2));
    expect.add_term({2}, {2}, ExactCoeff(2));
    CHECK(diag == expect);
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
        Cplx v = diag.eval_diag({{r, 0.0}});
        double direct = std::pow(1 - r * r, 2) + std::pow(r, 4);
        CHECK(v.real() == doctest::Approx(direct));
        CHECK(v.imag() == doctest::Approx(0.0));
    }

    CHECK(berezin_diag(symbol_term(SymbolKind::wick, 1, {1}, {0}, ExactCoeff(1))) ==
          symbol_term(SymbolKind::antiwick, 1, {1}, {0}, ExactCoeff(1)));
    CHECK(berezin_diag(symbol_term(SymbolKind::wick, 1, {2}, {1}, ExactCoeff(1))) ==
          symbol_term(SymbolKind::antiwick, 1, {2}, {1}, ExactCoeff(1)));
}

TEST_CASE("operator JSON round trip") {
    SymbolGen gen(71);
    Symbol a = gen.symbol(SymbolKind::wick, 2, 3, 4);
    NormalOrderedOp op = wick_quantize(a);
    NormalOrderedOp back = NormalOrderedOp::from_json(op.to_json());
    CHECK(back.to_wick_symbol() == a);
    CHECK(back.to_json() == op.to_json());
}
