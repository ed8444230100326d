#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "wickfock/gaussian.hpp"
#include "wickfock/numeric.hpp"
#include "wickfock/symbol.hpp"

#include "testutil.hpp"

using namespace wickfock;
using testutil::SymbolGen;

namespace {

Symbol wick(std::size_t d) { return Symbol(SymbolKind::wick, d); }

} // namespace

TEST_CASE("exact coefficient field axioms on randomized triples") {
    SymbolGen gen(7);
    auto rand_coeff = [&]() {
        mpq_class re(gen.pick(-5, 5), gen.pick(1, 4));
        mpq_class im(gen.pick(-5, 5), gen.pick(1, 4));
        mpq_class rs(gen.pick(-5, 5), gen.pick(1, 4));
        mpq_class is(gen.pick(-5, 5), gen.pick(1, 4));
        re.canonicalize(); im.canonicalize(); rs.canonicalize(); is.canonicalize();
        return ExactCoeff(re, im, rs, is);
    };
    for (int t = 0; t < 50; ++t) {
        ExactCoeff a = rand_coeff(), b = rand_coeff(), c = rand_coeff();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK(a * a.inv() == ExactCoeff(1));
            CHECK(a / a == ExactCoeff(1));
        }
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
    CHECK(ExactCoeff::sqrt2() * ExactCoeff::sqrt2() == ExactCoeff(2));
    CHECK(ExactCoeff::inv_sqrt2() * ExactCoeff::sqrt2() == ExactCoeff(1));
    CHECK(ExactCoeff::i() * ExactCoeff::i() == ExactCoeff(-1));
}

TEST_CASE("multi-index factorials and orders") {
    MultiIndex a{2, 3};
    CHECK(a.total() == 5);
    CHECK(a.factorial() == 12);
    CHECK(factorial(20) == mpz_class("2432902008176640000"));
    MultiIndex k{1, 2};
    CHECK(a.falling(k) == 2 * 6);
    CHECK(a.binomial(k) == 2 * 3);
    CHECK(graded_lex_less(MultiIndex{1, 0}, MultiIndex{0, 2}));
    CHECK(graded_lex_less(MultiIndex{0, 2}, MultiIndex{1, 1}));
    auto basis = enumerate_multiindices(2, 2);
    CHECK(basis.size() == 6);
    CHECK(basis.front() == MultiIndex{0, 0});
    CHECK(basis.back() == MultiIndex{2, 0});
}

TEST_CASE("derivative power rule and product cancellation") {
    // d/dz on z^2 conj(w) gives 2 z conj(w)
    Symbol a = wick(1);
    a.add_term({2}, {1}, ExactCoeff(1));
    Symbol da = a.derivative_a(MultiIndex{1});
    Symbol expect = wick(1);
    expect.add_term({1}, {1}, ExactCoeff(2));
    CHECK(da == expect);

    // (z + conj(w)) (z - conj(w)) = z^2 - conj(w)^2
    Symbol p = wick(1), q = wick(1);
    p.add_term({1}, {0}, ExactCoeff(1));
    p.add_term({0}, {1}, ExactCoeff(1));
    q.add_term({1}, {0}, ExactCoeff(1));
    q.add_term({0}, {1}, ExactCoeff(-1));
    Symbol prod = p * q;
    Symbol expect2 = wick(1);
    expect2.add_term({2}, {0}, ExactCoeff(1));
    expect2.add_term({0}, {2}, ExactCoeff(-1));
    CHECK(prod == expect2);
}

TEST_CASE("linear substitution expands the squared generator") {
    // x^2 under x -> (z + conj(w))/sqrt2 becomes (z^2 + 2 z conj(w) + conj(w)^2)/2.
    Poly x2 = Poly::monomial(2, MultiIndex{2, 0}, ExactCoeff(1));
    Poly z = Poly::variable(2, 0), wb = Poly::variable(2, 1);
    std::vector<Poly> images = {(z + wb).scaled(ExactCoeff::inv_sqrt2()), Poly(2)};
    Poly out = x2.substitute(images);
    Poly expect(2);
    expect.add_term(MultiIndex{2, 0}, ExactCoeff::rational(1, 2));
    expect.add_term(MultiIndex{1, 1}, ExactCoeff(1));
    expect.add_term(MultiIndex{0, 2}, ExactCoeff::rational(1, 2));
    CHECK(out == expect);
}

TEST_CASE("mixed partials commute across coordinates") {
    SymbolGen gen(11);
    for (int t = 0; t < 10; ++t) {
        Symbol s = gen.symbol(SymbolKind::wick, 2, 4, 6);
        Symbol d1 = s.derivative_a(MultiIndex{1, 0}).derivative_a(MultiIndex{0, 1});
        Symbol d2 = s.derivative_a(MultiIndex{0, 1}).derivative_a(MultiIndex{1, 0});
        CHECK(d1 == d2);
        Symbol e1 = s.derivative_b(MultiIndex{1, 1}).derivative_a(MultiIndex{1, 0});
        Symbol e2 = s.derivative_a(MultiIndex{1, 0}).derivative_b(MultiIndex{1, 1});
        CHECK(e1 == e2);
    }
}

TEST_CASE("gaussian moment closed form") {
    CHECK(gaussian_moment(MultiIndex{1}, MultiIndex{1}, mpq_class(2)) ==
          ExactCoeff::rational(1, 2));
    CHECK(gaussian_moment(MultiIndex{0}, MultiIndex{0}, mpq_class(5)) == ExactCoeff(1));
    CHECK(gaussian_moment(MultiIndex{2}, MultiIndex{1}, mpq_class(1)) == ExactCoeff());
    // beta = gamma = (2,1), s = 3: beta!/s^3 = 2/27
    CHECK(gaussian_moment(MultiIndex{2, 1}, MultiIndex{2, 1}, mpq_class(3)) ==
          ExactCoeff::rational(2, 27));
}

TEST_CASE("gaussian moment agrees with quadrature") {
    ToleranceConfig cfg;
    for (std::size_t d : {std::size_t(1), std::size_t(2)}) {
        SymbolGen gen(13 + d);
        for (int t = 0; t < 6; ++t) {
            MultiIndex beta = gen.index(d, 4), gamma = gen.index(d, 4);
            mpq_class s(gen.pick(1, 3), 1);
            double sv = s.get_d();
            // (s/pi)^d integral w^beta conj(w)^gamma e^{-s|w|^2}; fold the
            // Gaussian into the node weight with scale 1/sqrt(s).
            auto g = [&](std::span<const double> pq) -> Cplx {
                Cplx prod = 1.0;
                for (std::size_t j = 0; j < d; ++j) {
                    Cplx w(pq[j], pq[d + j]);
                    for (unsigned k = 0; k < beta[j]; ++k) prod *= w;
                    for (unsigned k = 0; k < gamma[j]; ++k) prod *= std::conj(w);
                    prod *= std::exp(-sv * std::norm(w));
                }
                return prod;
            };
            // The scale folds the Gaussian into the node weight, so the
            // remaining integrand is exactly polynomial and few nodes are
            // exact.
            Cplx quad = gh_integrate(g, 2 * d, 32, 1.0 / std::sqrt(sv)) *
                        std::pow(sv / std::numbers::pi, static_cast<double>(d));
            std::complex<double> exact = gaussian_moment(beta, gamma, s).to_complex();
            CHECK(std::abs(quad - exact) <= 1e-8 * (1.0 + std::abs(exact)));
        }
    }
}

TEST_CASE("gaussian reduction examples") {
    // p = 1 -> 1
    Symbol one(SymbolKind::antiwick, 1);
    one.add_term({0}, {0}, ExactCoeff(1));
    CHECK(gaussian_reduce(one) == symbol_term(SymbolKind::wick, 1, {0}, {0}, ExactCoeff(1)));

    // p = conj(w) -> conj(v)
    Symbol wb(SymbolKind::antiwick, 1);
    wb.add_term({0}, {1}, ExactCoeff(1));
    CHECK(gaussian_reduce(wb) == symbol_term(SymbolKind::wick, 1, {0}, {1}, ExactCoeff(1)));

    // p = w conj(w) -> u conj(v) + 1
    Symbol ww(SymbolKind::antiwick, 1);
    ww.add_term({1}, {1}, ExactCoeff(1));
    Symbol expect(SymbolKind::wick, 1);
    expect.add_term({1}, {1}, ExactCoeff(1));
    expect.add_term({0}, {0}, ExactCoeff(1));
    CHECK(gaussian_reduce(ww) == expect);
}

TEST_CASE("gaussian reduction matches complex quadrature at sample points") {
    SymbolGen gen(17);
    ToleranceConfig cfg;
    for (int t = 0; t < 4; ++t) {
        Symbol p = gen.symbol(SymbolKind::antiwick, 1, 3, 4);
        Symbol q = gaussian_reduce(p);
        ComplexPoint u = {{0.4, -0.3}}, v = {{-0.2, 0.5}};
        // Direct quadrature of pi^{-1} integral p(w) e^{-(w-u, w-v)}.
        auto g = [&](std::span<const double> pq) -> Cplx {
            Cplx w(pq[0], pq[1]);
            Cplx pv = p.eval_diag({w});
            Cplx expo = -(w - u[0]) * std::conj(w - v[0]);
            return pv * std::exp(expo);
        };
        Cplx quad = gh_integrate(g, 2, 96, 1.0) / std::numbers::pi;
        Cplx exact = q.eval_wick(u, v);
        CHECK(std::abs(quad - exact) <= 1e-8 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("gaussian reduction factorizes across tensor dimensions") {
    SymbolGen gen(23);
    // p(w1) * q(w2) in d=2 reduces to the product of the d=1 reductions.
    Symbol p1 = gen.symbol(SymbolKind::antiwick, 1, 2, 3);
    Symbol q1 = gen.symbol(SymbolKind::antiwick, 1, 2, 3);
    Symbol joint(SymbolKind::antiwick, 2);
    for (const auto& [ep, cp] : p1.poly().terms())
        for (const auto& [eq, cq] : q1.poly().terms())
            joint.add_term(MultiIndex{ep[0], eq[0]}, MultiIndex{ep[1], eq[1]}, cp * cq);
    Symbol red = gaussian_reduce(joint);
    Symbol rp = gaussian_reduce(p1), rq = gaussian_reduce(q1);
    Symbol expect(SymbolKind::wick, 2);
    for (const auto& [ep, cp] : rp.poly().terms())
        for (const auto& [eq, cq] : rq.poly().terms())
            expect.add_term(MultiIndex{ep[0], eq[0]}, MultiIndex{ep[1], eq[1]}, cp * cq);
    CHECK(red == expect);
}

TEST_CASE("symbol JSON round trip is bit exact") {
    SymbolGen gen(29);
    for (auto kind : {SymbolKind::wick, SymbolKind::weyl, SymbolKind::antiwick}) {
        Symbol s = gen.symbol(kind, 2, 4, 5);
        Symbol back = Symbol::from_json(s.to_json());
        CHECK(back == s);
        CHECK(back.to_json() == s.to_json());
    }
    // sqrt2 components survive the trip
    Symbol t(SymbolKind::wick, 1);
    t.add_term({1}, {0}, ExactCoeff(mpq_class(1, 3), mpq_class(-2), mpq_class(5, 7), mpq_class(0)));
    CHECK(Symbol::from_json(t.to_json()) == t);
}
