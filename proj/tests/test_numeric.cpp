#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "wickfock/errors.hpp"
#include "wickfock/numeric.hpp"
#include "wickfock/quantize.hpp"
#include "wickfock/symmaps.hpp"

#include "testutil.hpp"

using namespace wickfock;
using testutil::SymbolGen;

namespace {

constexpr double kPi = std::numbers::pi;

RealFn hermite_fn(MultiIndex alpha) {
    return [alpha](std::span<const double> x) -> Cplx { return hermite_eval(alpha, x); };
}

} // namespace

TEST_CASE("hermite function values and orthonormality") {
    CHECK(hermite_eval(MultiIndex{0}, std::vector<double>{0.0}) ==
          doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-14));

    auto h1 = hermite_fn(MultiIndex{1});
    Cplx nrm = gh_integrate(
        [&](std::span<const double> x) { return h1(x) * h1(x); }, 1, 64, 1.0);
    CHECK(std::abs(nrm - 1.0) < 1e-10);

    auto h2 = hermite_fn(MultiIndex{2});
    auto h0 = hermite_fn(MultiIndex{0});
    Cplx ort = gh_integrate(
        [&](std::span<const double> x) { return h2(x) * h0(x); }, 1, 64, 1.0);
    CHECK(std::abs(ort) < 1e-10);

    // moderate-degree self products stay normalized
    for (unsigned n : {10u, 25u, 40u, 50u}) {
        auto hn = hermite_fn(MultiIndex{n});
        Cplx v = gh_integrate(
            [&](std::span<const double> x) { return hn(x) * hn(x); }, 1, 96, 1.0);
        CHECK(std::abs(v - 1.0) < 1e-10);
    }
}

TEST_CASE("bargmann transform maps hermite functions to monomials") {
    ToleranceConfig cfg;
    for (double re : {-1.5, 0.2, 1.8}) {
        ComplexPoint z = {{re, 0.7}};
        CHECK(std::abs(bargmann_kernel(hermite_fn(MultiIndex{0}), 1, z, cfg) - 1.0) < 1e-8);
        CHECK(std::abs(bargmann_kernel(hermite_fn(MultiIndex{1}), 1, z, cfg) - z[0]) < 1e-8);
        // h0 + h2 -> 1 + z^2/sqrt2
        auto f = [&](std::span<const double> x) -> Cplx {
            return hermite_eval(MultiIndex{0}, x) + hermite_eval(MultiIndex{2}, x);
        };
        Cplx expect = 1.0 + z[0] * z[0] / std::numbers::sqrt2;
        CHECK(std::abs(bargmann_kernel(f, 1, z, cfg) - expect) < 1e-8);
    }
}

TEST_CASE("bargmann coefficient and kernel paths agree") {
    ToleranceConfig cfg;
    SymbolGen gen(137);
    std::map<MultiIndex, Cplx, GradedLexLess> coeffs;
    for (int k = 0; k < 10; ++k)
        coeffs[MultiIndex{static_cast<unsigned>(k)}] =
            Cplx(gen.pick(-3, 3) / 2.0, gen.pick(-3, 3) / 2.0);
    auto f = [&](std::span<const double> x) -> Cplx {
        Cplx acc = 0.0;
        for (const auto& [a, c] : coeffs) acc += c * hermite_eval(a, x);
        return acc;
    };
    for (double re : {-1.9, -0.3, 1.2}) {
        for (double im : {-1.0, 0.5}) {
            ComplexPoint z = {{re, im}};
            Cplx via_coeff = bargmann_coeff(coeffs, z);
            Cplx via_kernel = bargmann_kernel(f, 1, z, cfg);
            CHECK(std::abs(via_coeff - via_kernel) < 1e-8 * (1.0 + std::abs(via_coeff)));
        }
    }
}

TEST_CASE("phase space transform of the gaussian window at the origin") {
    ToleranceConfig cfg;
    RealFn phi = [](std::span<const double> x) -> Cplx { return gaussian_window(x); };
    std::vector<double> zero = {0.0};
    Cplx v = stft_T(phi, phi, zero, zero, cfg);
    CHECK(std::abs(v * std::sqrt(2.0 * kPi) - 1.0) < 1e-8);
    // T_phi phi(0,0) = (2 pi)^{-1/2} ||phi||^2, and the window is normalized
    Cplx n2 = gh_integrate(
        [&](std::span<const double> x) { return gaussian_window(x) * gaussian_window(x); },
        1, 64, 1.0);
    CHECK(std::abs(n2 - 1.0) < 1e-12);
}

TEST_CASE("phase link to the short-time Fourier transform") {
    // V_phi f(x,xi) = e^{-i<x,xi>} T_phi f(x,xi), with V evaluated by its
    // own quadrature form.
    ToleranceConfig cfg;
    RealFn phi = [](std::span<const double> x) -> Cplx { return gaussian_window(x); };
    RealFn f = hermite_fn(MultiIndex{2});
    for (double x : {-0.8, 0.4}) {
        for (double xi : {-1.1, 0.7}) {
            std::vector<double> xs = {x}, xis = {xi};
            Cplx t = stft_T(f, phi, xs, xis, cfg);
            Cplx v = gh_integrate(
                         [&](std::span<const double> y) -> Cplx {
                             double ph = y[0] * xi;
                             std::vector<double> shifted = {y[0] - x};
                             return f(y) * std::conj(phi(shifted)) *
                                    Cplx(std::cos(ph), -std::sin(ph));
                         },
                         1, 96, 1.2) /
                     std::sqrt(2.0 * std::numbers::pi);
            Cplx link = Cplx(std::cos(x * xi), -std::sin(x * xi)) * t;
            CHECK(std::abs(v - link) < 1e-8 * (1.0 + std::abs(v)));
        }
    }
}

TEST_CASE("bargmann factorizes through the phase space transform") {
    ToleranceConfig cfg;
    RealFn phi = [](std::span<const double> x) -> Cplx { return gaussian_window(x); };
    RealFn f = hermite_fn(MultiIndex{1});
    auto T = [&](std::span<const double> x, std::span<const double> xi) {
        return stft_T(f, phi, x, xi, cfg);
    };
    for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        for (double xi : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            ComplexPoint z = {{x, xi}};
            Cplx lhs = bargmann_kernel(f, 1, z, cfg);
            Cplx rhs = bargmann_from_stft(T, z);
            CHECK(std::abs(lhs - rhs) < 1e-6 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("wick symbol of the oscillator via phase space quadrature") {
    ToleranceConfig cfg;
    Symbol ho(SymbolKind::weyl, 1);
    ho.add_term({2}, {0}, ExactCoeff(1));
    ho.add_term({0}, {2}, ExactCoeff(1));
    Symbol exact = weyl_to_wick(ho);

    int count = 0;
    for (double a : {-1.0, -0.4, 0.0, 0.6, 1.2}) {
        for (double b : {-0.8, 0.3, 0.9, -0.2, 0.5}) {
            ComplexPoint z = {{a, b}};
            ComplexPoint w = {{b, -a}};
            Cplx lhs = exact.eval_wick(z, w);
            Cplx rhs = wick_symbol_via_stft(ho, z, w, cfg);
            CHECK(std::abs(lhs - rhs) < 1e-6 * (1.0 + std::abs(lhs)));
            ++count;
        }
    }
    CHECK(count == 25);
}

TEST_CASE("moyal energy identity") {
    ToleranceConfig cfg;
    cfg.gh_nodes = 128;  // the outer grid reaches frequencies near 13
    RealFn phi = [](std::span<const double> x) -> Cplx { return gaussian_window(x); };
    // f = h0 + h1/2: ||f||^2 = 1.25, ||phi||^2 = 1.
    RealFn f = [](std::span<const double> x) -> Cplx {
        return hermite_eval(MultiIndex{0}, x) + 0.5 * hermite_eval(MultiIndex{1}, x);
    };
    auto energy = gh_integrate(
        [&](std::span<const double> p) -> Cplx {
            std::vector<double> x = {p[0]}, xi = {p[1]};
            Cplx v = stft_T(f, phi, x, xi, cfg);
            return std::norm(v);
        },
        2, 40, std::numbers::sqrt2);
    CHECK(std::abs(energy - 1.25) < 1e-6);
}

TEST_CASE("growth certificates") {
    ToleranceConfig cfg;
    GridSpec grid{0.0, 4.0, 6, 12};

    Symbol a(SymbolKind::wick, 1);
    a.add_term({1}, {1}, ExactCoeff(2));
    a.add_term({0}, {0}, ExactCoeff(1));
    WickFn eval_a = [&](const ComplexPoint& z, const ComplexPoint& w) {
        return a.eval_wick(z, w);
    };
    EstimateReport pass_rep = growth_certificate(eval_a, 1, CertificateForm::shubin0,
                                                 WeightSpec::bracket(2.0), 1.0, 2, grid, cfg);
    CHECK(pass_rep.pass);

    WickFn one = [](const ComplexPoint&, const ComplexPoint&) { return Cplx(1.0, 0.0); };
    EstimateReport triv = growth_certificate(one, 1, CertificateForm::shubin0,
                                             WeightSpec::one(), 1.0, 0, grid, cfg);
    CHECK(triv.pass);
    CHECK(triv.constants.at("C") == doctest::Approx(1.0));

    // e^{(z,w)} grows like e^{|z|^2} on the diagonal and must defeat any
    // polynomial-weight certificate as the grid widens.
    WickFn grower = [](const ComplexPoint& z, const ComplexPoint& w) {
        Cplx p = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) p += z[j] * std::conj(w[j]);
        return std::exp(p);
    };
    EstimateReport fail_rep = growth_certificate(grower, 1, CertificateForm::shubin0,
                                                 WeightSpec::bracket(2.0), 1.0, 2, grid, cfg);
    CHECK_FALSE(fail_rep.pass);
}

TEST_CASE("positivity experiment traces") {
    ToleranceConfig cfg;
    std::vector<unsigned> cutoffs = {8, 16, 24, 32};

    Symbol diag2n = symbol_term(SymbolKind::wick, 1, {1}, {1}, ExactCoeff(2));
    EstimateReport r1 = garding_experiment(diag2n, cutoffs, cfg);
    CHECK(r1.pass);
    for (const auto& row : r1.trace) {
        CHECK(row[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(row[2] == doctest::Approx(0.0).epsilon(1e-12));
    }

    Symbol pert(SymbolKind::wick, 1);
    pert.add_term({1}, {1}, ExactCoeff(1));
    pert.add_term({2}, {0}, ExactCoeff::rational(1, 4));
    pert.add_term({0}, {2}, ExactCoeff::rational(1, 4));
    EstimateReport r2 = garding_experiment(pert, cutoffs, cfg);
    CHECK(r2.pass);
    CHECK(r2.constants.at("lambda_min") > -2.0);

    Symbol cex(SymbolKind::wick, 1);
    cex.add_term({0}, {0}, ExactCoeff(1));
    cex.add_term({1}, {1}, ExactCoeff(-2));
    cex.add_term({2}, {2}, ExactCoeff(2));
    EstimateReport r3 = garding_experiment(cex, cutoffs, cfg);
    CHECK(r3.pass);
    CHECK(r3.constants.at("lambda_min") == doctest::Approx(-1.0));

    Symbol neg = symbol_term(SymbolKind::wick, 1, {1}, {1}, ExactCoeff(-1));
    CHECK_THROWS_AS(garding_experiment(neg, cutoffs, cfg), PreconditionError);
}

TEST_CASE("antiwick quadrature reproduces exact wick symbols") {
    SymbolGen gen(139);
    for (int t = 0; t < 3; ++t) {
        Symbol a0 = gen.symbol(SymbolKind::antiwick, 1, 4, 3);
        Symbol exact = antiwick_to_wick(a0);
        ComplexFn eval0 = [&](const ComplexPoint& w) { return a0.eval_diag(w); };
        for (double re : {-0.8, 0.4}) {
            ComplexPoint z = {{re, 0.6}}, w = {{0.2, -re}};
            Cplx quad = antiwick_wick_symbol_quad(eval0, 1, z, w, 64);
            Cplx ref = exact.eval_wick(z, w);
            CHECK(std::abs(quad - ref) < 1e-8 * (1.0 + std::abs(ref)));
        }
    }

    // a0 = 1 has wick symbol 1 everywhere.
    ComplexFn one = [](const ComplexPoint&) { return Cplx(1.0, 0.0); };
    Cplx v = antiwick_wick_symbol_quad(one, 1, {{1.2, -0.4}}, {{-0.3, 0.8}}, 64);
    CHECK(std::abs(v - 1.0) < 1e-10);
}

TEST_CASE("antiwick envelope fits") {
    ToleranceConfig cfg;
    cfg.gh_nodes = 48;
    GridSpec grid{0.0, 3.0, 2, 6};

    Symbol aw = symbol_term(SymbolKind::antiwick, 1, {1}, {1}, ExactCoeff(1));
    ComplexFn mod2 = [&](const ComplexPoint& w) { return aw.eval_diag(w); };
    EstimateReport r1 = antiwick_bound_check(mod2, 1, WeightSpec::bracket(2.0), grid, cfg);
    CHECK(r1.pass);

    ComplexFn expdec = [](const ComplexPoint& w) -> Cplx {
        double n = 0.0;
        for (const auto& c : w) n += std::norm(c);
        return std::exp(-std::sqrt(n));
    };
    GridSpec grid2{0.0, 4.0, 2, 6};
    EstimateReport r2 =
        antiwick_bound_check(expdec, 1, WeightSpec::exponential(1.0, 1.0), grid2, cfg);
    CHECK(r2.pass);
    CHECK(r2.constants.at("r") > 0.0);
}

TEST_CASE("polynomial detector") {
    ToleranceConfig cfg;
    std::vector<double> radii = {2.0, 4.0};

    ComplexFn quad = [](const ComplexPoint& z) { return 1.0 + z[0] * z[0]; };
    PolyDetectReport r1 = polynomial_detector(quad, 1, 8, radii, cfg);
    CHECK(r1.analytic);
    CHECK(r1.is_polynomial);
    CHECK(r1.degree == 2);
    CHECK(std::abs(r1.coefficients.at(MultiIndex{2}) - Cplx(1.0, 0.0)) < 1e-12);

    ComplexFn expz = [](const ComplexPoint& z) { return std::exp(z[0]); };
    PolyDetectReport r2 = polynomial_detector(expz, 1, 20, radii, cfg);
    CHECK(r2.analytic);
    CHECK_FALSE(r2.is_polynomial);

    // Kernel of a polynomial symbol: polynomial only after dividing out the
    // reproducing factor.
    Symbol a = symbol_term(SymbolKind::wick, 1, {2}, {1}, ExactCoeff(1));
    ComplexPoint w0 = {{1.0, 0.0}};
    ComplexFn raw = [&](const ComplexPoint& z) { return kernel_eval(a, z, w0).value; };
    ComplexFn ratio = [&](const ComplexPoint& z) -> Cplx {
        Cplx p = z[0] * std::conj(w0[0]);
        return kernel_eval(a, z, w0).value / std::exp(p);
    };
    PolyDetectReport r3 = polynomial_detector(raw, 1, 12, radii, cfg);
    CHECK_FALSE(r3.is_polynomial);
    PolyDetectReport r4 = polynomial_detector(ratio, 1, 12, radii, cfg);
    CHECK(r4.is_polynomial);
    CHECK(r4.degree == 2);

    // Non-analytic input: circle averages of |z|^2 disagree across radii.
    ComplexFn modsq = [](const ComplexPoint& z) { return std::norm(z[0]); };
    PolyDetectReport r5 = polynomial_detector(modsq, 1, 4, radii, cfg);
    CHECK_FALSE(r5.analytic);

    // d = 2 joint degrees
    ComplexFn cross = [](const ComplexPoint& z) { return z[0] * z[0] * z[1] + 0.5; };
    PolyDetectReport r6 = polynomial_detector(cross, 2, 4, radii, cfg);
    CHECK(r6.is_polynomial);
    CHECK(r6.degree == 3);
    CHECK(r6.axis_degree[0] == 2);
    CHECK(r6.axis_degree[1] == 1);
}

TEST_CASE("frequency beyond node resolution is rejected") {
    ToleranceConfig cfg;
    RealFn phi = [](std::span<const double> x) -> Cplx { return gaussian_window(x); };
    std::vector<double> x = {0.0}, xi = {40.0};
    CHECK_THROWS_AS(stft_T(phi, phi, x, xi, cfg), ConvergenceError);
}

TEST_CASE("empty diagnostic grids are rejected") {
    Symbol a = symbol_term(SymbolKind::wick, 1, {1}, {1}, ExactCoeff(2));
    GridSpec empty{1.0, 4.0, 0, 0};
    CHECK_THROWS_AS(
        hypoelliptic_diagnostic(a, 1.0, 0.0, WeightSpec::one(), 1.0, empty), InputError);
}

TEST_CASE("quadrature node doubling stability") {
    // The assertion built into the convergence wrapper: an integrand
    // beyond the node resolution must throw rather than return quietly.
    ToleranceConfig cfg;
    cfg.gh_nodes = 8;
    RealFn rough = [](std::span<const double> x) -> Cplx {
        return std::cos(40.0 * x[0]);
    };
    std::vector<double> x = {0.0}, xi = {0.0};
    CHECK_THROWS_AS(
        bargmann_kernel(rough, 1, ComplexPoint{{0.0, 0.0}}, cfg), ConvergenceError);
}
