// Command-line surface: symbol transforms, quantization, experiments and
// reports. Inputs and outputs are the library's JSON/CSV schemas; identical
// inputs and seeds give byte-identical output.

#include <fstream>
#include <random>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wickfock/errors.hpp"
#include "wickfock/fock.hpp"
#include "wickfock/numeric.hpp"
#include "wickfock/quantize.hpp"
#include "wickfock/symmaps.hpp"
#include "wickfock/twisted.hpp"

using namespace wickfock;

namespace {

constexpr int kExitBadInput = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitNoConvergence = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write file: " + out_path);
    out << text << "\n";
}

Symbol load_symbol(const std::string& path, SymbolKind expected) {
    Symbol s = Symbol::from_json(slurp(path));
    require_kind(s, expected, "input symbol");
    return s;
}

Symbol seeded_squares_symbol(std::uint64_t seed) {
    // sum_k |p_k(w)|^2 with seeded analytic polynomials p_k
    std::mt19937_64 rng(seed);
    auto pick = [&](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    Symbol a0(SymbolKind::antiwick, 1);
    for (int k = 0; k < 2; ++k) {
        Symbol p(SymbolKind::antiwick, 1);
        for (int j = 0; j < 2; ++j) {
            MultiIndex b{static_cast<unsigned>(pick(0, 2))};
            mpq_class re(pick(-3, 3), pick(1, 2)), im(pick(-3, 3), pick(1, 2));
            re.canonicalize();
            im.canonicalize();
            p.add_term(b, MultiIndex{0}, ExactCoeff(re, im, 0, 0));
        }
        a0 += p * p.adjoint();
    }
    return a0;
}

struct CommonOpts {
    std::string config_path;
    std::string out;
    unsigned cutoff = 16;
    double tol = -1.0;
    std::uint64_t seed = 0;
    std::vector<double> grid_spec;  // r_min r_max radial angular
};

ToleranceConfig make_config(const CommonOpts& o) {
    ToleranceConfig cfg;
    if (!o.config_path.empty()) cfg.merge_json(slurp(o.config_path));
    if (o.tol > 0) cfg.quad_tol = o.tol;
    return cfg;
}

GridSpec make_grid(const CommonOpts& o) {
    GridSpec g;
    if (o.grid_spec.size() == 4) {
        g.r_min = o.grid_spec[0];
        g.r_max = o.grid_spec[1];
        g.radial = static_cast<unsigned>(o.grid_spec[2]);
        g.angular = static_cast<unsigned>(o.grid_spec[3]);
    } else if (!o.grid_spec.empty()) {
        throw InputError("--grid expects: r_min r_max radial angular");
    }
    return g;
}

WeightSpec parse_weight(const std::string& text) {
    // "poly:s" or "exp:r:s"; default weight is <z>^0 = 1.
    if (text.empty()) return WeightSpec::one();
    auto next = [&](std::size_t& pos) {
        std::size_t c = text.find(':', pos);
        std::string tok = c == std::string::npos ? text.substr(pos) : text.substr(pos, c - pos);
        pos = c == std::string::npos ? text.size() : c + 1;
        return tok;
    };
    std::size_t pos = 0;
    std::string fam = next(pos);
    if (fam == "poly") return WeightSpec::bracket(std::stod(next(pos)));
    if (fam == "exp") {
        double r = std::stod(next(pos));
        double s = std::stod(next(pos));
        return WeightSpec::exponential(r, s);
    }
    throw InputError("weight spec must be poly:<s> or exp:<r>:<s>");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wick/anti-Wick operator calculus on the Fock space"};
    app.require_subcommand(1);

    CommonOpts opt;
    app.add_option("--config", opt.config_path, "JSON config file with tolerance overrides");

    std::string sym_path, sym_b_path, weight_text = "poly:0";
    double rho = 1.0, rho0 = 0.0, radius = 1.0;
    unsigned order = 0, degree_cap = 8, check_cutoff = 0, samples = 4096;
    std::vector<unsigned> cutoffs = {8, 16, 24, 32};
    std::vector<double> radii = {2.0, 4.0};
    std::vector<double> point;

    auto add_common = [&](CLI::App* c, bool needs_symbol = true) {
        if (needs_symbol)
            c->add_option("--sym", sym_path, "input symbol JSON")->required();
        c->add_option("--out", opt.out, "output file (stdout when omitted)");
        c->add_option("--cutoff", opt.cutoff, "basis truncation degree");
        c->add_option("--seed", opt.seed, "seed for randomized suites");
        c->add_option("--tol", opt.tol, "quadrature tolerance override");
        c->add_option("--grid", opt.grid_spec, "grid: r_min r_max radial angular")
            ->expected(4);
    };

    auto* c_quantize = app.add_subcommand("quantize", "wick symbol -> truncated matrix CSV");
    add_common(c_quantize);
    auto* c_dequantize =
        app.add_subcommand("dequantize", "normal-ordered operator JSON -> wick symbol");
    add_common(c_dequantize);
    auto* c_toweyl = app.add_subcommand("to-weyl", "wick symbol -> weyl symbol");
    add_common(c_toweyl);
    auto* c_towick = app.add_subcommand("to-wick", "weyl symbol -> wick symbol");
    add_common(c_towick);

    auto* c_compose = app.add_subcommand("compose", "twisted or weyl product of two symbols");
    add_common(c_compose);
    c_compose->add_option("--b", sym_b_path, "second symbol JSON")->required();
    c_compose->add_option("--check-matrix", check_cutoff,
                          "verify the interior matrix homomorphism at this cutoff");

    auto* c_awexpand = app.add_subcommand("aw-expand", "antiwick expansion coefficients");
    add_common(c_awexpand);
    c_awexpand->add_option("--order", order, "expansion order (default deg_z)");

    auto* c_awtowick = app.add_subcommand("aw-to-wick", "antiwick symbol -> wick symbol");
    add_common(c_awtowick);

    auto* c_berezin = app.add_subcommand("berezin", "diagonal symbol of a wick symbol");
    add_common(c_berezin);

    auto* c_elliptic = app.add_subcommand("elliptic", "sphere ellipticity check");
    add_common(c_elliptic);
    c_elliptic->add_option("--samples", samples, "sphere sample count");

    auto* c_hypo = app.add_subcommand("hypo", "hypoellipticity diagnostic on a shell grid");
    add_common(c_hypo);
    c_hypo->add_option("--rho", rho, "derivative decay order");
    c_hypo->add_option("--rho0", rho0, "weak ellipticity order");
    c_hypo->add_option("--radius", radius, "inner radius R");
    c_hypo->add_option("--weight", weight_text, "weight: poly:<s> or exp:<r>:<s>");

    auto* c_garding = app.add_subcommand("garding", "positivity experiment over cutoffs");
    add_common(c_garding);
    c_garding->add_option("--cutoffs", cutoffs, "cutoff ladder");

    auto* c_counter =
        app.add_subcommand("counterexample", "diagonal-positive symbol with negative pairing");
    add_common(c_counter, /*needs_symbol=*/false);

    auto* c_bargmann = app.add_subcommand(
        "bargmann-check", "verify the phase-space formula for a weyl symbol");
    add_common(c_bargmann);

    auto* c_certify = app.add_subcommand("certify", "growth certificate for a wick symbol");
    add_common(c_certify);
    c_certify->add_option("--weight", weight_text, "weight: poly:<s> or exp:<r>:<s>");
    c_certify->add_option("--order", order, "bracket decay order N");

    auto* c_detect = app.add_subcommand("detect-poly", "polynomial detector on a wick symbol");
    add_common(c_detect);
    c_detect->add_option("--degree-cap", degree_cap, "declared degree cap");
    c_detect->add_option("--radii", radii, "radius ladder");

    auto* c_awbound =
        app.add_subcommand("aw-bound", "antiwick wick-symbol envelope (seeded square sums)");
    add_common(c_awbound, /*needs_symbol=*/false);
    c_awbound->add_option("--weight", weight_text, "envelope weight");

    CLI11_PARSE(app, argc, argv);

    try {
        ToleranceConfig cfg = make_config(opt);

        if (*c_quantize) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            ExactFockMatrix m = wick_quantize(a).matrix(opt.cutoff);
            std::ostringstream os;
            matrix_to_csv(m, os);
            emit(os.str(), opt.out);
        } else if (*c_dequantize) {
            NormalOrderedOp op = NormalOrderedOp::from_json(slurp(sym_path));
            emit(op.to_wick_symbol().to_json(), opt.out);
        } else if (*c_toweyl) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            emit(wick_to_weyl(a).to_json(), opt.out);
        } else if (*c_towick) {
            Symbol a = load_symbol(sym_path, SymbolKind::weyl);
            emit(weyl_to_wick(a).to_json(), opt.out);
        } else if (*c_compose) {
            Symbol a = Symbol::from_json(slurp(sym_path));
            Symbol b = Symbol::from_json(slurp(sym_b_path));
            if (a.kind() == SymbolKind::weyl) {
                require_kind(b, SymbolKind::weyl, "compose");
                emit(weyl_product(a, b).to_json(), opt.out);
            } else {
                require_kind(a, SymbolKind::wick, "compose");
                require_kind(b, SymbolKind::wick, "compose");
                Symbol prod = twisted_product(a, b);
                if (prod != twisted_product_oracle(a, b))
                    throw InternalError("compose: dual-path disagreement");
                std::string verdict;
                if (check_cutoff > 0) {
                    ExactFockMatrix mp = wick_quantize(prod).matrix(check_cutoff);
                    ExactFockMatrix mm = wick_quantize(a).matrix(check_cutoff) *
                                         wick_quantize(b).matrix(check_cutoff);
                    unsigned margin = static_cast<unsigned>(
                        std::max({a.degree(), b.degree(), 0}));
                    bool ok = true;
                    for (std::size_t i = 0; i < mp.size() && ok; ++i)
                        for (std::size_t j = 0; j < mp.size() && ok; ++j) {
                            if (mp.basis().at(i).total() + margin > check_cutoff) continue;
                            if (mp.basis().at(j).total() + margin > check_cutoff) continue;
                            ok = mp.at(i, j) == mm.at(i, j);
                        }
                    if (!ok) throw InternalError("compose: interior matrix block mismatch");
                    verdict = "\n// interior matrix block verified at cutoff " +
                              std::to_string(check_cutoff);
                }
                emit(prod.to_json() + verdict, opt.out);
            }
        } else if (*c_awexpand) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            unsigned n = c_awexpand->count("--order")
                             ? order
                             : static_cast<unsigned>(std::max(0, a.degree_a()));
            ExpansionResult res = wick_to_antiwick_expansion(a, n);
            std::ostringstream os;
            os << "{\n  \"order\": " << res.order << ",\n  \"coefficients\": {";
            bool first = true;
            for (const auto& [alpha, coeff] : res.coefficients) {
                os << (first ? "\n" : ",\n") << "    \"" << alpha.to_string()
                   << "\": " << coeff.to_json();
                first = false;
            }
            os << "\n  },\n  \"remainder\": " << res.remainder.to_json() << "\n}";
            emit(os.str(), opt.out);
        } else if (*c_awtowick) {
            Symbol a0 = load_symbol(sym_path, SymbolKind::antiwick);
            emit(antiwick_to_wick(a0).to_json(), opt.out);
        } else if (*c_berezin) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            emit(berezin_diag(a).to_json(), opt.out);
        } else if (*c_elliptic) {
            Symbol p = Symbol::from_json(slurp(sym_path));
            emit(elliptic_check(p, samples, cfg).to_json(), opt.out);
        } else if (*c_hypo) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            GridSpec grid = make_grid(opt);
            emit(hypoelliptic_diagnostic(a, rho, rho0, parse_weight(weight_text), radius,
                                         grid, cfg)
                     .to_json(),
                 opt.out);
        } else if (*c_garding) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            EstimateReport rep = garding_experiment(a, cutoffs, cfg);
            if (opt.out.empty()) {
                std::cout << rep.to_json() << "\n";
            } else {
                std::ofstream out(opt.out);
                if (!out) throw InputError("cannot write file: " + opt.out);
                rep.trace_to_csv(out);
            }
        } else if (*c_counter) {
            Symbol a(SymbolKind::wick, 1);
            a.add_term({0}, {0}, ExactCoeff(1));
            a.add_term({1}, {1}, ExactCoeff(-2));
            a.add_term({2}, {2}, ExactCoeff(2));
            Symbol diag = berezin_diag(a);
            Poly f = Poly::variable(1, 0);
            ExactCoeff pairing = fock_inner(wick_quantize(a).apply(f), f);
            std::ostringstream os;
            os << "{\n  \"symbol\": " << a.to_json() << ",\n  \"diagonal\": "
               << diag.to_json() << ",\n  \"diagonal_text\": \"" << diag.to_string()
               << " = (1-|w|^2)^2 + |w|^4 > 0\",\n  \"pairing_with_z\": \""
               << pairing.to_string() << "\"\n}";
            emit(os.str(), opt.out);
        } else if (*c_bargmann) {
            Symbol a = load_symbol(sym_path, SymbolKind::weyl);
            Symbol exact = weyl_to_wick(a);
            double worst = 0.0;
            for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                for (double y : {-0.8, -0.2, 0.1, 0.6, 1.0}) {
                    ComplexPoint z = {{x, y}}, w = {{y, -x}};
                    Cplx lhs = exact.eval_wick(z, w);
                    Cplx rhs = wick_symbol_via_stft(a, z, w, cfg);
                    worst = std::max(worst,
                                     std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
                }
            }
            std::ostringstream os;
            os << "{\n  \"max_relative_error\": " << worst << ",\n  \"pass\": "
               << (worst < 1e-6 ? "true" : "false") << "\n}";
            emit(os.str(), opt.out);
            if (worst >= 1e-6) return kExitNoConvergence;
        } else if (*c_certify) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            GridSpec grid = make_grid(opt);
            if (opt.grid_spec.empty()) grid = GridSpec{0.0, 4.0, 6, 12};
            EstimateReport rep = growth_certificate(
                [&](const ComplexPoint& z, const ComplexPoint& w) {
                    return a.eval_wick(z, w);
                },
                a.dim(), CertificateForm::shubin0, parse_weight(weight_text), 1.0, order,
                grid, cfg);
            emit(rep.to_json(), opt.out);
        } else if (*c_detect) {
            Symbol a = load_symbol(sym_path, SymbolKind::wick);
            // Detect the z-degree of the kernel with the reproducing factor
            // divided out, axis by axis in z for fixed w0.
            ComplexPoint w0(a.dim(), Cplx(0.5, 0.25));
            ComplexFn F = [&](const ComplexPoint& z) -> Cplx {
                Cplx p = 0.0;
                for (std::size_t j = 0; j < a.dim(); ++j) p += z[j] * std::conj(w0[j]);
                return kernel_eval(a, z, w0).value / std::exp(p);
            };
            emit(polynomial_detector(F, a.dim(), degree_cap, radii, cfg).to_json(), opt.out);
        } else if (*c_awbound) {
            Symbol a0 = seeded_squares_symbol(opt.seed);
            GridSpec grid = make_grid(opt);
            if (opt.grid_spec.empty()) grid = GridSpec{0.0, 3.0, 2, 6};
            ToleranceConfig fast = cfg;
            fast.gh_nodes = std::min(fast.gh_nodes, 48u);
            EstimateReport rep = antiwick_bound_check(
                [&](const ComplexPoint& w) { return a0.eval_diag(w); }, a0.dim(),
                parse_weight(weight_text), grid, fast);
            emit(rep.to_json(), opt.out);
        }
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ConvergenceError& e) {
        std::cerr << "numeric non-convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}
