#include "wickfock/symmaps.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "wickfock/errors.hpp"
#include "wickfock/quantize.hpp"

namespace wickfock {

using nlohmann::json;

namespace {

ExactCoeff sqrt2_pow(unsigned k) {
    ExactCoeff r(1);
    ExactCoeff s2 = ExactCoeff::sqrt2();
    for (unsigned j = 0; j < k; ++j) r *= s2;
    return r;
}

// (-1)^{|alpha|} / (2^{|alpha|} alpha!)
ExactCoeff taylor_weight(const MultiIndex& alpha) {
    mpq_class denom(alpha.factorial());
    for (unsigned k = 0; k < alpha.total(); ++k) denom *= 2;
    mpq_class v = mpq_class(alpha.total() % 2 == 0 ? 1 : -1) / denom;
    return ExactCoeff(v);
}

// Sum of the weighted mixed derivatives over 0 < |alpha| <= cap.
Symbol degree_lowering_part(const Symbol& s) {
    const std::size_t d = s.dim();
    int cap = std::min(s.degree_a(), s.degree_b());
    Symbol acc(SymbolKind::wick, d);
    if (cap <= 0) return acc;
    for (const auto& alpha : enumerate_multiindices(d, static_cast<unsigned>(cap))) {
        if (alpha.total() == 0) continue;
        Symbol der = s.derivative_a(alpha).derivative_b(alpha);
        if (der.is_zero()) continue;
        acc += der.scaled(taylor_weight(alpha));
    }
    return acc;
}

} // namespace

Symbol wick_to_weyl(const Symbol& a) {
    require_kind(a, SymbolKind::wick, "wick_to_weyl");
    const std::size_t d = a.dim();

    Symbol expanded = a + degree_lowering_part(a);

    // z_j -> (x_j - i xi_j)/sqrt2, conj(w_j) -> (x_j + i xi_j)/sqrt2; the
    // sign pattern absorbs the xi-reflection of the diagonal formula.
    const std::size_t n = 2 * d;
    ExactCoeff is2 = ExactCoeff::i() * ExactCoeff::inv_sqrt2();
    std::vector<Poly> images(n, Poly(n));
    for (std::size_t j = 0; j < d; ++j) {
        Poly x = Poly::variable(n, j), xi = Poly::variable(n, d + j);
        images[j] = x.scaled(ExactCoeff::inv_sqrt2()) - xi.scaled(is2);
        images[d + j] = x.scaled(ExactCoeff::inv_sqrt2()) + xi.scaled(is2);
    }
    return {SymbolKind::weyl, d, expanded.poly().substitute(images)};
}

Symbol weyl_to_wick(const Symbol& a_weyl) {
    require_kind(a_weyl, SymbolKind::weyl, "weyl_to_wick");
    const std::size_t d = a_weyl.dim();
    const std::size_t n = 2 * d;

    // Invert the variable change: x_j -> (z_j + conj(w_j))/2,
    // xi_j -> i (z_j - conj(w_j))/2, then undo the 2^{-deg/2} scaling.
    ExactCoeff half = ExactCoeff::rational(1, 2);
    ExactCoeff ihalf = ExactCoeff::i() * half;
    std::vector<Poly> images(n, Poly(n));
    for (std::size_t j = 0; j < d; ++j) {
        Poly z = Poly::variable(n, j), wb = Poly::variable(n, d + j);
        images[j] = (z + wb).scaled(half);
        images[d + j] = (z - wb).scaled(ihalf);
    }
    Poly sub = a_weyl.poly().substitute(images);
    Symbol leading(SymbolKind::wick, d);
    for (const auto& [e, c] : sub.terms()) {
        MultiIndex b(d), g(d);
        for (std::size_t j = 0; j < d; ++j) {
            b[j] = e[j];
            g[j] = e[d + j];
        }
        leading.add_term(b, g, c * sqrt2_pow(e.total()));
    }

    // The backward transform is identity + degree-lowering corrections, a
    // unitriangular system in total degree: its inverse is the finite
    // alternating Neumann sum.
    Symbol result(SymbolKind::wick, d);
    Symbol cur = leading;
    bool negate = false;
    while (!cur.is_zero()) {
        result += negate ? -cur : cur;
        cur = degree_lowering_part(cur);
        negate = !negate;
    }

    if (wick_to_weyl(result) != a_weyl)
        throw InternalError("weyl_to_wick: triangular inversion failed to round trip");
    return result;
}

Symbol antiwick_to_wick(const Symbol& a0) {
    require_kind(a0, SymbolKind::antiwick, "antiwick_to_wick");
    return antiwick_quantize(a0).to_wick_symbol();
}

ExpansionResult wick_to_antiwick_expansion(const Symbol& a, unsigned order) {
    require_kind(a, SymbolKind::wick, "wick_to_antiwick_expansion");
    const std::size_t d = a.dim();

    ExpansionResult res;
    res.order = order;
    Symbol reconstructed(SymbolKind::wick, d);
    for (const auto& alpha : enumerate_multiindices(d, order)) {
        Symbol coeff = berezin_diag(a.derivative_a(alpha).derivative_b(alpha));
        res.coefficients.emplace(alpha, coeff);
        mpq_class w = mpq_class(alpha.total() % 2 == 0 ? 1 : -1) / mpq_class(alpha.factorial());
        reconstructed += antiwick_to_wick(coeff).scaled(ExactCoeff(w));
    }
    res.remainder = a - reconstructed;
    return res;
}

std::pair<Symbol, Symbol> principal_symbols(const Symbol& a_weyl) {
    require_kind(a_weyl, SymbolKind::weyl, "principal_symbols");
    if (a_weyl.is_zero()) throw InputError("principal_symbols: zero polynomial");
    const std::size_t d = a_weyl.dim();
    const std::size_t n = 2 * d;

    Symbol weyl_p = a_weyl.principal_part();

    // x_j -> (z_j + conj(w_j))/sqrt2, xi_j -> i (z_j - conj(w_j))/sqrt2:
    // degree preserving, so this is the whole transform on the top part.
    ExactCoeff is2 = ExactCoeff::i() * ExactCoeff::inv_sqrt2();
    std::vector<Poly> images(n, Poly(n));
    for (std::size_t j = 0; j < d; ++j) {
        Poly z = Poly::variable(n, j), wb = Poly::variable(n, d + j);
        images[j] = (z + wb).scaled(ExactCoeff::inv_sqrt2());
        images[d + j] = (z - wb).scaled(is2);
    }
    Symbol wick_p(SymbolKind::wick, d, weyl_p.poly().substitute(images));
    return {weyl_p, wick_p};
}

std::string ellipticity_kind_name(EllipticityKind k) {
    switch (k) {
        case EllipticityKind::elliptic: return "elliptic";
        case EllipticityKind::weakly_elliptic: return "weakly-elliptic";
        case EllipticityKind::hypoelliptic: return "hypoelliptic";
        case EllipticityKind::fail: return "fail";
    }
    throw InternalError("unknown ellipticity kind");
}

std::string EllipticityReport::to_json() const {
    json j;
    j["kind"] = ellipticity_kind_name(kind);
    j["min_sphere"] = min_sphere;
    j["radii"] = radii;
    j["omega"] = omega.to_string();
    j["rho"] = rho;
    j["rho0"] = rho0;
    j["fitted_upper"] = fitted_upper;
    j["fitted_lower"] = fitted_lower;
    j["fitted_order"] = fitted_order;
    j["fit_residual"] = fit_residual;
    j["pass"] = pass;
    return j.dump(2);
}

std::vector<std::vector<double>> sphere_points(std::size_t real_dim, std::size_t count) {
    if (real_dim == 0 || count == 0) throw InputError("sphere_points: empty request");
    std::vector<std::vector<double>> pts;
    pts.reserve(count);

    if (real_dim == 2) {
        // The circle case admits exactly uniform angles; a full cycle is
        // closed under reflection of the second coordinate.
        for (std::size_t k = 0; k < count; ++k) {
            double th = 2.0 * std::numbers::pi * static_cast<double>(k) / count;
            pts.push_back({std::cos(th), std::sin(th)});
        }
        return pts;
    }

    // Gaussianized Kronecker lattice: map a low-discrepancy sequence
    // through Box-Muller and normalize. Rotation invariance of the
    // Gaussian makes the directions quasi-uniform in any dimension.
    static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::size_t pairs = (real_dim + 1) / 2;
    std::size_t half = (count + 1) / 2;
    for (std::size_t k = 1; pts.size() < half; ++k) {
        std::vector<double> v(real_dim);
        for (std::size_t p = 0; p < pairs; ++p) {
            double a1 = std::sqrt(primes[(2 * p) % 12]);
            double a2 = std::sqrt(primes[(2 * p + 1) % 12]);
            double u1 = std::fmod(static_cast<double>(k) * a1, 1.0);
            double u2 = std::fmod(static_cast<double>(k) * a2, 1.0);
            u1 = std::min(std::max(u1, 1e-12), 1.0 - 1e-12);
            double rad = std::sqrt(-2.0 * std::log(u1));
            double ang = 2.0 * std::numbers::pi * u2;
            v[2 * p] = rad * std::cos(ang);
            if (2 * p + 1 < real_dim) v[2 * p + 1] = rad * std::sin(ang);
        }
        double norm = 0.0;
        for (double t : v) norm += t * t;
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (double& t : v) t /= norm;
        pts.push_back(std::move(v));
    }
    // Close the set under negation of the second coordinate half.
    std::size_t have = pts.size();
    for (std::size_t k = 0; k < have && pts.size() < count; ++k) {
        std::vector<double> m = pts[k];
        for (std::size_t j = real_dim / 2; j < real_dim; ++j) m[j] = -m[j];
        pts.push_back(std::move(m));
    }
    return pts;
}

namespace {

ComplexPoint to_complex_point(const std::vector<double>& v, std::size_t d) {
    ComplexPoint z(d);
    for (std::size_t j = 0; j < d; ++j) z[j] = {v[j], v[d + j]};
    return z;
}

} // namespace

EllipticityReport elliptic_check(const Symbol& principal, std::size_t samples,
                                 const ToleranceConfig& cfg) {
    if (principal.is_zero()) throw InputError("elliptic_check: zero symbol");
    if (!principal.is_homogeneous()) throw InputError("elliptic_check: symbol not homogeneous");
    const std::size_t d = principal.dim();

    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : sphere_points(2 * d, samples)) {
        double val;
        if (principal.kind() == SymbolKind::weyl) {
            std::span<const double> x(v.data(), d), xi(v.data() + d, d);
            val = std::abs(principal.eval_weyl(x, xi));
        } else {
            val = std::abs(principal.eval_diag(to_complex_point(v, d)));
        }
        best = std::min(best, val);
    }

    EllipticityReport rep;
    rep.min_sphere = best;
    rep.radii = {1.0};
    rep.rho0 = 0.0;
    bool elliptic = best > cfg.elliptic_tol * std::max(principal.coeff_norm(), 1e-300);
    rep.kind = elliptic ? EllipticityKind::elliptic : EllipticityKind::fail;
    rep.pass = elliptic;
    return rep;
}

EllipticityReport hypoelliptic_diagnostic(const Symbol& a, double rho, double rho0,
                                          const WeightSpec& omega, double R,
                                          const GridSpec& grid,
                                          const ToleranceConfig& cfg) {
    if (a.kind() == SymbolKind::weyl)
        throw InputError("hypoelliptic_diagnostic: wick symbol expected");
    if (rho <= 0.0 || rho0 < 0.0 || R <= 0.0)
        throw InputError("hypoelliptic_diagnostic: need rho > 0, rho0 >= 0, R > 0");
    if (grid.radial == 0 || grid.angular == 0)
        throw InputError("hypoelliptic_diagnostic: empty grid");
    const std::size_t d = a.dim();

    // Derivative ladder, exact symbols computed once.
    std::vector<std::pair<unsigned, Symbol>> ladder;
    for (const auto& al : enumerate_multiindices(d, cfg.hypo_derivative_order)) {
        for (const auto& be : enumerate_multiindices(d, cfg.hypo_derivative_order)) {
            unsigned tot = al.total() + be.total();
            if (tot == 0 || tot > cfg.hypo_derivative_order) continue;
            Symbol der = a.derivative_a(al).derivative_b(be);
            ladder.emplace_back(tot, der);
        }
    }

    double r_lo = std::max(R, grid.r_min), r_hi = std::max(grid.r_max, r_lo);
    std::vector<double> radii(grid.radial);
    for (unsigned i = 0; i < grid.radial; ++i)
        radii[i] = grid.radial == 1
                       ? r_lo
                       : r_lo + (r_hi - r_lo) * static_cast<double>(i) / (grid.radial - 1);
    auto dirs = sphere_points(2 * d, grid.angular);

    const double scale = std::max(a.coeff_norm(), 1e-300);
    double fitted_lower = std::numeric_limits<double>::infinity();
    double fitted_upper = 0.0;
    bool upper_ok = true;
    std::vector<double> shell_log_ratio(grid.radial,
                                        std::numeric_limits<double>::infinity());

    for (unsigned i = 0; i < grid.radial; ++i) {
        double r = radii[i];
        double bracket = std::sqrt(1.0 + r * r);
        double w0 = omega.eval_radius(std::numbers::sqrt2 * r);
        for (const auto& v : dirs) {
            ComplexPoint z = to_complex_point(v, d);
            for (auto& c : z) c *= r;
            double dval = std::abs(a.eval_diag(z));

            double lower_bound = w0 * std::pow(bracket, -rho0);
            fitted_lower = std::min(fitted_lower, dval / lower_bound);
            shell_log_ratio[i] = std::min(shell_log_ratio[i], dval / w0);

            for (const auto& [tot, der] : ladder) {
                double vval = std::abs(der.eval_diag(z));
                double weighted = vval * std::pow(bracket, rho * tot);
                if (dval <= 1e-14 * scale) {
                    if (weighted > 1e-14 * scale) upper_ok = false;
                    continue;
                }
                fitted_upper = std::max(fitted_upper, weighted / dval);
            }
        }
    }

    // Heuristic exponent fit: slope of log(min_shell |a(z,z)| / omega)
    // against log<z> estimates the weak-ellipticity order.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    unsigned m = 0;
    for (unsigned i = 0; i < grid.radial; ++i) {
        if (!(shell_log_ratio[i] > 0) || !std::isfinite(shell_log_ratio[i])) continue;
        double x = std::log(std::sqrt(1.0 + radii[i] * radii[i]));
        double y = std::log(shell_log_ratio[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    double slope = 0.0, resid = 0.0;
    if (m >= 2 && sxx * m - sx * sx > 1e-12) {
        slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        double icpt = (sy - slope * sx) / m;
        for (unsigned i = 0; i < grid.radial; ++i) {
            if (!(shell_log_ratio[i] > 0) || !std::isfinite(shell_log_ratio[i])) continue;
            double x = std::log(std::sqrt(1.0 + radii[i] * radii[i]));
            double e = std::log(shell_log_ratio[i]) - (slope * x + icpt);
            resid += e * e;
        }
        resid = std::sqrt(resid / m);
    }

    bool lower_pass = fitted_lower > cfg.elliptic_tol * scale && std::isfinite(fitted_lower);
    bool upper_pass = upper_ok && std::isfinite(fitted_upper);

    EllipticityReport rep;
    rep.radii = radii;
    rep.omega = omega;
    rep.rho = rho;
    rep.rho0 = rho0;
    rep.fitted_lower = std::isfinite(fitted_lower) ? fitted_lower : 0.0;
    rep.fitted_upper = fitted_upper;
    rep.fitted_order = -slope;
    rep.fit_residual = resid;
    rep.min_sphere = rep.fitted_lower;
    rep.pass = lower_pass && upper_pass;
    if (lower_pass && upper_pass)
        rep.kind = EllipticityKind::hypoelliptic;
    else if (lower_pass)
        rep.kind = rho0 == 0.0 ? EllipticityKind::elliptic : EllipticityKind::weakly_elliptic;
    else
        rep.kind = EllipticityKind::fail;
    return rep;
}

DiagDifference diag_difference(const Symbol& a_weyl) {
    require_kind(a_weyl, SymbolKind::weyl, "diag_difference");
    const std::size_t d = a_weyl.dim();
    const std::size_t n = 2 * d;

    Symbol diag = berezin_diag(weyl_to_wick(a_weyl));

    // a_weyl(sqrt2 x, -sqrt2 xi) expressed in (w, conj(w)) with w = x + i xi:
    // x -> (w + conj(w))/sqrt2, xi -> i (w - conj(w))/sqrt2.
    ExactCoeff is2 = ExactCoeff::i() * ExactCoeff::inv_sqrt2();
    std::vector<Poly> images(n, Poly(n));
    for (std::size_t j = 0; j < d; ++j) {
        Poly w = Poly::variable(n, j), wb = Poly::variable(n, d + j);
        images[j] = (w + wb).scaled(ExactCoeff::inv_sqrt2());
        images[d + j] = (w - wb).scaled(is2);
    }
    Symbol rescaled(SymbolKind::antiwick, d, a_weyl.poly().substitute(images));

    DiagDifference res;
    res.difference = diag - rescaled;
    res.degree = res.difference.degree();
    res.weyl_degree = a_weyl.degree();
    return res;
}

} // namespace wickfock
