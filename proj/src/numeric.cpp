#include "wickfock/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "wickfock/errors.hpp"
#include "wickfock/fock.hpp"
#include "wickfock/quantize.hpp"
#include "wickfock/symmaps.hpp"

namespace wickfock {

using nlohmann::json;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
} // namespace

// --------------------------------------------------------------------------
// Configuration record
// --------------------------------------------------------------------------

std::string ToleranceConfig::to_json() const {
    json j;
    j["quad_tol"] = quad_tol;
    j["eigen_tol"] = eigen_tol;
    j["cert_stability_ratio"] = cert_stability_ratio;
    j["gh_nodes"] = gh_nodes;
    j["sphere_samples"] = sphere_samples;
    j["elliptic_tol"] = elliptic_tol;
    j["hypo_derivative_order"] = hypo_derivative_order;
    j["spread_limit"] = spread_limit;
    j["spread_floor"] = spread_floor;
    j["detector_coeff_tol"] = detector_coeff_tol;
    return j.dump(2);
}

ToleranceConfig ToleranceConfig::from_json(const std::string& text) {
    ToleranceConfig cfg;
    cfg.merge_json(text);
    return cfg;
}

void ToleranceConfig::merge_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("config JSON parse error: ") + e.what());
    }
    auto grab = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
    };
    grab("quad_tol", quad_tol);
    grab("eigen_tol", eigen_tol);
    grab("cert_stability_ratio", cert_stability_ratio);
    grab("gh_nodes", gh_nodes);
    grab("sphere_samples", sphere_samples);
    grab("elliptic_tol", elliptic_tol);
    grab("hypo_derivative_order", hypo_derivative_order);
    grab("spread_limit", spread_limit);
    grab("spread_floor", spread_floor);
    grab("detector_coeff_tol", detector_coeff_tol);
}

// --------------------------------------------------------------------------
// Gauss-Hermite quadrature
// --------------------------------------------------------------------------

namespace {

// Orthonormal Hermite functions h_{n-1}(x), h_n(x) in one pass.
std::pair<double, double> hermite_pair(unsigned n, double x) {
    double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return {0.0, h0};
    double h1 = kSqrt2 * x * h0;
    for (unsigned k = 2; k <= n; ++k) {
        double h2 = x * std::sqrt(2.0 / k) * h1 - std::sqrt((k - 1.0) / k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return {h0, h1};
}

} // namespace

const GaussHermite& gauss_hermite(unsigned n) {
    if (n == 0 || n > 256) throw InputError("gauss_hermite: node count out of range");
    static std::mutex mutex;
    static std::map<unsigned, GaussHermite> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Nodes from Golub-Welsch eigenvalues. The eigenvector route to the
    // weights loses all accuracy at extreme nodes, so the nodes are Newton
    // polished on the Hermite function and the weights come from the stable
    // identity w_k e^{x_k^2} = 1 / (n h_{n-1}(x_k)^2).
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (unsigned k = 1; k < n; ++k) {
        double b = std::sqrt(k / 2.0);
        jac(k, k - 1) = b;
        jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("gauss_hermite: Jacobi eigensolve failed");

    GaussHermite gh;
    gh.nodes.resize(n);
    gh.weights.resize(n);
    gh.weights_expx2.resize(n);
    for (unsigned k = 0; k < n; ++k) {
        double x = solver.eigenvalues()(k);
        for (int step = 0; step < 3; ++step) {
            auto [hm, hn] = hermite_pair(n, x);
            double deriv = std::sqrt(2.0 * n) * hm - x * hn;
            if (deriv == 0.0) break;
            double dx = hn / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        auto [hm, hn] = hermite_pair(n, x);
        gh.nodes[k] = x;
        gh.weights_expx2[k] = 1.0 / (n * hm * hm);
        gh.weights[k] = gh.weights_expx2[k] * std::exp(-x * x);
    }
    return cache.emplace(n, std::move(gh)).first->second;
}

namespace {

// Tensor-product sweep over node tuples.
template <class Body>
void gh_sweep(const GaussHermite& gh, std::size_t dims, const Body& body) {
    std::vector<std::size_t> idx(dims, 0);
    const std::size_t n = gh.nodes.size();
    std::vector<double> x(dims);
    for (;;) {
        for (std::size_t j = 0; j < dims; ++j) x[j] = gh.nodes[idx[j]];
        body(x, idx);
        std::size_t j = 0;
        while (j < dims && ++idx[j] == n) idx[j++] = 0;
        if (j == dims) break;
    }
}

} // namespace

Cplx gh_integrate(const RealFn& g, std::size_t dims, unsigned nodes, double scale) {
    const GaussHermite& gh = gauss_hermite(nodes);
    Cplx acc = 0.0;
    std::vector<double> xs(dims);
    gh_sweep(gh, dims, [&](const std::vector<double>& x, const std::vector<std::size_t>& idx) {
        double w = 1.0;
        for (std::size_t j = 0; j < dims; ++j) {
            w *= gh.weights_expx2[idx[j]];
            xs[j] = scale * x[j];
        }
        acc += w * g(xs);
    });
    return acc * std::pow(scale, static_cast<double>(dims));
}

namespace {

// integral h(x) e^{-|x/scale|^2} dx, for integrands with the Gaussian
// factored out.
Cplx gh_weighted_integrate(const RealFn& h, std::size_t dims, unsigned nodes, double scale) {
    const GaussHermite& gh = gauss_hermite(nodes);
    Cplx acc = 0.0;
    std::vector<double> xs(dims);
    gh_sweep(gh, dims, [&](const std::vector<double>& x, const std::vector<std::size_t>& idx) {
        double w = 1.0;
        for (std::size_t j = 0; j < dims; ++j) {
            w *= gh.weights[idx[j]];
            xs[j] = scale * x[j];
        }
        acc += w * h(xs);
    });
    return acc * std::pow(scale, static_cast<double>(dims));
}

// Doubling refinement with the configured agreement tolerance.
Cplx converged_integrate(const RealFn& g, std::size_t dims, unsigned nodes, double scale,
                         double tol) {
    Cplx coarse = gh_integrate(g, dims, nodes, scale);
    Cplx fine = gh_integrate(g, dims, 2 * nodes, scale);
    if (std::abs(fine - coarse) > tol * (1.0 + std::abs(fine)))
        throw ConvergenceError("quadrature did not converge under node doubling");
    return fine;
}

} // namespace

// --------------------------------------------------------------------------
// Hermite functions
// --------------------------------------------------------------------------

double hermite_eval(const MultiIndex& alpha, std::span<const double> x) {
    if (alpha.dim() != x.size()) throw InputError("hermite_eval: dimension mismatch");
    double prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        double t = x[j];
        double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * t * t);
        if (alpha[j] == 0) {
            prod *= h0;
            continue;
        }
        double h1 = kSqrt2 * t * h0;
        for (unsigned n = 2; n <= alpha[j]; ++n) {
            double h2 = t * std::sqrt(2.0 / n) * h1 - std::sqrt((n - 1.0) / n) * h0;
            h0 = h1;
            h1 = h2;
        }
        prod *= h1;
    }
    return prod;
}

// --------------------------------------------------------------------------
// Bargmann transform
// --------------------------------------------------------------------------

Cplx bargmann_coeff(const std::map<MultiIndex, Cplx, GradedLexLess>& coeffs,
                    const ComplexPoint& z) {
    Cplx acc = 0.0;
    for (const auto& [alpha, c] : coeffs) {
        if (alpha.dim() != z.size()) throw InputError("bargmann_coeff: dimension mismatch");
        Cplx mono = 1.0;
        for (std::size_t j = 0; j < z.size(); ++j)
            for (unsigned k = 0; k < alpha[j]; ++k) mono *= z[j];
        acc += c * mono / std::sqrt(mpq_class(alpha.factorial()).get_d());
    }
    return acc;
}

namespace {

Cplx bargmann_kernel_fn(const ComplexPoint& z, std::span<const double> y) {
    Cplx zz = 0.0, zy = 0.0;
    double yy = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        zz += z[j] * z[j];
        zy += z[j] * y[j];
        yy += y[j] * y[j];
    }
    double dq = static_cast<double>(z.size()) / 4.0;
    return std::pow(kPi, -dq) * std::exp(-0.5 * (zz + yy) + kSqrt2 * zy);
}

} // namespace

Cplx bargmann_kernel(const RealFn& f, std::size_t d, const ComplexPoint& z,
                     const ToleranceConfig& cfg) {
    if (z.size() != d) throw InputError("bargmann_kernel: point dimension mismatch");
    auto g = [&](std::span<const double> y) { return bargmann_kernel_fn(z, y) * f(y); };
    return converged_integrate(g, d, cfg.gh_nodes, 1.0, cfg.quad_tol);
}

double gaussian_window(std::span<const double> x) {
    double xx = 0.0;
    for (double t : x) xx += t * t;
    return std::pow(kPi, -static_cast<double>(x.size()) / 4.0) * std::exp(-0.5 * xx);
}

Cplx stft_T(const RealFn& f, const RealFn& window, std::span<const double> x,
            std::span<const double> xi, const ToleranceConfig& cfg) {
    const std::size_t d = x.size();
    if (xi.size() != d) throw InputError("stft_T: point dimension mismatch");

    double ximax = 0.0;
    for (double t : xi) ximax = std::max(ximax, std::abs(t));
    if (ximax > 0.9 * std::sqrt(2.0 * cfg.gh_nodes))
        throw ConvergenceError("stft_T: frequency beyond node resolution, increase gh_nodes");

    auto g = [&](std::span<const double> y) -> Cplx {
        std::vector<double> shifted(d);
        double phase = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            shifted[j] = y[j] + x[j];
            phase += y[j] * xi[j];
        }
        return f(shifted) * std::conj(window(y)) * Cplx(std::cos(phase), -std::sin(phase));
    };
    Cplx val = converged_integrate(g, d, cfg.gh_nodes, 1.0, cfg.quad_tol);
    return val * std::pow(2.0 * kPi, -static_cast<double>(d) / 2.0);
}

Cplx bargmann_from_stft(
    const std::function<Cplx(std::span<const double>, std::span<const double>)>& F,
    const ComplexPoint& z) {
    const std::size_t d = z.size();
    std::vector<double> xs(d), xis(d);
    double q = 0.0, phase = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        xs[j] = kSqrt2 * z[j].real();
        xis[j] = -kSqrt2 * z[j].imag();
        q += z[j].real() * z[j].real() + z[j].imag() * z[j].imag();
        phase += z[j].real() * z[j].imag();
    }
    Cplx mul = std::pow(2.0 * kPi, static_cast<double>(d) / 2.0) * std::exp(0.5 * q) *
               Cplx(std::cos(phase), std::sin(phase));
    return mul * F(xs, xis);
}

Cplx wick_symbol_via_stft(const Symbol& a_weyl, const ComplexPoint& z,
                          const ComplexPoint& w, const ToleranceConfig& cfg) {
    require_kind(a_weyl, SymbolKind::weyl, "wick_symbol_via_stft");
    const std::size_t d = a_weyl.dim();
    if (z.size() != d || w.size() != d)
        throw InputError("wick_symbol_via_stft: point dimension mismatch");

    // Phase-space position and frequency arguments of the transform.
    std::vector<double> X(2 * d), Xi(2 * d);
    double dist2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double x = z[j].real(), xi = z[j].imag();
        double y = w[j].real(), eta = w[j].imag();
        X[j] = (x + y) / kSqrt2;
        X[d + j] = -(xi + eta) / kSqrt2;
        Xi[j] = kSqrt2 * (eta - xi);
        Xi[d + j] = kSqrt2 * (y - x);
        dist2 += (x - y) * (x - y) + (xi - eta) * (xi - eta);
    }

    auto f = [&](std::span<const double> p) -> Cplx {
        return a_weyl.eval_weyl(p.subspan(0, d), p.subspan(d, d));
    };
    auto psi = [&](std::span<const double> p) -> Cplx {
        double pp = 0.0;
        for (double t : p) pp += t * t;
        return std::pow(2.0 / kPi, static_cast<double>(d) / 2.0) * std::exp(-pp);
    };
    Cplx T = stft_T(f, psi, X, Xi, cfg);
    return std::pow(2.0 * kPi, static_cast<double>(d) / 2.0) * std::exp(0.5 * dist2) * T;
}

// --------------------------------------------------------------------------
// Reports
// --------------------------------------------------------------------------

std::string EstimateReport::to_json() const {
    json j;
    j["form"] = form;
    j["constants"] = constants;
    j["max_violation"] = max_violation;
    j["grid"] = grid_info;
    j["pass"] = pass;
    if (!trace.empty()) {
        json t = json::array();
        for (const auto& row : trace)
            t.push_back({{"cutoff", row[0]}, {"lambda_min", row[1]}, {"skew_norm", row[2]}});
        j["trace"] = std::move(t);
    }
    return j.dump(2);
}

void EstimateReport::trace_to_csv(std::ostream& os) const {
    os << "cutoff,lambda_min,skew_norm\n";
    char buf[96];
    for (const auto& row : trace) {
        std::snprintf(buf, sizeof(buf), "%u,%.17g,%.17g\n",
                      static_cast<unsigned>(row[0]), row[1], row[2]);
        os << buf;
    }
}

// --------------------------------------------------------------------------
// Growth certificates
// --------------------------------------------------------------------------

namespace {

std::vector<ComplexPoint> polar_grid(std::size_t d, double r_max, unsigned radial,
                                     unsigned angular) {
    std::vector<ComplexPoint> pts;
    auto dirs = sphere_points(2 * d, angular);
    pts.reserve(static_cast<std::size_t>(radial) * dirs.size() + 1);
    pts.push_back(ComplexPoint(d, 0.0));
    for (unsigned i = 1; i <= radial; ++i) {
        double r = r_max * static_cast<double>(i) / radial;
        for (const auto& v : dirs) {
            ComplexPoint z(d);
            for (std::size_t j = 0; j < d; ++j) z[j] = Cplx(v[j], v[d + j]) * r;
            pts.push_back(std::move(z));
        }
    }
    return pts;
}

double pair_norm(const ComplexPoint& a, const ComplexPoint& b, int sign) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        Cplx t = sign > 0 ? a[j] + b[j] : a[j] - b[j];
        s += std::norm(t);
    }
    return std::sqrt(s);
}

double certificate_fit(const WickFn& a, std::size_t d, CertificateForm form,
                       const WeightSpec& omega, double /*rho*/, unsigned N, double r_max,
                       unsigned radial, unsigned angular) {
    auto pts = polar_grid(d, r_max, radial, angular);
    double C = 0.0;
    for (const auto& z : pts) {
        double zn = 0.0;
        for (const auto& c : z) zn += std::norm(c);
        zn = std::sqrt(zn);
        for (const auto& w : pts) {
            double diff = pair_norm(z, w, -1);
            double sum = pair_norm(z, w, +1);
            double log_env;
            if (form == CertificateForm::shubin0) {
                log_env = 0.5 * diff * diff + std::log(omega.eval_radius(kSqrt2 * zn)) -
                          N * 0.5 * std::log(1.0 + diff * diff);
            } else {
                log_env = 0.5 * diff * diff +
                          omega.r * std::pow(sum, 1.0 / omega.s);
            }
            double v = std::abs(a(z, w));
            if (v == 0.0) continue;
            double ratio = std::exp(std::log(v) - log_env);
            C = std::max(C, ratio);
        }
    }
    return C;
}

} // namespace

EstimateReport growth_certificate(const WickFn& a, std::size_t d, CertificateForm form,
                                  const WeightSpec& omega, double rho, unsigned N,
                                  const GridSpec& grid, const ToleranceConfig& cfg) {
    double c1 = certificate_fit(a, d, form, omega, rho, N, grid.r_max, grid.radial,
                                grid.angular);
    // Refinement widens the range as well: the bounds are asymptotic, and a
    // violation only shows up when the grid is allowed to grow.
    double c2 = certificate_fit(a, d, form, omega, rho, N, grid.r_max * kSqrt2,
                                grid.radial * 2, grid.angular * 2);

    EstimateReport rep;
    rep.form = form == CertificateForm::shubin0 ? "shubin-growth" : "gevrey-growth";
    rep.constants["C"] = c2;
    rep.constants["C_coarse"] = c1;
    double ratio = c1 > 0 ? c2 / c1 : (c2 > 0 ? std::numeric_limits<double>::infinity() : 1.0);
    rep.constants["refinement_ratio"] = ratio;
    rep.max_violation = ratio - cfg.cert_stability_ratio;
    rep.grid_info = "polar r<=" + std::to_string(grid.r_max) + " radial " +
                    std::to_string(grid.radial) + " angular " + std::to_string(grid.angular) +
                    ", refined x2 range x sqrt2";
    rep.pass = std::isfinite(c2) && rep.max_violation < 0;
    return rep;
}

// --------------------------------------------------------------------------
// Positivity experiment
// --------------------------------------------------------------------------

namespace {

double last_three_spread(const std::vector<double>& v, double floor_value) {
    std::size_t n = v.size();
    std::size_t k = std::min<std::size_t>(3, n);
    double lo = v[n - k], hi = v[n - k];
    double amax = 0.0;
    for (std::size_t i = n - k; i < n; ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
        amax = std::max(amax, std::abs(v[i]));
    }
    return (hi - lo) / std::max(amax, floor_value);
}

} // namespace

EstimateReport garding_experiment(const Symbol& a, std::span<const unsigned> cutoffs,
                                  const ToleranceConfig& cfg) {
    require_kind(a, SymbolKind::wick, "garding_experiment");
    if (cutoffs.empty()) throw InputError("garding_experiment: no cutoffs");
    const std::size_t d = a.dim();

    // Precondition: the diagonal symbol is (numerically) real and
    // nonnegative on a radial probe grid.
    Symbol diag = berezin_diag(a);
    double scale = std::max(a.coeff_norm(), 1e-300);
    for (const auto& v : sphere_points(2 * d, 64)) {
        for (unsigned i = 0; i <= 16; ++i) {
            double r = 4.0 * i / 16.0;
            ComplexPoint w(d);
            for (std::size_t j = 0; j < d; ++j) w[j] = Cplx(v[j], v[d + j]) * r;
            Cplx val = diag.eval_diag(w);
            double tol = 1e-9 * scale * (1.0 + std::pow(r, std::max(diag.degree(), 0)));
            if (std::abs(val.imag()) > tol || val.real() < -tol)
                throw PreconditionError(
                    "garding_experiment: diagonal symbol negative or non-real at |w|=" +
                    std::to_string(r));
        }
    }

    NormalOrderedOp op = wick_quantize(a);
    EstimateReport rep;
    rep.form = "garding-positivity";
    std::vector<double> lambdas, skews;
    for (unsigned D : cutoffs) {
        Eigen::MatrixXcd m = op.matrix(D).to_float();
        Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
        Eigen::MatrixXcd s = 0.5 * (m - m.adjoint());
        double lam = min_eig_sym(h, cfg.eigen_tol);
        double sn = operator_norm(s);
        lambdas.push_back(lam);
        skews.push_back(sn);
        rep.trace.push_back({static_cast<double>(D), lam, sn});
    }

    double floor_value = std::max(cfg.spread_floor, 1e-12 * scale);
    double ls = last_three_spread(lambdas, floor_value);
    double ss = last_three_spread(skews, floor_value);
    rep.constants["lambda_min"] = lambdas.back();
    rep.constants["skew_norm"] = skews.back();
    rep.constants["lambda_spread"] = ls;
    rep.constants["skew_spread"] = ss;
    rep.max_violation = std::max(ls, ss) - cfg.spread_limit;
    rep.grid_info = "cutoffs " + std::to_string(cutoffs.front()) + ".." +
                    std::to_string(cutoffs.back());
    rep.pass = ls < cfg.spread_limit && ss < cfg.spread_limit;
    return rep;
}

// --------------------------------------------------------------------------
// Antiwick bound check
// --------------------------------------------------------------------------

Cplx antiwick_wick_symbol_quad(const ComplexFn& a0, std::size_t d, const ComplexPoint& z,
                               const ComplexPoint& w, unsigned nodes) {
    if (z.size() != d || w.size() != d)
        throw InputError("antiwick_wick_symbol_quad: point dimension mismatch");
    // Centered form of the defining integral: with m = (z+w)/2 and
    // A = (z-w)/2,
    //   value = pi^{-d} e^{|z-w|^2/4}
    //           integral a0(m + tau) e^{-|tau|^2} e^{-2i Im (tau, A)} dtau.
    ComplexPoint m(d), A(d);
    double diff2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        m[j] = 0.5 * (z[j] + w[j]);
        A[j] = 0.5 * (z[j] - w[j]);
        diff2 += std::norm(z[j] - w[j]);
    }
    auto h = [&](std::span<const double> pq) -> Cplx {
        ComplexPoint tau(d), arg(d);
        double im = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            tau[j] = Cplx(pq[j], pq[d + j]);
            arg[j] = m[j] + tau[j];
            im += (tau[j] * std::conj(A[j])).imag();
        }
        return a0(arg) * Cplx(std::cos(2.0 * im), -std::sin(2.0 * im));
    };
    Cplx integral = gh_weighted_integrate(h, 2 * d, nodes, 1.0);
    return std::pow(kPi, -static_cast<double>(d)) * std::exp(0.25 * diff2) * integral;
}

namespace {

struct EnvelopeFit {
    double logC = 0.0;
    double r = 0.0;
};

// Least squares of log-slack y = logC - r u, followed by a shift of logC
// so the fitted envelope dominates every sample.
EnvelopeFit fit_envelope(const std::vector<double>& u, const std::vector<double>& y,
                         bool fit_rate) {
    EnvelopeFit fit;
    std::size_t n = u.size();
    if (fit_rate && n >= 2) {
        double su = 0, sy = 0, suu = 0, suy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            su += u[i];
            sy += y[i];
            suu += u[i] * u[i];
            suy += u[i] * y[i];
        }
        double det = n * suu - su * su;
        if (std::abs(det) > 1e-12) {
            double slope = (n * suy - su * sy) / det;
            fit.r = -slope;
            fit.logC = (sy - slope * su) / n;
        }
    }
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        shift = std::max(shift, y[i] - (fit.logC - fit.r * u[i]));
    if (std::isfinite(shift) && shift > 0) fit.logC += shift;
    return fit;
}

EnvelopeFit antiwick_fit_pass(const ComplexFn& a0, std::size_t d, const WeightSpec& envelope,
                              const std::vector<ComplexPoint>& pts, unsigned nodes,
                              double* max_violation) {
    std::vector<double> u, y;
    for (const auto& z : pts) {
        for (const auto& w : pts) {
            Cplx val = antiwick_wick_symbol_quad(a0, d, z, w, nodes);
            double v = std::abs(val);
            if (v < 1e-300) continue;
            double sum = pair_norm(z, w, +1);
            double diff = pair_norm(z, w, -1);
            double slack = std::log(v) - 0.25 * diff * diff;
            if (envelope.family == WeightSpec::Family::polynomial) {
                // Fixed polynomial envelope; only C is fitted.
                u.push_back(0.0);
                y.push_back(slack - std::log(envelope.eval_radius(sum)));
            } else {
                u.push_back(std::pow(sum, 1.0 / envelope.s));
                y.push_back(slack);
            }
        }
    }
    bool fit_rate = envelope.family == WeightSpec::Family::exponential;
    EnvelopeFit fit = fit_envelope(u, y, fit_rate);
    if (max_violation) {
        double mv = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < u.size(); ++i)
            mv = std::max(mv, y[i] - (fit.logC - fit.r * u[i]));
        *max_violation = u.empty() ? 0.0 : mv;
    }
    return fit;
}

} // namespace

EstimateReport antiwick_bound_check(const ComplexFn& a0, std::size_t d,
                                    const WeightSpec& envelope, const GridSpec& grid,
                                    const ToleranceConfig& cfg) {
    auto pts = polar_grid(d, grid.r_max, grid.radial, grid.angular);

    double viol = 0.0;
    EnvelopeFit coarse = antiwick_fit_pass(a0, d, envelope, pts, cfg.gh_nodes, nullptr);
    EnvelopeFit fine = antiwick_fit_pass(a0, d, envelope, pts, 2 * cfg.gh_nodes, &viol);

    EstimateReport rep;
    rep.form = envelope.family == WeightSpec::Family::polynomial
                   ? "antiwick-envelope-weight"
                   : "antiwick-envelope-exponential";
    rep.constants["C"] = std::exp(fine.logC);
    rep.constants["r"] = fine.r;
    rep.grid_info = "polar r<=" + std::to_string(grid.r_max) + " radial " +
                    std::to_string(grid.radial) + " angular " + std::to_string(grid.angular);

    double c_ratio = std::exp(std::abs(fine.logC - coarse.logC));
    double r_drift = std::abs(fine.r - coarse.r) / std::max(std::abs(fine.r), 0.1);
    rep.constants["refinement_ratio"] = c_ratio;
    rep.max_violation = std::max({viol - 1e-9, c_ratio - cfg.cert_stability_ratio,
                                  r_drift - 0.1});
    rep.pass = std::isfinite(fine.logC) && rep.max_violation <= 0;
    return rep;
}

// --------------------------------------------------------------------------
// Polynomial detector
// --------------------------------------------------------------------------

std::string PolyDetectReport::to_json() const {
    json j;
    j["analytic"] = analytic;
    j["is_polynomial"] = is_polynomial;
    j["degree"] = degree;
    j["axis_degree"] = axis_degree;
    json terms = json::array();
    for (const auto& [e, c] : coefficients)
        terms.push_back({{"alpha", e.entries()}, {"re", c.real()}, {"im", c.imag()}});
    j["coefficients"] = std::move(terms);
    j["tail_estimate"] = tail_estimate;
    j["notes"] = notes;
    return j.dump(2);
}

PolyDetectReport polynomial_detector(const ComplexFn& F, std::size_t d, unsigned cap,
                                     std::span<const double> radii,
                                     const ToleranceConfig& cfg) {
    if (radii.size() < 2) throw InputError("polynomial_detector: need a radius ladder");
    const unsigned examine = cap + 6;
    const unsigned M = std::max<unsigned>(64, 4 * (examine + 1));

    // Coefficient estimates per radius via trapezoid sums on polycircles.
    std::vector<std::map<MultiIndex, Cplx, GradedLexLess>> est(radii.size());
    std::vector<double> max_abs(radii.size(), 0.0);
    MultiIndex bound(d);
    for (std::size_t j = 0; j < d; ++j) bound[j] = examine;

    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        double R = radii[ri];
        // Sample F on the polytorus.
        std::vector<std::size_t> idx(d, 0);
        std::vector<Cplx> samples;
        samples.reserve(static_cast<std::size_t>(std::pow(M, d)));
        for (;;) {
            ComplexPoint zp(d);
            for (std::size_t j = 0; j < d; ++j) {
                double th = 2.0 * kPi * static_cast<double>(idx[j]) / M;
                zp[j] = Cplx(R * std::cos(th), R * std::sin(th));
            }
            samples.push_back(F(zp));
            max_abs[ri] = std::max(max_abs[ri], std::abs(samples.back()));
            std::size_t j = 0;
            while (j < d && ++idx[j] == M) idx[j++] = 0;
            if (j == d) break;
        }

        MultiIndex alpha(d);
        do {
            Cplx acc = 0.0;
            std::vector<std::size_t> k(d, 0);
            std::size_t flat = 0;
            for (;;) {
                double phase = 0.0;
                for (std::size_t j = 0; j < d; ++j)
                    phase += 2.0 * kPi * static_cast<double>(alpha[j]) *
                             static_cast<double>(k[j]) / M;
                acc += samples[flat] * Cplx(std::cos(phase), -std::sin(phase));
                std::size_t j = 0;
                ++flat;
                while (j < d && ++k[j] == M) k[j++] = 0;
                if (j == d) break;
            }
            acc /= std::pow(static_cast<double>(M), static_cast<double>(d));
            acc /= std::pow(R, static_cast<double>(alpha.total()));
            est[ri].emplace(alpha, acc);
        } while (alpha.next_below(bound));
    }

    PolyDetectReport rep;
    rep.axis_degree.assign(d, -1);
    std::vector<std::pair<unsigned, double>> absent;  // (|alpha|, estimate) of non-terms
    // Noise floor of the trapezoid estimate at each radius: rounding of
    // samples of size max|F| divided by R^{|alpha|}. Genuine coefficients
    // are radius independent while noise collapses as R grows, so the
    // largest radius is the decisive detector.
    constexpr double kNoiseFactor = 32.0 * 2.220446049250313e-16;
    MultiIndex alpha(d);
    do {
        const std::size_t L = radii.size();
        std::vector<Cplx> v(L);
        std::vector<bool> reliable(L);
        double amax = 0.0;
        for (std::size_t ri = 0; ri < L; ++ri) {
            v[ri] = est[ri].at(alpha);
            amax = std::max(amax, std::abs(v[ri]));
            double floor_ri = kNoiseFactor * max_abs[ri] /
                              std::pow(radii[ri], static_cast<double>(alpha.total()));
            reliable[ri] = std::abs(v[ri]) > floor_ri;
        }

        bool present = false;
        if (reliable[L - 1]) {
            // Cross-check against every other radius whose estimate is
            // itself above noise; analytic inputs must agree.
            bool consistent = true;
            for (std::size_t ri = 0; ri + 1 < L; ++ri) {
                if (!reliable[ri]) continue;
                if (std::abs(v[ri] - v[L - 1]) >
                    0.25 * std::max(std::abs(v[L - 1]), std::abs(v[ri])))
                    consistent = false;
            }
            if (consistent) {
                present = true;
            } else {
                rep.analytic = false;
                rep.notes += "inconsistent estimate at " + alpha.to_string() + "; ";
            }
        }

        if (present) {
            rep.coefficients.emplace(alpha, v.back());
            rep.degree = std::max(rep.degree, static_cast<int>(alpha.total()));
            for (std::size_t j = 0; j < d; ++j)
                rep.axis_degree[j] = std::max(rep.axis_degree[j], static_cast<int>(alpha[j]));
        } else {
            absent.emplace_back(alpha.total(), amax);
        }
    } while (alpha.next_below(bound));

    for (const auto& [tot, amax] : absent)
        if (static_cast<int>(tot) > rep.degree)
            rep.tail_estimate = std::max(rep.tail_estimate, amax);

    // The polynomial declaration requires every estimate beyond the
    // detected degree to sit under the coefficient threshold as well.
    rep.is_polynomial = rep.analytic && rep.degree <= static_cast<int>(cap) &&
                        rep.tail_estimate < cfg.detector_coeff_tol;
    return rep;
}

} // namespace wickfock
