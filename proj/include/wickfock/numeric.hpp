#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wickfock/config.hpp"
#include "wickfock/symbol.hpp"
#include "wickfock/weight.hpp"

namespace wickfock {

using Cplx = std::complex<double>;
using RealFn = std::function<Cplx(std::span<const double>)>;      // on R^d
using ComplexFn = std::function<Cplx(const ComplexPoint&)>;       // on C^d
using WickFn = std::function<Cplx(const ComplexPoint&, const ComplexPoint&)>;

// --------------------------------------------------------------------------
// Quadrature and special functions
// --------------------------------------------------------------------------

// Nodes/weights for integral f(x) e^{-x^2} dx. weights_expx2 holds
// w_k e^{x_k^2}, computed stably from the Hermite-function recurrence;
// the plain weights underflow harmlessly at extreme nodes.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> weights_expx2;
};
const GaussHermite& gauss_hermite(unsigned n);

// integral g(x) dx over R^dims via scaled Gauss-Hermite: g should decay at
// least like exp(-|x/scale|^2) for spectral accuracy.
Cplx gh_integrate(const RealFn& g, std::size_t dims, unsigned nodes, double scale = 1.0);

// Hermite function h_alpha(x) = prod_j h_{alpha_j}(x_j), evaluated by the
// stable three-term recurrence.
double hermite_eval(const MultiIndex& alpha, std::span<const double> x);

// --------------------------------------------------------------------------
// Bargmann transform and the phase-space transform behind it
// --------------------------------------------------------------------------

// Coefficient path: sum c_alpha e_alpha(z) with e_alpha = z^alpha/sqrt(alpha!).
Cplx bargmann_coeff(const std::map<MultiIndex, Cplx, GradedLexLess>& coeffs,
                    const ComplexPoint& z);

// Kernel path: quadrature of the Bargmann integral of a sampled f on R^d.
Cplx bargmann_kernel(const RealFn& f, std::size_t d, const ComplexPoint& z,
                     const ToleranceConfig& cfg = {});

// Gaussian window used in all Bargmann-link checks.
double gaussian_window(std::span<const double> x);

// Phase-space transform
//   T_phi f(x,xi) = (2 pi)^{-d/2} integral f(y+x) conj(phi(y)) e^{-i<y,xi>} dy.
// Throws ConvergenceError when the requested frequency exceeds what the
// node count resolves.
Cplx stft_T(const RealFn& f, const RealFn& window, std::span<const double> x,
            std::span<const double> xi, const ToleranceConfig& cfg = {});

// Multiplier linking the two transforms: (U F)(x+i xi) =
// (2 pi)^{d/2} e^{(|x|^2+|xi|^2)/2} e^{i<x,xi>} F(sqrt2 x, -sqrt2 xi).
Cplx bargmann_from_stft(const std::function<Cplx(std::span<const double>, std::span<const double>)>& F,
                        const ComplexPoint& z);

// Right-hand side of the phase-space formula for the wick transform of a
// weyl symbol, evaluated by quadrature; agrees with the exact transform.
Cplx wick_symbol_via_stft(const Symbol& a_weyl, const ComplexPoint& z,
                          const ComplexPoint& w, const ToleranceConfig& cfg = {});

// --------------------------------------------------------------------------
// Certificates and experiments
// --------------------------------------------------------------------------

struct EstimateReport {
    std::string form;
    std::map<std::string, double> constants;
    double max_violation = 0.0;
    std::string grid_info;
    bool pass = false;
    // Cutoff traces for the positivity experiment: {cutoff, lambda_min, skew_norm}.
    std::vector<std::array<double, 3>> trace;

    std::string to_json() const;
    void trace_to_csv(std::ostream& os) const;
};

enum class CertificateForm { shubin0, gevrey };

// Fits the smallest C with |a(z,w)| <= C * envelope(z,w) over a polar grid,
// then refits on a denser and wider grid; pass requires the ratio of the
// two fits to stay below cfg.cert_stability_ratio.
//   shubin0: envelope = e^{|z-w|^2/2} omega(sqrt2 |z|) <z-w>^{-N}
//   gevrey:  envelope = e^{|z-w|^2/2 + omega.r |z+w|^{1/omega.s}}
EstimateReport growth_certificate(const WickFn& a, std::size_t d, CertificateForm form,
                                  const WeightSpec& omega, double rho, unsigned N,
                                  const GridSpec& grid, const ToleranceConfig& cfg = {});

// Positivity experiment: for each cutoff, the smallest eigenvalue of the
// Hermitian part and the norm of the skew part of the truncated operator
// matrix. Requires a nonnegative diagonal symbol on a radial grid
// (PreconditionError otherwise). Pass = last-three spreads of both
// sequences below cfg.spread_limit.
EstimateReport garding_experiment(const Symbol& a, std::span<const unsigned> cutoffs,
                                  const ToleranceConfig& cfg = {});

// Wick symbol of an antiwick operator by centered Gaussian quadrature,
// with an envelope fit |value| <= C e^{|z-w|^2/4} env(|z+w|) where env is
// omega for the polynomial family or e^{-r|.|^{1/s}} with fitted r for the
// exponential family. Pass = fit stable under quadrature refinement.
Cplx antiwick_wick_symbol_quad(const ComplexFn& a0, std::size_t d, const ComplexPoint& z,
                               const ComplexPoint& w, unsigned nodes);
EstimateReport antiwick_bound_check(const ComplexFn& a0, std::size_t d,
                                    const WeightSpec& envelope, const GridSpec& grid,
                                    const ToleranceConfig& cfg = {});

// --------------------------------------------------------------------------
// Polynomial detector
// --------------------------------------------------------------------------

struct PolyDetectReport {
    bool analytic = true;
    bool is_polynomial = false;
    int degree = -1;                       // max total degree of detected terms
    std::vector<int> axis_degree;          // per-axis degrees
    std::map<MultiIndex, Cplx, GradedLexLess> coefficients;  // detected terms
    double tail_estimate = 0.0;            // largest estimate beyond the detected degree
    std::string notes;

    std::string to_json() const;
};

// Maclaurin coefficients of an entire F on C^d by trapezoid sums over
// polycircles (spectrally accurate), across a ladder of radii. F is
// declared polynomial of degree <= cap when every higher estimated
// coefficient vanishes across the ladder; genuine high coefficients are
// recognized by their radius-independence even below the magnitude
// threshold.
PolyDetectReport polynomial_detector(const ComplexFn& F, std::size_t d, unsigned cap,
                                     std::span<const double> radii,
                                     const ToleranceConfig& cfg = {});

} // namespace wickfock
