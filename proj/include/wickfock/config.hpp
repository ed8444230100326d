#pragma once

#include <string>

namespace wickfock {

// Central numeric configuration. Every floating tolerance and sweep size
// used by the library lives here; the CLI loads overrides from a JSON
// config file and from flags.
struct ToleranceConfig {
    double quad_tol = 1e-8;            // quadrature refinement agreement
    double eigen_tol = 1e-10;          // self-adjointness / eigenvalue checks
    double cert_stability_ratio = 1.1; // certificate pass: C ratio between refinements
    unsigned gh_nodes = 64;            // Gauss-Hermite nodes per real axis
    unsigned sphere_samples = 4096;    // sphere sweep point count
    double elliptic_tol = 1e-9;        // min-on-sphere threshold, scaled by coeff norm
    unsigned hypo_derivative_order = 2;// derivative ladder |alpha+beta| cap
    double spread_limit = 0.05;        // stability spread for cutoff sequences
    double spread_floor = 1e-9;        // absolute floor when sequences sit at zero
    double detector_coeff_tol = 1e-10; // polynomial detector coefficient threshold

    std::string to_json() const;
    static ToleranceConfig from_json(const std::string& text);
    // Merge non-default fields of a JSON object over *this.
    void merge_json(const std::string& text);
};

} // namespace wickfock
