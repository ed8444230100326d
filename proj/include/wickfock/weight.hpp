#pragma once

#include <cmath>
#include <string>

namespace wickfock {

// Weight function on phase space, restricted to the two radial families
// the diagnostics support:
//   polynomial    <z>^s = (1 + |z|^2)^{s/2}
//   exponential   exp(r |z|^{1/s})
struct WeightSpec {
    enum class Family { polynomial, exponential };

    Family family = Family::polynomial;
    double s = 0.0;
    double r = 0.0;

    static WeightSpec bracket(double s) { return {Family::polynomial, s, 0.0}; }
    static WeightSpec exponential(double r, double s) {
        return {Family::exponential, s, r};
    }
    static WeightSpec one() { return bracket(0.0); }

    // Both families are radial; evaluation takes the Euclidean norm.
    double eval_radius(double rho) const {
        if (family == Family::polynomial) return std::pow(1.0 + rho * rho, 0.5 * s);
        return std::exp(r * std::pow(rho, 1.0 / s));
    }

    std::string to_string() const {
        if (family == Family::polynomial) return "<z>^" + std::to_string(s);
        return "exp(" + std::to_string(r) + "|z|^(1/" + std::to_string(s) + "))";
    }
};

// Radial-shell grid: `radial` radii spaced uniformly over [r_min, r_max],
// each shell carrying `angular` quasi-uniform sphere directions.
struct GridSpec {
    double r_min = 1.0;
    double r_max = 8.0;
    unsigned radial = 16;
    unsigned angular = 64;
};

} // namespace wickfock
