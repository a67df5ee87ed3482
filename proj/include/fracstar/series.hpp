#pragma once

#include <limits>
#include <vector>

#include "fracstar/gamma.hpp"

namespace fracstar {

// Finite slice of Taylor data a_0..a_N, with the known singular points of the
// summed function attached (possibly none).  Singularities must be nonzero:
// the series is assumed convergent on some neighborhood of 0.
struct PowerSeries {
    std::vector<cplx> coeffs;
    std::vector<cplx> singularities;
};

struct EvaluationReport {
    cplx value{0.0, 0.0};
    int terms_used = 0;
    double tail_estimate = 0.0;
    bool converged = false;
};

// Fractional multiplier n! / Gamma(delta*n + 1), computed as a log-Gamma
// difference so it stays finite for n far beyond 170.
//   - equals 1 exactly for n = 0 or delta = 1
//   - lies in (0, 1] for delta in [1, 2]
// delta outside [1, 2] raises DomainError.  (The closed interval is served:
// order-2 problems are admitted by the evolution module.)
double lambda_multiplier(int n, double delta);

// Coefficient-wise damping a_n -> lambda_n(delta) * a_n.  The result is
// entire for delta > 1, so the singularity list of the output is empty.
PowerSeries apply_multipliers(const PowerSeries& series, double delta);

// Truncated summation of sum a_n t^n with Neumaier-compensated accumulation.
// Convergence requires three consecutive terms below tol * max(1, |sum|);
// failure to converge is reported through the flag, never thrown, so sweeps
// can record partial data.  tail_estimate extrapolates the last term ratio
// geometrically (reported, not guaranteed).
EvaluationReport evaluate(const PowerSeries& series, cplx t, double tol, int n_max);

// Sentinel returned by radius_estimate for entire (or effectively entire)
// series.
inline constexpr double kRadiusInfinity = std::numeric_limits<double>::infinity();

// Cauchy-Hadamard radius estimate from a least-squares fit of log|a_n|
// against n over the trailing half of the data.  Super-geometric decay
// (slope still steepening across the window) and fitted radii above 1e6 both
// map to kRadiusInfinity.  Requires at least 8 nonzero coefficients in the
// window (InsufficientData otherwise).
double radius_estimate(const PowerSeries& series);

} // namespace fracstar
