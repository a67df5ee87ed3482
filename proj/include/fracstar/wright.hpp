#pragma once

#include <utility>
#include <vector>

#include "fracstar/gamma.hpp"

namespace fracstar {

// phi_delta(z) = sum_n  n!/Gamma(delta*n + 1) z^n.
//
// Two independent evaluators are provided: the entire series (phi_series)
// and the contour integral over the vertical line Re s = 1/2
//
//   phi_delta(z) = (1/2i) Int  Gamma(1-s) / (sin(pi s) Gamma(1-delta s)) (-z)^{-s} ds,
//
// valid for |arg(-z)| < (3-delta) pi / 2 with the principal branch of
// (-z)^{-s}, which places the cut exactly on z in [0, inf).

// Points within this angle of the positive real axis count as "on the cut".
inline constexpr double kAngularTol = 1e-9;

// Series dispatch threshold: auto evaluation prefers the series while its
// a-priori truncation index stays below this, and the contour otherwise.
inline constexpr int kSeriesDispatchLimit = 2000;

// Hard cap on series length before SlowConvergence is raised.
inline constexpr int kPhiSeriesMaxTerms = 200000;

// Contour half-heights beyond this would push the integrand's intermediate
// scales outside sensible range; TailError instead.
inline constexpr double kMaxContourHeight = 1500.0;

struct WrightParams {
    double delta;

    // delta in [1, 2); the boundary value 1 is admitted only so that
    // phi_series can serve the classical geometric regime |z| < 1.
    explicit WrightParams(double d) : delta(d) {
        if (!(d >= 1.0 && d < 2.0)) {
            throw DomainError("WrightParams: delta must lie in [1, 2)");
        }
    }
    // The underlying Wright parameter, kept for reporting.
    double delta_cap() const { return delta - 2.0; }
};

struct ContourConfig {
    double abscissa = 0.5; // Re s of the contour, in (0, 1)
    double height = 0.0;   // half-height Y; 0 means "derive from the decay bound"
    int nodes = 256;       // minimum total quadrature nodes, >= 64 and even
    double tol = 1e-8;

    void validate() const {
        if (!(abscissa > 0.0 && abscissa < 1.0)) {
            throw DomainError("ContourConfig: abscissa must lie in (0, 1)");
        }
        if (nodes < 64 || nodes % 2 != 0) {
            throw DomainError("ContourConfig: nodes must be even and >= 64");
        }
        if (!(tol > 0.0)) throw DomainError("ContourConfig: tol must be positive");
        if (height < 0.0) throw DomainError("ContourConfig: height must be nonnegative");
    }
};

// The contour integrand Gamma(1-s) / (sin(pi s) Gamma(1-delta s)) * (-z)^{-s}.
// Conjugate-symmetric: integrand(conj s, conj z) == conj(integrand(s, z)).
// Throws BranchError for z on the cut and PoleError for s within kPoleEps of
// an integer.
cplx integrand(const WrightParams& params, cplx s, cplx z);

// Series evaluator.  The truncation index is fixed before summation from the
// term-magnitude bound; when the required index exceeds kPhiSeriesMaxTerms
// (delta close to 1 with |z| > 1), SlowConvergence is raised and the caller
// should switch to phi_integral.  Internally escalates to extended precision
// when the peak term magnitude would swamp double accumulation.
cplx phi_series(const WrightParams& params, cplx z, double tol);

// Contour evaluator.  The half-height is chosen so the bounded tail of the
// integrand falls below config.tol:
//   Y = (log(1/tol) + 5) / (pi (3 - delta)/2 - |arg(-z)|),
// then composite Gauss-Legendre panels resolve [-Y, Y].  For real negative z
// the conjugate symmetry halves the contour.  Throws BranchError on the cut
// and TailError when no admissible Y exists.
cplx phi_integral(const WrightParams& params, cplx z, const ContourConfig& config);

// The delta -> 1 limit kernel (1/2i) Int (-z)^{-s} / sin(pi s) ds over the
// same contour; equals 1/(1-z) for z off [0, inf).
cplx limit_kernel(cplx z, const ContourConfig& config);

// |phi_delta(z) - 1/(1-z)| with the evaluator chosen automatically.
// z must stay off the ray [1, inf) where the reference has its cut.
double phi_limit_gap(double delta, cplx z, const ContourConfig& config);

// Reporting variants used by sweeps and the CLI; the plain entry points
// above are thin wrappers over these.
struct PhiResult {
    cplx value{0.0, 0.0};
    const char* method = "";   // "series", "series-mp", "integral"
    int work = 0;              // terms summed or quadrature nodes
    double tail = 0.0;
};
PhiResult phi_series_report(const WrightParams& params, cplx z, double tol);
PhiResult phi_integral_report(const WrightParams& params, cplx z, const ContourConfig& config);
PhiResult phi_auto(double delta, cplx z, double tol, const ContourConfig& config);

// True when z lies on the branch ray [0, inf) up to the angular tolerance.
bool on_positive_axis(cplx z, double angular_tol = kAngularTol);

// Gauss-Legendre nodes and weights mapped onto [0, 1].
std::vector<std::pair<double, double>> gauss_unit_interval(int order);

} // namespace fracstar
