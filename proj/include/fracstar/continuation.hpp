#pragma once

#include <span>

#include "fracstar/wright.hpp"

namespace fracstar {

// Scalar rescaled sums  S(delta, t) = sum_n lambda_n(delta) a_n t^n.
//
// Direct summation of this series is the generic route, but for delta close
// to 1 and |t| > 1 its truncation index grows beyond any budget -- which is
// exactly the regime where the continuation machinery matters.  Two
// coefficient families with closed-form kernels cover that regime:
//
//   geometric  a_n = a_0 q^n        ->  S = a_0 * phi_delta(q t)
//   log        a_n = c q^n / n, n>=1 ->  S = a_0 + c * Int_0^1 (phi_delta(q t s) - 1)/s ds
//
// A file whose coefficients match a family exactly (to relative 1e-12 on
// every provided entry) is interpreted as the infinite family; anything else
// is summed directly from the data it carries, with the convergence flag
// reporting whether the tail was actually reached.

struct CoefficientFamily {
    enum class Kind { None, Geometric, Log };
    Kind kind = Kind::None;
    cplx a0{0.0, 0.0};    // leading coefficient (geometric) / constant term (log)
    cplx ratio{0.0, 0.0}; // q
    cplx scale{0.0, 0.0}; // c in the log family
};

// Requires at least 8 coefficients to claim a family.
CoefficientFamily detect_family(std::span<const cplx> coeffs);

struct ScalarSum {
    cplx value{0.0, 0.0};
    const char* method = "direct"; // direct | direct-mp | phi-geometric | phi-log
    int work = 0;
    double tail = 0.0;
    bool converged = false;
};

// Evaluate S(delta, t) with tolerance tol (absolute).  delta in [1, 2]:
// the phi kernels serve delta in (1, 2), while the boundary orders fall back
// to direct summation (always cheap there).  Never throws for slow
// convergence -- partial data comes back with converged = false.
ScalarSum rescaled_scalar_sum(std::span<const cplx> coeffs, double delta, cplx t,
                              double tol, int n_max, const ContourConfig& quad);

} // namespace fracstar
