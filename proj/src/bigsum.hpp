#pragma once

// Internal: summation engine for the damped power series
//
//     S = sum_n  w_n(delta) * a_n * t^n,   w_n(delta) = n! / Gamma(delta*n + 1).
//
// For delta near 1 and |t| > 1 the terms can peak tens of orders of magnitude
// above the sum before cancelling back down, which is far outside what
// compensated double summation can absorb.  The planner scans the term
// magnitudes a priori (cheaply, via real lgamma), decides the truncation
// index from the tail bound, and escalates to MPFR at a precision sized from
// the peak when the double-path rounding estimate would exceed the tolerance.

#include <span>

#include "fracstar/gamma.hpp"

namespace fracstar::detail {

struct SumPlan {
    int stop_index = 0;     // last index to be summed (inclusive)
    double peak_log = 0.0;  // max_n ln |w_n a_n t^n|
    bool tail_reached = false; // a-priori tail below tolerance at stop_index
    double tail_log = 0.0;  // ln of the estimated remainder past stop_index
    bool use_mpfr = false;
    int mpfr_bits = 0;
    bool feasible = true;   // false when the required precision is out of range
};

// coeffs empty means a_n == 1 for every n (the sequence is then capped only
// by n_max); otherwise the sum runs over the provided coefficients.
SumPlan plan_lambda_sum(std::span<const cplx> coeffs, double delta, cplx t,
                        double tol, int n_max);

struct BigSumResult {
    cplx value{0.0, 0.0};
    int terms = 0;
    double tail = 0.0;
    bool converged = false;
    bool escalated = false;
};

BigSumResult lambda_sum(std::span<const cplx> coeffs, double delta, cplx t,
                        double tol, int n_max);

// Same, reusing a plan already computed by the caller.
BigSumResult lambda_sum_planned(const SumPlan& plan, std::span<const cplx> coeffs,
                                double delta, cplx t, double tol);

} // namespace fracstar::detail
