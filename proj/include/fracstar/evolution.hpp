#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fracstar/continuation.hpp"
#include "fracstar/series.hpp"

namespace fracstar {

// Desk-scale Cauchy problems du/dt = A u for two operator models:
//
//   * a finite complex matrix acting on a vector, and
//   * the derivative A = d/dx on a concrete scale of weighted-Taylor spaces
//     X_omega with norms sum |c_n| (1-omega)^n, observed through the
//     functional "value at x = 0".
//
// The derivative model turns each problem into a scalar coefficient
// sequence: the classical solution observed at 0 is just sum c_n t^n, and
// the rescaled order-delta solution is the lambda-damped version of the same
// series.

struct FiniteOperator {
    std::vector<std::vector<cplx>> matrix; // square, dimension <= 64
    std::vector<cplx> u0;

    int dim() const { return static_cast<int>(u0.size()); }
    void validate() const;
};

// Taylor coefficients at 0 of an element of X_omega.
struct ScaleElement {
    std::vector<cplx> taylor;
};

// A = d/dx on the weighted-Taylor scale.  The norm bound
// ||A||_{omega' -> omega''} <= C/(omega'' - omega') holds with C = 1 for
// this weight family (verified by norm_bound_check, not assumed).
struct ScaleOperatorModel {
    double norm_constant = 1.0;
    double existence_time = 0.0; // reported radius of the classical series
};

struct ScaleProblem {
    ScaleElement u0;
    ScaleOperatorModel model;
};

struct StarDomain {
    std::vector<cplx> singularities; // all nonzero
};

struct CauchyProblem {
    std::variant<FiniteOperator, ScaleProblem> op;
    double delta = 1.5;  // order of the fractional problem, in (1, 2]
    StarDomain star;     // declared singularities of the observed solution

    bool is_matrix() const { return std::holds_alternative<FiniteOperator>(op); }
    void validate() const;
};

struct SolveResult {
    std::vector<cplx> value; // dim entries for matrix problems, 1 for scale
    EvaluationReport report;
    const char* method = "direct";
};

// Powers A^k u0 for k = 0..N.
std::vector<std::vector<cplx>> power_sequence(const FiniteOperator& op, int N);
// Derivative-model powers; requires at least N+1 Taylor coefficients
// (TruncationError otherwise).
std::vector<ScaleElement> power_sequence(const ScaleElement& u0, int N);

// u(t) = sum t^n/n! A^n u0.  For scale problems the returned scalar is the
// observation at x = 0 and convergence is limited by the Taylor radius.
SolveResult solve_classical(const CauchyProblem& p, cplx t, double tol, int n_max);

// u_delta(t) = sum t^{delta n}/Gamma(delta n + 1) A^n u0 for real t >= 0.
SolveResult solve_fractional(const CauchyProblem& p, double t, double tol, int n_max);

// u_delta(t^{1/delta}) = sum t^n/Gamma(delta n + 1) A^n u0, entire in t.
// Coefficient-wise this is the lambda-multiplier transform of the classical
// Taylor data; for real t > 0 it matches solve_fractional at t^{1/delta}.
SolveResult solve_rescaled(const CauchyProblem& p, cplx t, double tol, int n_max);

struct SweepRow {
    double delta = 0.0;
    cplx value{0.0, 0.0};
    double abs_error = 0.0; // vs reference; NaN when no reference given
    bool converged = false;
    const char* method = "";
};

// Rescaled solves along a decreasing delta schedule.  When a reference is
// supplied the point must lie inside the declared star (StarViolation
// otherwise) and the per-delta errors are recorded.
std::vector<SweepRow> continuation_sweep(const CauchyProblem& p, cplx t,
                                         std::span<const double> deltas,
                                         std::optional<cplx> reference,
                                         double tol, int n_max);

// Membership in the star domain: the plane minus, for each singular point w,
// the part of the ray from 0 through w at and beyond w.  Cut membership is
// resolved within angular_tol; the singular points themselves are outside.
bool in_star(cplx t, const StarDomain& star, double angular_tol = kAngularTol);

// Weighted-Taylor norm sum |c_n| (1-omega)^n, omega in [0, 1).
double norm_at(const ScaleElement& element, double omega);

struct NormBoundReport {
    bool passed = false;
    double worst_ratio = 0.0; // max over elements of ||Ae||_w2 (w2-w1) / ||e||_w1
    int elements_checked = 0;
};

// Verifies ||A e||_{omega2} <= ||e||_{omega1} / (omega2 - omega1) for the
// given element and `trials` seeded random elements.  Throws BoundViolation
// (with the witness index in the message) if any element breaks the bound.
NormBoundReport norm_bound_check(const ScaleElement& element, double omega1,
                                 double omega2, int trials,
                                 std::uint64_t seed = 0x5eed5eedULL);

} // namespace fracstar
