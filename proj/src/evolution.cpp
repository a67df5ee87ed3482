#include "fracstar/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace fracstar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDivergenceGuard = 1e200;

struct Compensated {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

std::vector<cplx> apply_matrix(const FiniteOperator& op, const std::vector<cplx>& v) {
    const std::size_t d = v.size();
    std::vector<cplx> out(d, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < d; ++j) acc += op.matrix[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

// Vector-valued truncated summation sum_n w_n(n) * base_n, where the caller
// supplies the next basis vector and the scalar weight per index.  Shared by
// the three matrix-problem solvers.
template <typename WeightFn, typename AdvanceFn>
SolveResult sum_vector_series(int dim, std::vector<cplx> base, WeightFn weight,
                              AdvanceFn advance, double tol, int n_max) {
    std::vector<Compensated> re(static_cast<std::size_t>(dim));
    std::vector<Compensated> im(static_cast<std::size_t>(dim));
    SolveResult res;
    res.value.assign(static_cast<std::size_t>(dim), cplx(0.0, 0.0));
    int small_streak = 0;
    double prev_mag = -1.0, last_mag = 0.0;
    bool diverged = false;

    std::vector<cplx> terms(static_cast<std::size_t>(dim));
    for (int n = 0; n <= n_max; ++n) {
        const cplx w = weight(n);
        double mag = 0.0;
        for (int i = 0; i < dim; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            terms[ui] = w * base[ui];
            mag = std::max(mag, std::abs(terms[ui]));
        }
        if (!std::isfinite(mag) || mag > kDivergenceGuard) {
            diverged = true;
            break;
        }
        for (int i = 0; i < dim; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            re[ui].add(terms[ui].real());
            im[ui].add(terms[ui].imag());
        }
        ++res.report.terms_used;

        double scale = 1.0;
        for (int i = 0; i < dim; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            scale = std::max(scale, std::hypot(re[ui].total(), im[ui].total()));
        }
        small_streak = (mag < tol * scale) ? small_streak + 1 : 0;
        prev_mag = (n == 0) ? -1.0 : last_mag;
        last_mag = mag;
        if (small_streak >= 3) break;

        base = advance(n, std::move(base));
    }

    for (int i = 0; i < dim; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        res.value[ui] = cplx(re[ui].total(), im[ui].total());
    }
    res.report.value = res.value[0];
    if (diverged) {
        res.report.tail_estimate = std::numeric_limits<double>::infinity();
        res.report.converged = false;
        return res;
    }
    if (prev_mag > 0.0 && last_mag > 0.0) {
        const double rho = last_mag / prev_mag;
        res.report.tail_estimate = (rho < 1.0) ? last_mag * rho / (1.0 - rho) : last_mag;
    } else {
        res.report.tail_estimate = last_mag;
    }
    res.report.converged = small_streak >= 3;
    return res;
}

const ScaleProblem& scale_of(const CauchyProblem& p) {
    return std::get<ScaleProblem>(p.op);
}

SolveResult from_scalar(const ScalarSum& s) {
    SolveResult res;
    res.value = {s.value};
    res.report.terms_used = s.work;
    res.report.tail_estimate = s.tail;
    res.report.converged = s.converged;
    res.report.value = s.value;
    res.method = s.method;
    return res;
}

ContourConfig default_quad(double tol) {
    ContourConfig cfg;
    cfg.tol = std::min(cfg.tol, tol);
    return cfg;
}

} // namespace

void FiniteOperator::validate() const {
    const std::size_t d = u0.size();
    if (d == 0) throw DomainError("FiniteOperator: empty initial vector");
    if (matrix.size() != d) throw DomainError("FiniteOperator: matrix/vector dimension mismatch");
    for (const auto& row : matrix) {
        if (row.size() != d) throw DomainError("FiniteOperator: matrix is not square");
        for (const cplx& x : row) {
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
                throw DomainError("FiniteOperator: non-finite matrix entry");
            }
        }
    }
}

void CauchyProblem::validate() const {
    if (!(delta > 1.0 && delta <= 2.0)) {
        throw DomainError("CauchyProblem: delta must lie in (1, 2]");
    }
    if (is_matrix()) {
        std::get<FiniteOperator>(op).validate();
    } else if (std::get<ScaleProblem>(op).u0.taylor.empty()) {
        throw DomainError("CauchyProblem: empty Taylor data");
    }
    for (const cplx& w : star.singularities) {
        if (w == cplx(0.0, 0.0)) {
            throw DomainError("CauchyProblem: singularity at the origin is not admissible");
        }
    }
}

std::vector<std::vector<cplx>> power_sequence(const FiniteOperator& op, int N) {
    op.validate();
    if (N < 0) throw DomainError("power_sequence: N must be nonnegative");
    std::vector<std::vector<cplx>> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    out.push_back(op.u0);
    for (int k = 1; k <= N; ++k) out.push_back(apply_matrix(op, out.back()));
    return out;
}

std::vector<ScaleElement> power_sequence(const ScaleElement& u0, int N) {
    if (N < 0) throw DomainError("power_sequence: N must be nonnegative");
    if (u0.taylor.size() < static_cast<std::size_t>(N) + 1) {
        throw TruncationError("power_sequence: Taylor data has fewer than N+1 coefficients");
    }
    std::vector<ScaleElement> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    out.push_back(u0);
    for (int k = 1; k <= N; ++k) {
        const auto& prev = out.back().taylor;
        ScaleElement next;
        next.taylor.resize(prev.size() - 1);
        for (std::size_t n = 0; n + 1 < prev.size(); ++n) {
            next.taylor[n] = static_cast<double>(n + 1) * prev[n + 1];
        }
        out.push_back(std::move(next));
    }
    return out;
}

SolveResult solve_classical(const CauchyProblem& p, cplx t, double tol, int n_max) {
    p.validate();
    if (p.is_matrix()) {
        const auto& op = std::get<FiniteOperator>(p.op);
        // Basis y_n = A^n u0 / n!, so the weight is plainly t^n.
        cplx power(1.0, 0.0);
        return sum_vector_series(
            op.dim(), op.u0,
            [&power](int) { return power; },
            [&](int n, std::vector<cplx> base) {
                power *= t;
                base = apply_matrix(op, base);
                for (cplx& x : base) x /= static_cast<double>(n + 1);
                return base;
            },
            tol, n_max);
    }
    PowerSeries series{scale_of(p).u0.taylor, p.star.singularities};
    const EvaluationReport rep = evaluate(series, t, tol, n_max);
    SolveResult res;
    res.value = {rep.value};
    res.report = rep;
    return res;
}

SolveResult solve_fractional(const CauchyProblem& p, double t, double tol, int n_max) {
    p.validate();
    if (!(t >= 0.0)) throw DomainError("solve_fractional: requires real t >= 0");
    if (p.is_matrix()) {
        const auto& op = std::get<FiniteOperator>(p.op);
        if (t == 0.0) {
            SolveResult res;
            res.value = op.u0;
            res.report.terms_used = 1;
            res.report.converged = true;
            return res;
        }
        const double lt = std::log(t);
        const double delta = p.delta;
        // Weight n! t^{delta n} / Gamma(delta n + 1) against y_n = A^n u0 / n!.
        auto weight = [lt, delta](int n) {
            const double e = std::lgamma(n + 1.0) + delta * n * lt -
                             std::lgamma(delta * n + 1.0);
            if (e > 690.0) {
                throw OverflowError("solve_fractional: term magnitude exceeds double range");
            }
            return cplx(std::exp(e), 0.0);
        };
        return sum_vector_series(
            op.dim(), op.u0, weight,
            [&](int n, std::vector<cplx> base) {
                base = apply_matrix(op, base);
                for (cplx& x : base) x /= static_cast<double>(n + 1);
                return base;
            },
            tol, n_max);
    }
    // Observed at x = 0 the fractional solution is the rescaled series at t^delta.
    const double x = std::pow(t, p.delta);
    const ScalarSum s = rescaled_scalar_sum(scale_of(p).u0.taylor, p.delta, cplx(x, 0.0),
                                            tol, n_max, default_quad(tol));
    return from_scalar(s);
}

SolveResult solve_rescaled(const CauchyProblem& p, cplx t, double tol, int n_max) {
    p.validate();
    if (p.is_matrix()) {
        const auto& op = std::get<FiniteOperator>(p.op);
        cplx power(1.0, 0.0);
        const double delta = p.delta;
        auto weight = [&power, delta](int n) {
            return power * lambda_multiplier(n, delta);
        };
        return sum_vector_series(
            op.dim(), op.u0, weight,
            [&](int n, std::vector<cplx> base) {
                power *= t;
                base = apply_matrix(op, base);
                for (cplx& x : base) x /= static_cast<double>(n + 1);
                return base;
            },
            tol, n_max);
    }
    const ScalarSum s = rescaled_scalar_sum(scale_of(p).u0.taylor, p.delta, t, tol,
                                            n_max, default_quad(tol));
    return from_scalar(s);
}

std::vector<SweepRow> continuation_sweep(const CauchyProblem& p, cplx t,
                                         std::span<const double> deltas,
                                         std::optional<cplx> reference,
                                         double tol, int n_max) {
    p.validate();
    if (deltas.empty()) throw DomainError("continuation_sweep: empty delta schedule");
    for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
        if (!(deltas[i] > deltas[i + 1])) {
            throw DomainError("continuation_sweep: deltas must decrease strictly");
        }
    }
    if (p.is_matrix() && std::get<FiniteOperator>(p.op).dim() != 1) {
        throw DomainError("continuation_sweep: matrix problems must have a scalar observation");
    }
    if (reference && !p.star.singularities.empty() && !in_star(t, p.star)) {
        throw StarViolation("continuation_sweep: t outside the star of the reference solution");
    }

    std::vector<SweepRow> rows;
    rows.reserve(deltas.size());
    for (double d : deltas) {
        CauchyProblem q = p;
        q.delta = d;
        const SolveResult r = solve_rescaled(q, t, tol, n_max);
        SweepRow row;
        row.delta = d;
        row.value = r.value.size() == 1 ? r.value[0] : r.report.value;
        row.converged = r.report.converged;
        row.method = r.method;
        row.abs_error = reference ? std::abs(row.value - *reference)
                                  : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
    }
    return rows;
}

bool in_star(cplx t, const StarDomain& star, double angular_tol) {
    if (t == cplx(0.0, 0.0)) return true;
    const double arg_t = std::arg(t);
    const double mag_t = std::abs(t);
    for (const cplx& w : star.singularities) {
        double dtheta = std::abs(arg_t - std::arg(w));
        dtheta = std::min(dtheta, 2.0 * kPi - dtheta);
        const double mag_w = std::abs(w);
        if (dtheta <= angular_tol && mag_t >= mag_w * (1.0 - angular_tol)) {
            return false;
        }
    }
    return true;
}

double norm_at(const ScaleElement& element, double omega) {
    if (!(omega >= 0.0 && omega < 1.0)) {
        throw DomainError("norm_at: omega must lie in [0, 1)");
    }
    const double q = 1.0 - omega;
    Compensated acc;
    double qn = 1.0;
    for (const cplx& c : element.taylor) {
        acc.add(std::abs(c) * qn);
        qn *= q;
    }
    return acc.total();
}

NormBoundReport norm_bound_check(const ScaleElement& element, double omega1,
                                 double omega2, int trials, std::uint64_t seed) {
    if (!(omega1 >= 0.0 && omega1 < omega2 && omega2 < 1.0)) {
        throw DomainError("norm_bound_check: need 0 <= omega1 < omega2 < 1");
    }
    NormBoundReport report;
    const double gap = omega2 - omega1;

    auto check_one = [&](const ScaleElement& e, int index) {
        ScaleElement de;
        if (e.taylor.size() > 1) {
            de.taylor.resize(e.taylor.size() - 1);
            for (std::size_t n = 0; n + 1 < e.taylor.size(); ++n) {
                de.taylor[n] = static_cast<double>(n + 1) * e.taylor[n + 1];
            }
        }
        const double lhs = de.taylor.empty() ? 0.0 : norm_at(de, omega2);
        const double rhs = norm_at(e, omega1);
        const double ratio = (rhs == 0.0) ? 0.0 : lhs * gap / rhs;
        report.worst_ratio = std::max(report.worst_ratio, ratio);
        ++report.elements_checked;
        if (ratio > 1.0 + 1e-12) {
            throw BoundViolation("norm_bound_check: bound violated on element #" +
                                 std::to_string(index) + " with ratio " +
                                 std::to_string(ratio));
        }
    };

    check_one(element, 0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> len(1, 100);
    for (int k = 1; k <= trials; ++k) {
        ScaleElement e;
        const int m = len(rng);
        e.taylor.reserve(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) e.taylor.emplace_back(unit(rng), unit(rng));
        check_one(e, k);
    }
    report.passed = true;
    return report;
}

} // namespace fracstar
