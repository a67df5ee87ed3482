#include "fracstar/series.hpp"

#include <algorithm>
#include <cmath>

namespace fracstar {

namespace {

// Terms beyond this magnitude mark the partial sums as divergent.
constexpr double kDivergenceGuard = 1e200;

// Neumaier-compensated accumulator for one real component.
struct Compensated {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double total() const { return sum + comp; }
};

} // namespace

double lambda_multiplier(int n, double delta) {
    if (n < 0) throw DomainError("lambda_multiplier: n must be nonnegative");
    if (!(delta >= 1.0 && delta <= 2.0)) {
        throw DomainError("lambda_multiplier: delta must lie in [1, 2]");
    }
    const double a = static_cast<double>(n) + 1.0;
    const double b = delta * static_cast<double>(n) + 1.0;
    if (a == b) return 1.0;
    const cplx diff = log_gamma(cplx(a, 0.0)) - log_gamma(cplx(b, 0.0));
    return std::exp(diff.real());
}

PowerSeries apply_multipliers(const PowerSeries& series, double delta) {
    PowerSeries out;
    out.coeffs.reserve(series.coeffs.size());
    for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
        out.coeffs.push_back(series.coeffs[n] * lambda_multiplier(static_cast<int>(n), delta));
    }
    return out;
}

EvaluationReport evaluate(const PowerSeries& series, cplx t, double tol, int n_max) {
    if (!(tol > 0.0)) throw DomainError("evaluate: tol must be positive");
    if (n_max < 1) throw DomainError("evaluate: n_max must be >= 1");
    if (series.coeffs.empty()) throw DomainError("evaluate: empty coefficient list");

    const std::size_t count =
        std::min(series.coeffs.size(), static_cast<std::size_t>(n_max) + 1);

    Compensated re, im;
    EvaluationReport rep;
    cplx power(1.0, 0.0);
    double prev_mag = -1.0;
    double last_mag = 0.0;
    int small_streak = 0;
    bool seen_nonzero = false;
    bool diverged = false;

    std::size_t n = 0;
    for (; n < count; ++n) {
        const cplx term = series.coeffs[n] * power;
        const double mag = std::abs(term);
        if (!std::isfinite(mag) || mag > kDivergenceGuard) {
            diverged = true;
            break;
        }
        re.add(term.real());
        im.add(term.imag());
        ++rep.terms_used;
        if (mag != 0.0) seen_nonzero = true;

        const double scale = std::max(1.0, std::hypot(re.total(), im.total()));
        // The streak only starts once a nonzero term has been seen (or t = 0
        // truncated everything): leading zero coefficients must not trigger
        // the stop rule before the series proper begins.
        if (seen_nonzero || t == cplx(0.0, 0.0)) {
            if (mag < tol * scale) {
                ++small_streak;
            } else {
                small_streak = 0;
            }
        }
        prev_mag = (n == 0) ? -1.0 : last_mag;
        last_mag = mag;

        if (small_streak >= 3) {
            ++n;
            break;
        }
        power *= t;
    }

    rep.value = cplx(re.total(), im.total());

    if (diverged) {
        rep.tail_estimate = std::numeric_limits<double>::infinity();
        rep.converged = false;
        return rep;
    }

    if (!seen_nonzero) {
        // Every term vanished identically; the sum is exact.
        rep.tail_estimate = 0.0;
        rep.converged = true;
        return rep;
    }

    // Geometric extrapolation of the tail from the last term ratio.
    if (prev_mag > 0.0 && last_mag > 0.0) {
        const double rho = last_mag / prev_mag;
        rep.tail_estimate = (rho < 1.0) ? last_mag * rho / (1.0 - rho) : last_mag;
    } else {
        rep.tail_estimate = last_mag;
    }

    const double scale = std::max(1.0, std::abs(rep.value));
    const int needed = static_cast<int>(std::min<std::size_t>(3, count));
    rep.converged = (small_streak >= needed) && (rep.tail_estimate <= tol * scale);
    return rep;
}

namespace {

// Least-squares slope of log|a_n| over the index window [lo, hi).
// Returns false when fewer than two nonzero coefficients are present.
bool fit_slope(const std::vector<cplx>& a, std::size_t lo, std::size_t hi, double& slope) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t n = lo; n < hi; ++n) {
        const double mag = std::abs(a[n]);
        if (mag == 0.0) continue;
        const double x = static_cast<double>(n);
        const double y = std::log(mag);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 2) return false;
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return false;
    slope = (m * sxy - sx * sy) / denom;
    return true;
}

} // namespace

double radius_estimate(const PowerSeries& series) {
    const auto& a = series.coeffs;
    const std::size_t n = a.size();
    const std::size_t lo = n / 2;
    std::size_t nonzero = 0;
    for (std::size_t k = lo; k < n; ++k) {
        if (std::abs(a[k]) != 0.0) ++nonzero;
    }
    if (nonzero < 8) {
        throw InsufficientData("radius_estimate: need at least 8 nonzero trailing coefficients");
    }

    double slope = 0.0;
    if (!fit_slope(a, lo, n, slope)) {
        throw InsufficientData("radius_estimate: degenerate trailing window");
    }

    // Steepening decay across the two halves of the window indicates a
    // super-geometric (entire) tail.
    const std::size_t mid = lo + (n - lo) / 2;
    double s1 = 0.0, s2 = 0.0;
    if (fit_slope(a, lo, mid, s1) && fit_slope(a, mid, n, s2) && s2 < s1 - 0.1) {
        return kRadiusInfinity;
    }

    const double radius = std::exp(-slope);
    return (radius > 1e6) ? kRadiusInfinity : radius;
}

} // namespace fracstar
