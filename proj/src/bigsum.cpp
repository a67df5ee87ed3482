#include "bigsum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fracstar::detail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxBits = 16384;

// ln w_n(delta), real path.
double log_weight(int n, double delta) {
    const double a = static_cast<double>(n) + 1.0;
    const double b = delta * static_cast<double>(n) + 1.0;
    return std::lgamma(a) - std::lgamma(b);
}

double log_mag(std::span<const cplx> coeffs, std::size_t n) {
    if (coeffs.empty()) return 0.0;
    const double m = std::abs(coeffs[n]);
    return (m == 0.0) ? kNegInf : std::log(m);
}

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

} // namespace

SumPlan plan_lambda_sum(std::span<const cplx> coeffs, double delta, cplx t,
                        double tol, int n_max) {
    SumPlan plan;
    const std::size_t limit = coeffs.empty()
        ? static_cast<std::size_t>(n_max) + 1
        : std::min(coeffs.size(), static_cast<std::size_t>(n_max) + 1);

    const double at = std::abs(t);
    if (at == 0.0 || limit <= 1) {
        plan.stop_index = 0;
        plan.peak_log = log_mag(coeffs, 0);
        plan.tail_reached = true;
        plan.tail_log = kNegInf;
        return plan;
    }
    const double lt = std::log(at);
    const double cutoff = std::log(tol) + std::log(0.02);

    std::vector<double> f(limit);
    double peak = kNegInf;
    std::size_t peak_at = 0;
    std::size_t stop = limit - 1;
    int small_streak = 0;
    bool seen_nonzero = false;
    for (std::size_t n = 0; n < limit; ++n) {
        const double la = log_mag(coeffs, n);
        f[n] = (la == kNegInf) ? kNegInf
                               : la + log_weight(static_cast<int>(n), delta) +
                                     static_cast<double>(n) * lt;
        if (f[n] != kNegInf) seen_nonzero = true;
        if (f[n] > peak) {
            peak = f[n];
            peak_at = n;
        }
        // Leading zero coefficients must not satisfy the stop rule before
        // any actual term has entered the sum.
        if (seen_nonzero && n > peak_at && f[n] <= cutoff) {
            if (++small_streak >= 3) {
                stop = n;
                plan.tail_reached = true;
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    if (!seen_nonzero) {
        // Identically zero data: the sum is exact.
        plan.stop_index = static_cast<int>(limit - 1);
        plan.peak_log = kNegInf;
        plan.tail_reached = true;
        plan.tail_log = kNegInf;
        return plan;
    }
    plan.stop_index = static_cast<int>(stop);
    plan.peak_log = peak;

    // Remainder estimate: geometric extrapolation of the final decay ratio.
    if (plan.tail_reached && stop >= 1 && f[stop] != kNegInf && f[stop - 1] != kNegInf) {
        const double dr = f[stop] - f[stop - 1];
        plan.tail_log = (dr < 0.0) ? f[stop] + dr - std::log1p(-std::exp(dr)) : f[stop];
    } else {
        plan.tail_log = plan.tail_reached ? cutoff : (stop < f.size() ? f[stop] : kNegInf);
    }

    // Double-path rounding estimate: each term carries a relative error of a
    // few ulp amplified by the lgamma magnitudes entering its exponent.
    double err_scaled = 0.0; // sum of e^{f(n)-peak} * per-term amplification
    for (std::size_t n = 0; n <= stop; ++n) {
        if (f[n] == kNegInf) continue;
        const double lg1 = std::lgamma(static_cast<double>(n) + 1.0);
        const double lg2 = std::lgamma(delta * static_cast<double>(n) + 1.0);
        const double amp = 8.0 + 3.0 * (std::abs(lg1) + std::abs(lg2) +
                                        std::abs(static_cast<double>(n) * lt));
        err_scaled += std::exp(f[n] - peak) * amp;
    }
    const double double_err_log = peak + std::log(err_scaled * kEps);
    plan.use_mpfr = !(double_err_log <= std::log(tol * 0.02));
    if (plan.use_mpfr) {
        const double need = peak - std::log(tol) +
                            std::log(static_cast<double>(stop) + 2.0) + 40.0;
        plan.mpfr_bits = std::max(128, static_cast<int>(need / std::numbers::ln2) + 32);
        if (plan.mpfr_bits > kMaxBits) plan.feasible = false;
    }
    return plan;
}

namespace {

BigSumResult sum_double(const SumPlan& plan, std::span<const cplx> coeffs,
                        double delta, cplx t) {
    const double lt = std::log(std::abs(t));
    const double th = std::arg(t);
    const bool real_axis = (t.imag() == 0.0);
    Compensated re, im;
    BigSumResult r;
    for (int n = 0; n <= plan.stop_index; ++n) {
        const std::size_t un = static_cast<std::size_t>(n);
        const cplx a = coeffs.empty() ? cplx(1.0, 0.0) : coeffs[un];
        if (a == cplx(0.0, 0.0)) {
            ++r.terms;
            continue;
        }
        cplx term;
        if (n == 0) {
            term = a;
        } else if (real_axis) {
            // Real t: keep t^n exactly real (sign from parity for t < 0).
            double factor = std::exp(log_weight(n, delta) + n * lt);
            if (t.real() < 0.0 && (n % 2) == 1) factor = -factor;
            term = a * factor;
        } else {
            const double lw = log_weight(n, delta);
            term = a * std::exp(cplx(lw + n * lt, n * th));
        }
        re.add(term.real());
        im.add(term.imag());
        ++r.terms;
    }
    r.value = cplx(re.total(), im.total());
    return r;
}

BigSumResult sum_mpfr(const SumPlan& plan, std::span<const cplx> coeffs,
                      double delta, cplx t) {
    const mpfr_prec_t prec = plan.mpfr_bits;
    mpfr_t dlt, arg, w, lg1, lg2;
    mpfr_t pr, pi, acc_r, acc_i, tr, ti, tmp1, tmp2, term_r, term_i;
    for (mpfr_t* p : {&dlt, &arg, &w, &lg1, &lg2, &pr, &pi, &acc_r, &acc_i,
                      &tr, &ti, &tmp1, &tmp2, &term_r, &term_i}) {
        mpfr_init2(*p, prec);
    }
    mpfr_set_d(dlt, delta, MPFR_RNDN);
    mpfr_set_d(tr, t.real(), MPFR_RNDN);
    mpfr_set_d(ti, t.imag(), MPFR_RNDN);
    mpfr_set_ui(pr, 1, MPFR_RNDN);
    mpfr_set_ui(pi, 0, MPFR_RNDN);
    mpfr_set_ui(acc_r, 0, MPFR_RNDN);
    mpfr_set_ui(acc_i, 0, MPFR_RNDN);

    BigSumResult r;
    r.escalated = true;
    for (int n = 0; n <= plan.stop_index; ++n) {
        const std::size_t un = static_cast<std::size_t>(n);
        const cplx a = coeffs.empty() ? cplx(1.0, 0.0) : coeffs[un];
        if (a != cplx(0.0, 0.0)) {
            // w = exp(lngamma(n+1) - lngamma(delta n + 1))
            mpfr_set_ui(arg, static_cast<unsigned long>(n) + 1, MPFR_RNDN);
            mpfr_lngamma(lg1, arg, MPFR_RNDN);
            mpfr_mul_ui(arg, dlt, static_cast<unsigned long>(n), MPFR_RNDN);
            mpfr_add_ui(arg, arg, 1, MPFR_RNDN);
            mpfr_lngamma(lg2, arg, MPFR_RNDN);
            mpfr_sub(w, lg1, lg2, MPFR_RNDN);
            mpfr_exp(w, w, MPFR_RNDN);

            // term = w * a * power
            mpfr_mul_d(tmp1, pr, a.real(), MPFR_RNDN);
            mpfr_mul_d(tmp2, pi, a.imag(), MPFR_RNDN);
            mpfr_sub(term_r, tmp1, tmp2, MPFR_RNDN);
            mpfr_mul_d(tmp1, pr, a.imag(), MPFR_RNDN);
            mpfr_mul_d(tmp2, pi, a.real(), MPFR_RNDN);
            mpfr_add(term_i, tmp1, tmp2, MPFR_RNDN);
            mpfr_mul(term_r, term_r, w, MPFR_RNDN);
            mpfr_mul(term_i, term_i, w, MPFR_RNDN);
            mpfr_add(acc_r, acc_r, term_r, MPFR_RNDN);
            mpfr_add(acc_i, acc_i, term_i, MPFR_RNDN);
        }
        ++r.terms;
        if (n == plan.stop_index) break;
        // power *= t
        mpfr_mul(tmp1, pr, tr, MPFR_RNDN);
        mpfr_mul(tmp2, pi, ti, MPFR_RNDN);
        mpfr_sub(term_r, tmp1, tmp2, MPFR_RNDN);
        mpfr_mul(tmp1, pr, ti, MPFR_RNDN);
        mpfr_mul(tmp2, pi, tr, MPFR_RNDN);
        mpfr_add(pi, tmp1, tmp2, MPFR_RNDN);
        mpfr_set(pr, term_r, MPFR_RNDN);
    }

    r.value = cplx(mpfr_get_d(acc_r, MPFR_RNDN), mpfr_get_d(acc_i, MPFR_RNDN));
    for (mpfr_t* p : {&dlt, &arg, &w, &lg1, &lg2, &pr, &pi, &acc_r, &acc_i,
                      &tr, &ti, &tmp1, &tmp2, &term_r, &term_i}) {
        mpfr_clear(*p);
    }
    mpfr_free_cache();
    return r;
}

} // namespace

BigSumResult lambda_sum_planned(const SumPlan& plan, std::span<const cplx> coeffs,
                                double delta, cplx t, double tol) {
    if (!plan.feasible) {
        BigSumResult r;
        r.converged = false;
        r.tail = std::numeric_limits<double>::infinity();
        return r;
    }
    BigSumResult r = plan.use_mpfr ? sum_mpfr(plan, coeffs, delta, t)
                                   : sum_double(plan, coeffs, delta, t);
    r.tail = std::exp(plan.tail_log);
    r.converged = plan.tail_reached && r.tail <= tol * std::max(1.0, std::abs(r.value));
    return r;
}

BigSumResult lambda_sum(std::span<const cplx> coeffs, double delta, cplx t,
                        double tol, int n_max) {
    const SumPlan plan = plan_lambda_sum(coeffs, delta, t, tol, n_max);
    return lambda_sum_planned(plan, coeffs, delta, t, tol);
}

} // namespace fracstar::detail
