#include "fracstar/continuation.hpp"

#include <cmath>

#include "bigsum.hpp"

namespace fracstar {

namespace {

constexpr double kFamilyRelTol = 1e-12;
constexpr std::size_t kFamilyMinCoeffs = 8;

bool close_rel(cplx a, cplx b) {
    return std::abs(a - b) <= kFamilyRelTol * (std::abs(a) + std::abs(b));
}

ScalarSum direct_sum(std::span<const cplx> coeffs, double delta, cplx t,
                     double tol, int n_max) {
    const auto plan = detail::plan_lambda_sum(coeffs, delta, t, tol, n_max);
    const auto sum = detail::lambda_sum_planned(plan, coeffs, delta, t, tol);
    ScalarSum out;
    out.value = sum.value;
    out.method = sum.escalated ? "direct-mp" : "direct";
    out.work = sum.terms;
    out.tail = sum.tail;
    out.converged = sum.converged;
    return out;
}

} // namespace

CoefficientFamily detect_family(std::span<const cplx> coeffs) {
    CoefficientFamily fam;
    if (coeffs.size() < kFamilyMinCoeffs) return fam;

    // Geometric: every coefficient nonzero, constant ratio.
    bool geometric = coeffs[0] != cplx(0.0, 0.0) && coeffs[1] != cplx(0.0, 0.0);
    if (geometric) {
        const cplx q = coeffs[1] / coeffs[0];
        if (q != cplx(0.0, 0.0)) {
            for (std::size_t n = 1; n + 1 < coeffs.size() && geometric; ++n) {
                if (coeffs[n] == cplx(0.0, 0.0) ||
                    !close_rel(coeffs[n + 1], coeffs[n] * q)) {
                    geometric = false;
                }
            }
            if (geometric) {
                fam.kind = CoefficientFamily::Kind::Geometric;
                fam.a0 = coeffs[0];
                fam.ratio = q;
                return fam;
            }
        }
    }

    // Log family: n * a_n is geometric for n >= 1 (a_0 free, usually 0).
    bool log_like = coeffs[1] != cplx(0.0, 0.0) && coeffs[2] != cplx(0.0, 0.0);
    if (log_like) {
        const cplx b1 = coeffs[1];
        const cplx q = (2.0 * coeffs[2]) / b1;
        if (q != cplx(0.0, 0.0)) {
            for (std::size_t n = 1; n + 1 < coeffs.size() && log_like; ++n) {
                const cplx bn = static_cast<double>(n) * coeffs[n];
                const cplx bn1 = static_cast<double>(n + 1) * coeffs[n + 1];
                if (!close_rel(bn1, bn * q)) log_like = false;
            }
            if (log_like) {
                fam.kind = CoefficientFamily::Kind::Log;
                fam.a0 = coeffs[0];
                fam.ratio = q;
                fam.scale = b1 / q; // a_n = scale * q^n / n
                return fam;
            }
        }
    }
    return fam;
}

ScalarSum rescaled_scalar_sum(std::span<const cplx> coeffs, double delta, cplx t,
                              double tol, int n_max, const ContourConfig& quad) {
    if (!(delta >= 1.0 && delta <= 2.0)) {
        throw DomainError("rescaled_scalar_sum: delta must lie in [1, 2]");
    }
    if (coeffs.empty()) throw DomainError("rescaled_scalar_sum: empty coefficient list");
    if (!(tol > 0.0)) throw DomainError("rescaled_scalar_sum: tol must be positive");

    if (t == cplx(0.0, 0.0)) {
        ScalarSum out;
        out.value = coeffs[0];
        out.work = 1;
        out.converged = true;
        return out;
    }

    const CoefficientFamily fam = detect_family(coeffs);
    const bool phi_range = delta > 1.0 && delta < 2.0;

    if (fam.kind == CoefficientFamily::Kind::Geometric && phi_range) {
        const PhiResult r = phi_auto(delta, fam.ratio * t, tol, quad);
        ScalarSum out;
        out.value = fam.a0 * r.value;
        out.method = "phi-geometric";
        out.work = r.work;
        out.tail = r.tail * std::abs(fam.a0);
        out.converged = true;
        return out;
    }

    if (fam.kind == CoefficientFamily::Kind::Log && phi_range) {
        // sum_{n>=1} lambda_n (q t)^n / n = Int_0^1 (phi_delta(q t s) - 1)/s ds;
        // the integrand is entire in s with value lambda_1 * q t at 0.
        const cplx w = fam.ratio * t;
        ScalarSum out;
        out.method = "phi-log";
        cplx acc(0.0, 0.0);
        int work = 0;
        for (const auto& [x, wgt] : gauss_unit_interval(96)) {
            const PhiResult r = phi_auto(delta, w * x, tol / 3.0, quad);
            acc += wgt * (r.value - 1.0) / x;
            work += r.work;
        }
        out.value = fam.a0 + fam.scale * acc;
        out.work = work;
        out.tail = tol;
        out.converged = true;
        return out;
    }

    return direct_sum(coeffs, delta, t, tol, n_max);
}

} // namespace fracstar
