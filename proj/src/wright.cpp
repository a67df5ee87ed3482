#include "fracstar/wright.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "bigsum.hpp"

namespace fracstar {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on the Legendre
// recurrence, cached per order.
struct GaussRule {
    std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.x.resize(static_cast<std::size_t>(n));
    rule.w.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 3e-15);
        rule.x[static_cast<std::size_t>(i - 1)] = -z;
        rule.x[static_cast<std::size_t>(n - i)] = z;
        rule.w[static_cast<std::size_t>(i - 1)] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[static_cast<std::size_t>(n - i)] = rule.w[static_cast<std::size_t>(i - 1)];
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

// Composite panels of width ~1 over [a, b]; per-panel order grows if the
// caller asks for more total nodes.
struct PanelLayout {
    int panels;
    int order;
};

PanelLayout layout_for(double a, double b, int min_total_nodes) {
    const int panels = std::max(4, static_cast<int>(std::ceil(b - a)));
    int order = 20;
    if (panels * order < min_total_nodes) {
        order = (min_total_nodes + panels - 1) / panels;
    }
    return {panels, order};
}

cplx integrate_panels(const std::function<cplx(double)>& f, double a, double b,
                      int min_total_nodes, int* work = nullptr) {
    const auto [panels, order] = layout_for(a, b, min_total_nodes);
    const GaussRule& rule = gauss_rule(order);
    cplx total(0.0, 0.0);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        cplx acc(0.0, 0.0);
        for (int k = 0; k < order; ++k) {
            const std::size_t uk = static_cast<std::size_t>(k);
            acc += rule.w[uk] * f(mid + 0.5 * h * rule.x[uk]);
        }
        total += 0.5 * h * acc;
    }
    if (work) *work = panels * order;
    return total;
}

// Integrand value at s = abscissa + iy given Lz = Log(-z).  Direct product
// for moderate |y|; assembled under one exp for large |y| where the separate
// factors leave double range.
cplx integrand_impl(double delta, cplx s, cplx lz) {
    if (std::abs(s.imag()) <= 15.0) {
        return gamma(1.0 - s) * recip_gamma(1.0 - delta * s) / sin_pi(s) *
               std::exp(-s * lz);
    }
    return std::exp(log_gamma(1.0 - s) - log_gamma(1.0 - delta * s) -
                    log_sin_pi(s) - s * lz);
}

cplx kernel_impl(cplx s, cplx lz) {
    if (std::abs(s.imag()) <= 15.0) return std::exp(-s * lz) / sin_pi(s);
    return std::exp(-s * lz - log_sin_pi(s));
}

struct ContourGeometry {
    cplx lz;       // Log(-z)
    double height; // truncation Y
};

// Decay rate of the integrand along the contour and the resulting
// truncation height for the requested tail tolerance.
ContourGeometry contour_geometry(cplx z, double decay_budget, const ContourConfig& config,
                                 const char* who) {
    if (on_positive_axis(z)) {
        throw BranchError(std::string(who) + ": z on the branch ray [0, inf)");
    }
    ContourGeometry geo;
    geo.lz = std::log(-z);
    const double alpha = decay_budget - std::abs(geo.lz.imag());
    const double need = alpha > 0.0 ? (std::log(1.0 / config.tol) + 5.0) / alpha
                                    : kMaxContourHeight + 1.0;
    geo.height = config.height > 0.0 ? config.height : need;
    if (alpha <= 0.0 || geo.height > kMaxContourHeight) {
        throw TailError(std::string(who) +
                        ": arg(-z) too close to the validity boundary, no admissible height");
    }
    return geo;
}

// (1/2i) Int f(s) ds over the truncated vertical contour.  For real data
// (real lz, abscissa on the real axis) conjugate symmetry folds the contour
// onto y in [0, Y].
cplx contour_value(const std::function<cplx(double)>& h, const ContourGeometry& geo,
                   bool real_symmetric, int min_nodes, int* work) {
    if (real_symmetric) {
        const cplx half = integrate_panels([&](double y) { return h(y); }, 0.0,
                                           geo.height, min_nodes / 2, work);
        return cplx(half.real(), 0.0);
    }
    return 0.5 * integrate_panels(h, -geo.height, geo.height, min_nodes, work);
}

} // namespace

bool on_positive_axis(cplx z, double angular_tol) {
    if (z == cplx(0.0, 0.0)) return true;
    return std::abs(std::arg(z)) <= angular_tol;
}

std::vector<std::pair<double, double>> gauss_unit_interval(int order) {
    const GaussRule& rule = gauss_rule(order);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        const std::size_t uk = static_cast<std::size_t>(k);
        out.emplace_back(0.5 * (rule.x[uk] + 1.0), 0.5 * rule.w[uk]);
    }
    return out;
}

cplx integrand(const WrightParams& params, cplx s, cplx z) {
    if (params.delta == 1.0) {
        throw DomainError("integrand: delta = 1 is a limit, not an evaluation point");
    }
    if (on_positive_axis(z)) {
        throw BranchError("integrand: z on the branch ray [0, inf)");
    }
    const double r = std::round(s.real());
    if (std::abs(s.real() - r) < kPoleEps && std::abs(s.imag()) < kPoleEps) {
        throw PoleError("integrand: s within pole tolerance of an integer");
    }
    return integrand_impl(params.delta, s, std::log(-z));
}

PhiResult phi_series_report(const WrightParams& params, cplx z, double tol) {
    if (!(tol > 0.0)) throw DomainError("phi_series: tol must be positive");
    if (params.delta == 1.0 && std::abs(z) >= 1.0) {
        throw DomainError("phi_series: delta = 1 is served only for |z| < 1");
    }
    const auto plan = detail::plan_lambda_sum({}, params.delta, z, tol, kPhiSeriesMaxTerms);
    if (!plan.tail_reached || !plan.feasible) {
        throw SlowConvergence("phi_series: required truncation index exceeds the term budget");
    }
    const auto sum = detail::lambda_sum_planned(plan, {}, params.delta, z, tol);
    PhiResult out;
    out.value = sum.value;
    out.method = sum.escalated ? "series-mp" : "series";
    out.work = sum.terms;
    out.tail = sum.tail;
    return out;
}

cplx phi_series(const WrightParams& params, cplx z, double tol) {
    return phi_series_report(params, z, tol).value;
}

PhiResult phi_integral_report(const WrightParams& params, cplx z, const ContourConfig& config) {
    config.validate();
    if (params.delta == 1.0) {
        throw DomainError("phi_integral: delta = 1 is a limit, not an evaluation point");
    }
    const double budget = 0.5 * kPi * (3.0 - params.delta);
    const ContourGeometry geo = contour_geometry(z, budget, config, "phi_integral");
    const bool real_neg = (z.imag() == 0.0 && z.real() < 0.0);
    const double a = config.abscissa;
    const double delta = params.delta;
    auto h = [&](double y) { return integrand_impl(delta, cplx(a, y), geo.lz); };
    int work = 0;
    PhiResult out;
    out.value = contour_value(h, geo, real_neg, config.nodes, &work);
    out.method = "integral";
    out.work = work;
    out.tail = config.tol;
    return out;
}

cplx phi_integral(const WrightParams& params, cplx z, const ContourConfig& config) {
    return phi_integral_report(params, z, config).value;
}

cplx limit_kernel(cplx z, const ContourConfig& config) {
    config.validate();
    const ContourGeometry geo = contour_geometry(z, kPi, config, "limit_kernel");
    const bool real_neg = (z.imag() == 0.0 && z.real() < 0.0);
    const double a = config.abscissa;
    auto h = [&](double y) { return kernel_impl(cplx(a, y), geo.lz); };
    return contour_value(h, geo, real_neg, config.nodes, nullptr);
}

PhiResult phi_auto(double delta, cplx z, double tol, const ContourConfig& config) {
    const WrightParams params(delta);
    if (delta == 1.0 && std::abs(z) >= 1.0) {
        throw DomainError("phi_auto: delta = 1 is served only for |z| < 1");
    }
    PhiResult out;

    const auto quick = detail::plan_lambda_sum({}, delta, z, tol, kSeriesDispatchLimit);
    const bool series_ok = quick.tail_reached && quick.feasible;
    if (series_ok || on_positive_axis(z) || delta == 1.0) {
        const auto plan = series_ok
            ? quick
            : detail::plan_lambda_sum({}, delta, z, tol, kPhiSeriesMaxTerms);
        if (!plan.tail_reached || !plan.feasible) {
            throw SlowConvergence("phi_auto: series impractical and the contour unavailable here");
        }
        const auto sum = detail::lambda_sum_planned(plan, {}, delta, z, tol);
        out.value = sum.value;
        out.method = sum.escalated ? "series-mp" : "series";
        out.work = sum.terms;
        out.tail = sum.tail;
        return out;
    }

    ContourConfig quad = config;
    quad.tol = std::min(quad.tol, tol);
    return phi_integral_report(params, z, quad);
}

double phi_limit_gap(double delta, cplx z, const ContourConfig& config) {
    // The reference 1/(1-z) is continued everywhere off [1, inf).
    if (z.imag() == 0.0 && z.real() >= 1.0 - kAngularTol) {
        throw DomainError("phi_limit_gap: z on the reference cut [1, inf)");
    }
    // Evaluate two orders below the configured tolerance so the reported gap
    // is dominated by the delta-distance, not by evaluation noise.
    const PhiResult r = phi_auto(delta, z, 0.01 * config.tol, config);
    return std::abs(r.value - 1.0 / (1.0 - z));
}

} // namespace fracstar
