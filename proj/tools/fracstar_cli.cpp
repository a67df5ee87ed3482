// Command-line front end: evaluation grids and convergence tables as CSV or
// JSON, with reproducibility metadata on every table.
//
// Exit codes: 0 success, 2 input error, 3 star violation, 4 tolerance failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracstar/evolution.hpp"
#include "fracstar/io.hpp"
#include "fracstar/version.hpp"

using fracstar::cplx;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitStar = 3;
constexpr int kExitTolerance = 4;

struct Defaults {
    double tol = 1e-10;       // evaluation tolerance
    double quad_tol = 1e-8;   // contour quadrature tolerance
    double angular_tol = 1e-9;
    int nodes = 256;
    double abscissa = 0.5;
};

// Shortest representation that still round-trips to the same double.
std::string fmt(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> verdicts;

    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
    void add_meta(const std::string& k, double v) { meta.emplace_back(k, fmt(v)); }

    std::string to_csv() const {
        std::ostringstream os;
        os << "# fracstar=" << fracstar::kVersion
           << " modules=complex_gamma:" << fracstar::kGammaModuleVersion
           << ";series_core:" << fracstar::kSeriesModuleVersion
           << ";wright:" << fracstar::kWrightModuleVersion
           << ";evolution:" << fracstar::kEvolutionModuleVersion
           << ";cli:" << fracstar::kCliModuleVersion;
        for (const auto& [k, v] : meta) os << " " << k << "=" << v;
        os << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            os << (i ? "," : "") << columns[i];
        }
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ",";
                if (std::holds_alternative<double>(row[i])) os << fmt(std::get<double>(row[i]));
                else if (std::holds_alternative<long long>(row[i])) os << std::get<long long>(row[i]);
                else if (std::holds_alternative<bool>(row[i])) os << (std::get<bool>(row[i]) ? "true" : "false");
                else os << std::get<std::string>(row[i]);
            }
            os << "\n";
        }
        for (const auto& [k, v] : verdicts) os << "# verdict " << k << "=" << v << "\n";
        return os.str();
    }

    std::string to_json() const {
        json j;
        j["fracstar"] = fracstar::kVersion;
        json mods;
        mods["complex_gamma"] = fracstar::kGammaModuleVersion;
        mods["series_core"] = fracstar::kSeriesModuleVersion;
        mods["wright"] = fracstar::kWrightModuleVersion;
        mods["evolution"] = fracstar::kEvolutionModuleVersion;
        mods["cli"] = fracstar::kCliModuleVersion;
        j["modules"] = mods;
        json m;
        for (const auto& [k, v] : meta) m[k] = v;
        j["meta"] = m;
        j["columns"] = columns;
        j["rows"] = json::array();
        for (const auto& row : rows) {
            json r;
            for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) {
                const auto& cell = row[i];
                if (std::holds_alternative<double>(cell)) r[columns[i]] = std::get<double>(cell);
                else if (std::holds_alternative<long long>(cell)) r[columns[i]] = std::get<long long>(cell);
                else if (std::holds_alternative<bool>(cell)) r[columns[i]] = std::get<bool>(cell);
                else r[columns[i]] = std::get<std::string>(cell);
            }
            j["rows"].push_back(r);
        }
        if (!verdicts.empty()) {
            json v;
            for (const auto& [k, val] : verdicts) {
                if (val == "true" || val == "false") v[k] = (val == "true");
                else v[k] = val;
            }
            j["verdict"] = v;
        }
        return j.dump(2) + "\n";
    }
};

void write_output(const Table& table, const std::string& format, const std::string& out_path) {
    const std::string text = (format == "json") ? table.to_json() : table.to_csv();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw fracstar::ParseError("cannot write " + out_path);
        f << text;
    }
}

std::vector<double> parse_delta_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw fracstar::ParseError("bad delta value \"" + item + "\"");
        }
    }
    if (out.empty()) throw fracstar::ParseError("empty delta list");
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (!(out[i] > out[i + 1])) {
            throw fracstar::ParseError("deltas must decrease strictly");
        }
    }
    return out;
}

// Grid spec "re0:re1:n,im0:im1:m" -> rectangular lattice in row-major order.
std::vector<cplx> parse_grid(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw fracstar::ParseError("grid needs re and im ranges");
    auto parse_axis = [](const std::string& s) {
        double lo, hi;
        int n;
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
            throw fracstar::ParseError("bad grid axis \"" + s + "\" (want lo:hi:count)");
        }
        std::vector<double> v;
        for (int k = 0; k < n; ++k) {
            v.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
        }
        return v;
    };
    const auto res = parse_axis(text.substr(0, comma));
    const auto ims = parse_axis(text.substr(comma + 1));
    std::vector<cplx> out;
    for (double im : ims) {
        for (double re : res) out.emplace_back(re, im);
    }
    return out;
}

fracstar::ContourConfig quad_config(const Defaults& d) {
    fracstar::ContourConfig cfg;
    cfg.tol = d.quad_tol;
    cfg.nodes = d.nodes;
    cfg.abscissa = d.abscissa;
    return cfg;
}

void load_config_file(const std::string& path, Defaults& d) {
    std::ifstream in(path);
    if (!in) throw fracstar::ParseError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw fracstar::ParseError(std::string("bad config: ") + e.what());
    }
    if (j.contains("tol")) d.tol = j["tol"].get<double>();
    if (j.contains("quad_tol")) d.quad_tol = j["quad_tol"].get<double>();
    if (j.contains("angular_tol")) d.angular_tol = j["angular_tol"].get<double>();
    if (j.contains("nodes")) d.nodes = j["nodes"].get<int>();
    if (j.contains("abscissa")) d.abscissa = j["abscissa"].get<double>();
}

// ---- subcommand bodies ----------------------------------------------------

int run_wright_eval(double delta, const std::string& method,
                    const std::vector<std::string>& z_flags, const std::string& grid,
                    const Defaults& d, const std::string& format, const std::string& out) {
    std::vector<cplx> points;
    for (const auto& s : z_flags) points.push_back(fracstar::parse_complex(s));
    if (!grid.empty()) {
        const auto g = parse_grid(grid);
        points.insert(points.end(), g.begin(), g.end());
    }
    if (points.empty()) throw fracstar::ParseError("no evaluation points (use --z or --grid)");
    if (method != "series" && method != "integral" && method != "auto") {
        throw fracstar::ParseError("method must be series, integral, or auto");
    }
    const fracstar::WrightParams params(delta);
    const auto cfg = quad_config(d);

    Table t;
    t.add_meta("command", "wright-eval");
    t.add_meta("delta", delta);
    t.add_meta("tol", d.tol);
    t.add_meta("quad_tol", d.quad_tol);
    t.add_meta("evaluator", method);
    t.columns = {"z_re", "z_im", "value_re", "value_im", "method", "work", "tail", "error"};
    for (const cplx& z : points) {
        std::vector<Cell> row{z.real(), z.imag()};
        try {
            fracstar::PhiResult r;
            if (method == "series") r = fracstar::phi_series_report(params, z, d.tol);
            else if (method == "integral") r = fracstar::phi_integral_report(params, z, cfg);
            else r = fracstar::phi_auto(delta, z, d.tol, cfg);
            row.insert(row.end(), {r.value.real(), r.value.imag(), std::string(r.method),
                                   static_cast<long long>(r.work), r.tail, std::string("")});
        } catch (const fracstar::BranchError&) {
            row.insert(row.end(), {0.0, 0.0, std::string(""), 0LL, 0.0, std::string("BranchError")});
        } catch (const fracstar::TailError&) {
            row.insert(row.end(), {0.0, 0.0, std::string(""), 0LL, 0.0, std::string("TailError")});
        } catch (const fracstar::SlowConvergence&) {
            row.insert(row.end(), {0.0, 0.0, std::string(""), 0LL, 0.0, std::string("SlowConvergence")});
        } catch (const fracstar::DomainError&) {
            row.insert(row.end(), {0.0, 0.0, std::string(""), 0LL, 0.0, std::string("DomainError")});
        }
        t.rows.push_back(std::move(row));
    }
    write_output(t, format, out);
    return kExitOk;
}

int run_star_sum(const std::string& series_path, const std::string& t_text,
                 const std::string& deltas_text, const std::string& reference_text,
                 const Defaults& d, const std::string& format, const std::string& out) {
    const fracstar::PowerSeries series = fracstar::load_power_series(series_path);
    const cplx t = fracstar::parse_complex(t_text);
    const std::vector<double> deltas = parse_delta_list(deltas_text);
    for (double x : deltas) {
        if (!(x > 1.0 && x < 2.0)) {
            throw fracstar::ParseError("star-sum deltas must lie in (1, 2)");
        }
    }
    std::optional<cplx> reference;
    if (!reference_text.empty()) reference = fracstar::parse_complex(reference_text);

    const fracstar::StarDomain star{series.singularities};
    if (reference && !star.singularities.empty() &&
        !fracstar::in_star(t, star, d.angular_tol)) {
        std::cerr << "star-sum: t = " << fmt(t.real()) << (t.imag() < 0 ? "" : "+")
                  << fmt(t.imag()) << "i lies outside the star of the series\n";
        return kExitStar;
    }

    const auto cfg = quad_config(d);
    Table tab;
    tab.add_meta("command", "star-sum");
    tab.add_meta("series", series_path);
    tab.add_meta("t", fmt(t.real()) + (t.imag() < 0 ? "" : "+") + fmt(t.imag()) + "i");
    tab.add_meta("deltas", deltas_text);
    tab.add_meta("tol", d.tol);
    tab.add_meta("quad_tol", d.quad_tol);
    tab.add_meta("evaluator", "auto");
    tab.columns = {"delta", "value_re", "value_im", "abs_error", "method", "work", "converged"};

    std::vector<double> errors;
    for (double delta : deltas) {
        const auto s = fracstar::rescaled_scalar_sum(series.coeffs, delta, t, d.tol,
                                                     fracstar::kPhiSeriesMaxTerms, cfg);
        const double err = reference ? std::abs(s.value - *reference)
                                     : std::numeric_limits<double>::quiet_NaN();
        if (reference) errors.push_back(err);
        tab.rows.push_back({delta, s.value.real(), s.value.imag(), err,
                            std::string(s.method), static_cast<long long>(s.work),
                            s.converged});
    }
    if (reference) {
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
            if (!(errors[i] > errors[i + 1])) monotone = false;
        }
        tab.verdicts.emplace_back("monotone_decreasing", monotone ? "true" : "false");
    } else {
        tab.verdicts.emplace_back("monotone_decreasing", "na");
    }
    write_output(tab, format, out);
    return kExitOk;
}

int run_evolve(const std::string& problem_path, const std::string& t_text,
               const std::string& mode, double delta_override, const Defaults& d,
               const std::string& format, const std::string& out) {
    fracstar::CauchyProblem problem = fracstar::load_cauchy_problem(problem_path);
    if (delta_override > 0.0) problem.delta = delta_override;
    const cplx t = fracstar::parse_complex(t_text);
    if (mode != "classical" && mode != "fractional" && mode != "rescaled") {
        throw fracstar::ParseError("mode must be classical, fractional, or rescaled");
    }

    fracstar::SolveResult r;
    if (mode == "classical") {
        r = fracstar::solve_classical(problem, t, d.tol, fracstar::kPhiSeriesMaxTerms);
    } else if (mode == "fractional") {
        if (t.imag() != 0.0) {
            throw fracstar::ParseError("fractional mode needs real t >= 0");
        }
        r = fracstar::solve_fractional(problem, t.real(), d.tol, fracstar::kPhiSeriesMaxTerms);
    } else {
        r = fracstar::solve_rescaled(problem, t, d.tol, fracstar::kPhiSeriesMaxTerms);
    }

    Table tab;
    tab.add_meta("command", "evolve");
    tab.add_meta("problem", problem_path);
    tab.add_meta("mode", mode);
    tab.add_meta("delta", problem.delta);
    tab.add_meta("tol", d.tol);
    tab.add_meta("evaluator", r.method);
    if (!problem.is_matrix()) {
        tab.add_meta("existence_time",
                     std::get<fracstar::ScaleProblem>(problem.op).model.existence_time);
    }
    tab.columns = {"t_re", "t_im"};
    for (std::size_t i = 0; i < r.value.size(); ++i) {
        tab.columns.push_back("value" + std::to_string(i) + "_re");
        tab.columns.push_back("value" + std::to_string(i) + "_im");
    }
    tab.columns.insert(tab.columns.end(), {"terms", "tail", "converged"});
    std::vector<Cell> row{t.real(), t.imag()};
    for (const cplx& v : r.value) {
        row.push_back(v.real());
        row.push_back(v.imag());
    }
    row.push_back(static_cast<long long>(r.report.terms_used));
    row.push_back(r.report.tail_estimate);
    row.emplace_back(r.report.converged);
    tab.rows.push_back(std::move(row));
    write_output(tab, format, out);
    return kExitOk;
}

int run_kernel_check(const std::vector<std::string>& z_flags, const Defaults& d,
                     double height, const std::string& format, const std::string& out) {
    if (z_flags.empty()) throw fracstar::ParseError("kernel-check needs at least one --z");
    fracstar::ContourConfig cfg = quad_config(d);
    cfg.tol = d.quad_tol / 100.0; // keep quadrature noise well under the pass threshold
    cfg.height = height;

    Table tab;
    tab.add_meta("command", "kernel-check");
    tab.add_meta("tol", d.quad_tol);
    tab.add_meta("nodes", fmt(static_cast<double>(d.nodes)));
    tab.add_meta("abscissa", d.abscissa);
    tab.add_meta("evaluator", "contour");
    tab.columns = {"z_re", "z_im", "kernel_re", "kernel_im", "ref_re", "ref_im",
                   "abs_error", "error"};
    bool failed = false;
    for (const auto& zs : z_flags) {
        const cplx z = fracstar::parse_complex(zs);
        std::vector<Cell> row{z.real(), z.imag()};
        try {
            const cplx k = fracstar::limit_kernel(z, cfg);
            const cplx ref = 1.0 / (1.0 - z);
            const double err = std::abs(k - ref);
            if (!(err <= d.quad_tol)) failed = true;
            row.insert(row.end(), {k.real(), k.imag(), ref.real(), ref.imag(), err,
                                   std::string("")});
        } catch (const fracstar::BranchError&) {
            failed = true;
            row.insert(row.end(), {0.0, 0.0, 0.0, 0.0, 0.0, std::string("BranchError")});
        } catch (const fracstar::TailError&) {
            failed = true;
            row.insert(row.end(), {0.0, 0.0, 0.0, 0.0, 0.0, std::string("TailError")});
        }
        tab.rows.push_back(std::move(row));
    }
    tab.verdicts.emplace_back("within_tolerance", failed ? "false" : "true");
    write_output(tab, format, out);
    return failed ? kExitTolerance : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional-order approximation of evolution equations and their analytic continuation"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    Defaults defaults;
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
    app.add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--config", config_path, "JSON file overriding tolerance defaults");

    // wright-eval
    auto* we = app.add_subcommand("wright-eval", "Evaluate phi_delta on a set of points");
    double we_delta = 1.5;
    std::string we_method = "auto";
    std::vector<std::string> we_z;
    std::string we_grid;
    double we_tol = -1.0;
    we->add_option("--delta", we_delta, "Order delta in [1, 2)")->required();
    we->add_option("--method", we_method, "series | integral | auto");
    we->add_option("--z", we_z, "Evaluation point re[,im] (repeatable)");
    we->add_option("--grid", we_grid, "Rectangular grid re0:re1:n,im0:im1:m");
    we->add_option("--tol", we_tol, "Evaluation tolerance");

    // star-sum
    auto* ss = app.add_subcommand("star-sum", "Continuation sweep of a power series file");
    std::string ss_file, ss_t, ss_deltas, ss_reference;
    double ss_tol = -1.0;
    ss->add_option("series", ss_file, "PowerSeries JSON file")->required();
    ss->add_option("--t", ss_t, "Evaluation point re[,im]")->required();
    ss->add_option("--deltas", ss_deltas, "Strictly decreasing list, e.g. 1.2,1.1,1.05")->required();
    ss->add_option("--reference", ss_reference, "Closed-form reference value re[,im]");
    ss->add_option("--tol", ss_tol, "Evaluation tolerance");

    // evolve
    auto* ev = app.add_subcommand("evolve", "Solve a Cauchy problem file at one point");
    std::string ev_file, ev_t, ev_mode;
    double ev_delta = -1.0, ev_tol = -1.0;
    ev->add_option("problem", ev_file, "CauchyProblem JSON file")->required();
    ev->add_option("--t", ev_t, "Evaluation point re[,im]")->required();
    ev->add_option("--mode", ev_mode, "classical | fractional | rescaled")->required();
    ev->add_option("--delta", ev_delta, "Override the problem's delta");
    ev->add_option("--tol", ev_tol, "Evaluation tolerance");

    // kernel-check
    auto* kc = app.add_subcommand("kernel-check", "Verify the limit kernel against 1/(1-z)");
    std::vector<std::string> kc_z;
    double kc_tol = -1.0, kc_height = 0.0;
    int kc_nodes = -1;
    kc->add_option("--z", kc_z, "Check point re[,im] (repeatable)")->required();
    kc->add_option("--tol", kc_tol, "Pass tolerance (default 1e-8)");
    kc->add_option("--nodes", kc_nodes, "Minimum quadrature nodes");
    kc->add_option("--height", kc_height, "Fixed contour half-height (default: auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (!config_path.empty()) load_config_file(config_path, defaults);
        if (we->parsed()) {
            if (we_tol > 0.0) defaults.tol = we_tol;
            return run_wright_eval(we_delta, we_method, we_z, we_grid, defaults, format, out_path);
        }
        if (ss->parsed()) {
            if (ss_tol > 0.0) defaults.tol = ss_tol;
            return run_star_sum(ss_file, ss_t, ss_deltas, ss_reference, defaults, format, out_path);
        }
        if (ev->parsed()) {
            if (ev_tol > 0.0) defaults.tol = ev_tol;
            return run_evolve(ev_file, ev_t, ev_mode, ev_delta, defaults, format, out_path);
        }
        if (kc->parsed()) {
            if (kc_tol > 0.0) defaults.quad_tol = kc_tol;
            if (kc_nodes > 0) defaults.nodes = kc_nodes;
            return run_kernel_check(kc_z, defaults, kc_height, format, out_path);
        }
    } catch (const fracstar::StarViolation& e) {
        std::cerr << e.what() << "\n";
        return kExitStar;
    } catch (const fracstar::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
