#include "fracstar/io.hpp"

#include <fstream>

#include <json.hpp>

namespace fracstar {

namespace {

using nlohmann::json;

cplx complex_from_json(const json& j, const char* what) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return cplx(j[0].get<double>(), j[1].get<double>());
    }
    throw ParseError(std::string(what) + ": expected a number or [re, im] pair");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<cplx> complex_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(complex_from_json(e, what));
    return out;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void dump_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace

PowerSeries load_power_series(const std::string& path) {
    const json j = load_json(path);
    if (!j.is_object() || !j.contains("coeffs")) {
        throw ParseError(path + ": expected an object with a \"coeffs\" array");
    }
    PowerSeries s;
    s.coeffs = complex_list(j["coeffs"], "coeffs");
    if (s.coeffs.empty()) throw ParseError(path + ": coeffs must be nonempty");
    if (j.contains("singularities")) {
        s.singularities = complex_list(j["singularities"], "singularities");
        for (const cplx& w : s.singularities) {
            if (w == cplx(0.0, 0.0)) {
                throw ParseError(path + ": singularity at the origin is not admissible");
            }
        }
    }
    return s;
}

void save_power_series(const PowerSeries& series, const std::string& path) {
    json j;
    j["coeffs"] = json::array();
    for (const cplx& c : series.coeffs) j["coeffs"].push_back(complex_to_json(c));
    j["singularities"] = json::array();
    for (const cplx& w : series.singularities) j["singularities"].push_back(complex_to_json(w));
    dump_json(j, path);
}

CauchyProblem load_cauchy_problem(const std::string& path) {
    const json j = load_json(path);
    if (!j.is_object() || !j.contains("kind") || !j.contains("delta")) {
        throw ParseError(path + ": expected an object with \"kind\" and \"delta\"");
    }
    CauchyProblem p;
    if (!j["delta"].is_number()) throw ParseError(path + ": delta must be a number");
    p.delta = j["delta"].get<double>();

    const std::string kind = j["kind"].get<std::string>();
    if (kind == "matrix") {
        if (!j.contains("matrix") || !j.contains("u0")) {
            throw ParseError(path + ": matrix problems need \"matrix\" and \"u0\"");
        }
        FiniteOperator op;
        op.u0 = complex_list(j["u0"], "u0");
        if (!j["matrix"].is_array()) throw ParseError(path + ": matrix must be an array of rows");
        for (const auto& row : j["matrix"]) {
            op.matrix.push_back(complex_list(row, "matrix row"));
        }
        p.op = std::move(op);
    } else if (kind == "derivative") {
        if (!j.contains("taylor")) {
            throw ParseError(path + ": derivative problems need \"taylor\"");
        }
        ScaleProblem sp;
        sp.u0.taylor = complex_list(j["taylor"], "taylor");
        try {
            sp.model.existence_time = radius_estimate(PowerSeries{sp.u0.taylor, {}});
        } catch (const InsufficientData&) {
            sp.model.existence_time = 0.0; // unknown; too little Taylor data
        }
        p.op = std::move(sp);
    } else {
        throw ParseError(path + ": kind must be \"matrix\" or \"derivative\"");
    }

    if (j.contains("singularities")) {
        p.star.singularities = complex_list(j["singularities"], "singularities");
    }
    try {
        p.validate();
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return p;
}

void save_cauchy_problem(const CauchyProblem& problem, const std::string& path) {
    json j;
    j["delta"] = problem.delta;
    if (problem.is_matrix()) {
        const auto& op = std::get<FiniteOperator>(problem.op);
        j["kind"] = "matrix";
        j["matrix"] = json::array();
        for (const auto& row : op.matrix) {
            json r = json::array();
            for (const cplx& x : row) r.push_back(complex_to_json(x));
            j["matrix"].push_back(r);
        }
        j["u0"] = json::array();
        for (const cplx& x : op.u0) j["u0"].push_back(complex_to_json(x));
    } else {
        j["kind"] = "derivative";
        j["taylor"] = json::array();
        for (const cplx& c : std::get<ScaleProblem>(problem.op).u0.taylor) {
            j["taylor"].push_back(complex_to_json(c));
        }
    }
    j["singularities"] = json::array();
    for (const cplx& w : problem.star.singularities) {
        j["singularities"].push_back(complex_to_json(w));
    }
    dump_json(j, path);
}

cplx parse_complex(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '(' && s.back() == ')') {
        s = s.substr(1, s.size() - 2);
    }
    const auto comma = s.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used != s.size()) throw ParseError("trailing characters in \"" + text + "\"");
            return cplx(re, 0.0);
        }
        const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) throw ParseError("bad real part in \"" + text + "\"");
        const double im = std::stod(b, &used);
        if (used != b.size()) throw ParseError("bad imaginary part in \"" + text + "\"");
        return cplx(re, im);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("cannot parse complex number \"" + text + "\"");
    }
}

} // namespace fracstar
