#pragma once

#include <string>

#include "fracstar/evolution.hpp"
#include "fracstar/series.hpp"

namespace fracstar {

// File formats (JSON):
//
//   PowerSeries   {"coeffs": [[re,im], ...], "singularities": [[re,im], ...]}
//   CauchyProblem {"kind": "matrix", "matrix": [[...], ...], "u0": [...],
//                  "delta": d, "singularities": [...]}
//                 {"kind": "derivative", "taylor": [...],
//                  "delta": d, "singularities": [...]}
//
// Complex entries are [re, im] pairs; bare numbers are accepted on input and
// read as real.  All loaders throw ParseError on malformed input.

PowerSeries load_power_series(const std::string& path);
void save_power_series(const PowerSeries& series, const std::string& path);

CauchyProblem load_cauchy_problem(const std::string& path);
void save_cauchy_problem(const CauchyProblem& problem, const std::string& path);

// "re" or "re,im" or "(re,im)" -> complex; used by CLI flags.
cplx parse_complex(const std::string& text);

} // namespace fracstar
