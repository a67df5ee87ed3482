#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

// Run the CLI with stdout+stderr captured in a scratch file.
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path tmp = fs::temp_directory_path() /
                         ("fracstar_cli_out_" + std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(FRACSTAR_CLI_PATH) + " " + args + " > " +
                            tmp.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(raw);
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    fs::remove(tmp);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

const std::string kData = FRACSTAR_DATA_DIR;

} // namespace

TEST_CASE("wright-eval: value at 0 and agreement between methods") {
    const auto at0 = run_cli("wright-eval --delta 1.5 --z 0");
    CHECK(at0.exit_code == 0);
    const auto rows = lines_of(at0.output);
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0].rfind("# fracstar=", 0) == 0);
    CHECK(rows[0].find("delta=1.5") != std::string::npos);
    CHECK(rows[0].find("evaluator=") != std::string::npos);
    CHECK(rows[0].find("tol=") != std::string::npos);
    CHECK(rows[0].find("modules=") != std::string::npos);
    const auto cells = split_csv(rows[2]);
    CHECK(std::stod(cells[2]) == 1.0);
    CHECK(std::stod(cells[3]) == 0.0);

    const auto s = run_cli("wright-eval --delta 1.5 --z -1 --method series");
    const auto i = run_cli("wright-eval --delta 1.5 --z -1 --method integral");
    REQUIRE(s.exit_code == 0);
    REQUIRE(i.exit_code == 0);
    const double vs = std::stod(split_csv(lines_of(s.output)[2])[2]);
    const double vi = std::stod(split_csv(lines_of(i.output)[2])[2]);
    CHECK(std::abs(vs - vi) < 1e-8);

    const auto a = run_cli("wright-eval --delta 1.5 --z -1 --method auto");
    CHECK(lines_of(a.output)[2].find("series") != std::string::npos);
}

TEST_CASE("wright-eval: failed points are tagged, sweep continues") {
    const auto r = run_cli("wright-eval --delta 1.5 --method integral --z 3 --z -1");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 4);
    CHECK(rows[2].find("BranchError") != std::string::npos);
    CHECK(rows[3].find("BranchError") == std::string::npos);
}

TEST_CASE("wright-eval: grid spec and malformed input") {
    const auto r = run_cli("wright-eval --delta 1.3 --grid -2:-1:3,0:1:2");
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.output).size() == 2 + 6);

    CHECK(run_cli("wright-eval --delta 1.3 --grid nonsense").exit_code == 2);
    CHECK(run_cli("wright-eval --delta 1.3").exit_code == 2);
    CHECK(run_cli("wright-eval --delta 1.3 --z bogus").exit_code == 2);
    CHECK(run_cli("nonexistent-command").exit_code == 2);
}

TEST_CASE("star-sum: geometric file reproduces the continuation table") {
    const auto r = run_cli("star-sum " + kData + "/geometric_series.json" +
                           " --t -3 --deltas 1.2,1.1,1.05 --reference 0.25");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 6);
    CHECK(rows.back() == "# verdict monotone_decreasing=true");
    // error column decreases
    const double e0 = std::stod(split_csv(rows[2])[3]);
    const double e2 = std::stod(split_csv(rows[4])[3]);
    CHECK(e0 > e2);
    CHECK(e2 < 0.01);
}

TEST_CASE("star-sum: exit 3 outside the star") {
    const auto r = run_cli("star-sum " + kData + "/geometric_series.json" +
                           " --t 2 --deltas 1.2,1.1 --reference -1");
    CHECK(r.exit_code == 3);
}

TEST_CASE("star-sum: log series against the natural-log oracle") {
    // reference -log(1 - t) at t = -5
    const auto r = run_cli("star-sum " + kData + "/log_series.json" +
                           " --t -5 --deltas 1.2,1.1,1.05 --reference=-1.791759469228055");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.output);
    CHECK(rows.back() == "# verdict monotone_decreasing=true");
}

TEST_CASE("star-sum: bad delta schedules are input errors") {
    const std::string base = "star-sum " + kData + "/geometric_series.json --t -3 ";
    CHECK(run_cli(base + "--deltas 1.1,1.2").exit_code == 2);
    CHECK(run_cli(base + "--deltas 2.5,1.2").exit_code == 2);
    CHECK(run_cli("star-sum /nonexistent.json --t -3 --deltas 1.2,1.1").exit_code == 2);
}

TEST_CASE("evolve: nilpotent, cosh, and continuation cases") {
    const auto nil = run_cli("evolve " + kData + "/nilpotent_problem.json --t 3 --mode classical");
    CHECK(nil.exit_code == 0);
    const auto ncells = split_csv(lines_of(nil.output)[2]);
    CHECK(std::stod(ncells[2]) == 3.0);
    CHECK(std::stod(ncells[4]) == 1.0);

    const auto ch = run_cli("evolve " + kData + "/scalar_exp_problem.json --t 4 --mode rescaled --delta 2");
    CHECK(ch.exit_code == 0);
    CHECK(std::abs(std::stod(split_csv(lines_of(ch.output)[2])[2]) - 3.7621956911) < 1e-9);

    const auto geo = run_cli("evolve " + kData + "/geometric_problem.json --t -3 --mode rescaled --delta 1.05");
    CHECK(geo.exit_code == 0);
    CHECK(std::abs(std::stod(split_csv(lines_of(geo.output)[2])[2]) - 0.25) < 0.01);

    CHECK(run_cli("evolve " + kData + "/nilpotent_problem.json --t 3 --mode bogus").exit_code == 2);
    CHECK(run_cli("evolve " + kData + "/nilpotent_problem.json --t 0,1 --mode fractional").exit_code == 2);
}

TEST_CASE("evolve: non-convergence is data, not an error") {
    // classical geometric series outside its disk
    const auto r = run_cli("evolve " + kData + "/geometric_problem.json --t 1.5 --mode classical");
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.output)[2].find("false") != std::string::npos);
}

TEST_CASE("kernel-check: pass, fail, and cut rejection") {
    const auto ok = run_cli("kernel-check --z -1 --z -4 --z 0,2 --z -1,1 --z -0.01");
    CHECK(ok.exit_code == 0);
    const auto rows = lines_of(ok.output);
    CHECK(rows.back() == "# verdict within_tolerance=true");
    for (std::size_t i = 2; i + 1 < rows.size(); ++i) {
        CHECK(std::stod(split_csv(rows[i])[6]) <= 1e-8);
    }

    const auto cut = run_cli("kernel-check --z 0.5");
    CHECK(cut.exit_code == 4);
    CHECK(lines_of(cut.output)[2].find("BranchError") != std::string::npos);
}

TEST_CASE("output determinism: identical invocations produce identical bytes") {
    const std::string cmd = "star-sum " + kData + "/geometric_series.json" +
                            " --t -3 --deltas 1.2,1.1,1.05 --reference 0.25";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    CHECK(a.output == b.output);

    const std::string grid = "wright-eval --delta 1.4 --grid -3:-1:4,-1:1:3";
    CHECK(run_cli(grid).output == run_cli(grid).output);
}

TEST_CASE("json format mirrors the csv schema") {
    const auto r = run_cli("star-sum " + kData + "/geometric_series.json" +
                           " --t -3 --deltas 1.2,1.1 --reference 0.25 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"columns\"") != std::string::npos);
    CHECK(r.output.find("\"delta\"") != std::string::npos);
    CHECK(r.output.find("\"monotone_decreasing\": true") != std::string::npos);
    CHECK(r.output.find("\"modules\"") != std::string::npos);
}

TEST_CASE("config file overrides defaults") {
    const fs::path cfg = fs::temp_directory_path() / "fracstar_cfg.json";
    {
        std::ofstream f(cfg);
        f << "{\"tol\": 1e-6, \"quad_tol\": 1e-6}\n";
    }
    const auto r = run_cli("--config " + cfg.string() +
                           " wright-eval --delta 1.5 --z -1");
    fs::remove(cfg);
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.output)[0].find("tol=1e-06") != std::string::npos);
}
