// End-to-end checks of the command-line interface: spawns the built binary
// and inspects exit codes and the exported CSV/JSON.

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fredholm/special_functions.hpp"

namespace fs = std::filesystem;

namespace {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

int run_cli(const std::string& args, const fs::path& stdout_path) {
    const std::string cmd =
        std::string(FREDHOLM_CLI_PATH) + " " + args + " > " + stdout_path.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

Csv read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Csv csv;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file");
    std::istringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) csv.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("fredholm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path file(const std::string& name) const { return dir_ / name; }
    fs::path dir_;
};

TEST_F(CliTest, SolveExportsSolutionCsv) {
    const auto out = file("sol.csv");
    const int rc = run_cli("solve --hurst 0.75 --n 50 --t-max 1 --f quadratic_t2 --out " +
                               out.string(),
                           file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(out);
    ASSERT_EQ(csv.header, (std::vector<std::string>{"t", "x", "f_minus_x"}));
    ASSERT_EQ(csv.rows.size(), 50u);
    EXPECT_EQ(csv.rows.front()[0], 0.0);
    EXPECT_EQ(csv.rows.back()[0], 1.0);
    for (const auto& row : csv.rows) {
        const double t = row[0];
        EXPECT_NEAR(row[1] + row[2], t * t, 1e-12);  // x + (f - x) = f
    }
}

TEST_F(CliTest, TableMatchesStudyLayout) {
    const auto out = file("table.csv");
    const int rc =
        run_cli("table --hurst 0.51,0.6 --n 25,50 --out " + out.string(), file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(out);
    ASSERT_EQ(csv.header, (std::vector<std::string>{"N", "H", "max_err", "l2_err"}));
    ASSERT_EQ(csv.rows.size(), 4u);
    EXPECT_EQ(csv.rows[0][0], 25.0);
    EXPECT_EQ(csv.rows[0][1], 0.51);
    EXPECT_EQ(csv.rows[1][1], 0.6);
    EXPECT_EQ(csv.rows[2][0], 50.0);
    for (const auto& row : csv.rows) {
        EXPECT_GT(row[2], 0.0);
        EXPECT_GT(row[3], 0.0);
        EXPECT_LE(row[3], row[2]);
    }
}

TEST_F(CliTest, SurfaceSamplesNumerator) {
    const auto out = file("L.csv");
    const int rc =
        run_cli("surface --hurst 0.25 --resolution 20 --out " + out.string(), file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(out);
    ASSERT_EQ(csv.header, (std::vector<std::string>{"t", "v", "L"}));
    ASSERT_EQ(csv.rows.size(), 400u);
    // corner values are regularized to zero; interior diagonal carries the
    // full beta value
    EXPECT_EQ(csv.rows.front()[2], 0.0);
    EXPECT_EQ(csv.rows.back()[2], 0.0);
    bool found_diag = false;
    for (const auto& row : csv.rows)
        if (row[0] == row[1] && row[0] > 0.0 && row[0] < 1.0) {
            EXPECT_NEAR(row[2], fredholm::beta(0.25, 0.5), 1e-12);
            found_diag = true;
        }
    EXPECT_TRUE(found_diag);
}

TEST_F(CliTest, ConvergenceEmitsRates) {
    const auto out = file("rates.csv");
    const int rc = run_cli("convergence --hurst 0.6 --n 25,50,100 --out " + out.string(),
                           file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(out);
    ASSERT_EQ(csv.header, (std::vector<std::string>{"H", "rate"}));
    ASSERT_EQ(csv.rows.size(), 1u);
    EXPECT_GT(csv.rows[0][1], 1.5);
    EXPECT_LT(csv.rows[0][1], 2.5);
}

TEST_F(CliTest, RegstudyEmitsDistances) {
    const auto out = file("reg.csv");
    const int rc = run_cli("regstudy --hurst 0.25 --n 100 --radius 0.02,0.01 --out " +
                               out.string(),
                           file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(out);
    ASSERT_EQ(csv.header, (std::vector<std::string>{"radius", "l2_distance_to_prev"}));
    ASSERT_EQ(csv.rows.size(), 2u);
    EXPECT_TRUE(std::isnan(csv.rows[0][1]));
    EXPECT_GT(csv.rows[1][1], 0.0);
}

TEST_F(CliTest, ObjectiveHalvesIntoEntropy) {
    const auto out = file("obj.csv");
    const int rc = run_cli("objective --hurst 0.25 --n 100 --f linear_t --out " + out.string(),
                           file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(out);
    ASSERT_EQ(csv.header, (std::vector<std::string>{"H", "N", "objective", "entropy"}));
    ASSERT_EQ(csv.rows.size(), 1u);
    EXPECT_DOUBLE_EQ(csv.rows[0][3], 0.5 * csv.rows[0][2]);
    EXPECT_GT(csv.rows[0][2], 0.0);
}

TEST_F(CliTest, JsonDocumentMirrorsCsvFields) {
    const auto out = file("sol.json");
    const int rc = run_cli("solve --hurst 0.6 --n 10 --f linear_t --json --out " + out.string(),
                           file("log.txt"));
    ASSERT_EQ(rc, 0);
    std::ifstream in(out);
    const nlohmann::json doc = nlohmann::json::parse(in);
    EXPECT_EQ(doc["subcommand"], "solve");
    ASSERT_EQ(doc["rows"].size(), 10u);
    EXPECT_TRUE(doc["rows"][0].contains("t"));
    EXPECT_TRUE(doc["rows"][0].contains("x"));
    EXPECT_TRUE(doc["rows"][0].contains("f_minus_x"));
}

TEST_F(CliTest, ManufacturedModeRecoversExactSolution) {
    // with --tol, --f is the exact solution; product integration is exact on
    // linear solutions so only the rhs tolerance remains
    const auto out = file("man.csv");
    const int rc = run_cli(
        "solve --hurst 0.75 --n 50 --f linear_t --tol 1e-9 --out " + out.string(),
        file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(out);
    for (const auto& row : csv.rows) EXPECT_NEAR(row[1], row[0], 1e-6);
}

TEST_F(CliTest, TabulatedRhsFromFile) {
    const auto table = file("f.csv");
    {
        std::ofstream f(table);
        f << "t,value\n0,1\n0.5,2\n1,0.5\n";
    }
    const auto out = file("sol.csv");
    const int rc = run_cli(
        "solve --hurst 0.25 --n 30 --f-file " + table.string() + " --out " + out.string(),
        file("log.txt"));
    ASSERT_EQ(rc, 0);
    EXPECT_EQ(read_csv(out).rows.size(), 30u);
}

TEST_F(CliTest, DumpMatrixWritesAllEntries) {
    const auto out = file("sol.csv");
    const auto dump = file("K.csv");
    const int rc = run_cli("solve --hurst 0.75 --n 8 --f linear_t --out " + out.string() +
                               " --dump-matrix " + dump.string(),
                           file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv csv = read_csv(dump);
    ASSERT_EQ(csv.header, (std::vector<std::string>{"j", "i", "value"}));
    EXPECT_EQ(csv.rows.size(), 64u);
}

TEST_F(CliTest, RegstudyDumpsPerRadiusSolutions) {
    const auto out = file("reg.csv");
    const int rc = run_cli("regstudy --hurst 0.25 --n 50 --radius 0.04,0.02 --out " +
                               out.string() + " --dump-solutions " + dir_.string(),
                           file("log.txt"));
    ASSERT_EQ(rc, 0);
    const Csv sol = read_csv(file("sol_0.02.csv"));
    ASSERT_EQ(sol.header, (std::vector<std::string>{"t", "x"}));
    EXPECT_EQ(sol.rows.size(), 50u);
}

TEST_F(CliTest, UsageErrorsExitOne) {
    EXPECT_EQ(run_cli("solve --hurst 0.75 --n 50 --f quadratic_t2 --bogus-flag 1",
                      file("log.txt")),
              1);
    EXPECT_EQ(run_cli("solve --hurst 0.5 --n 50 --f linear_t", file("log.txt")), 1);
    EXPECT_EQ(run_cli("solve --hurst 0.75 --n 50", file("log.txt")), 1);  // no rhs given
    EXPECT_EQ(run_cli("solve --hurst 0.75 --n 50 --f linear_t --f-file nope.csv",
                      file("log.txt")),
              1);
    EXPECT_EQ(run_cli("nonsense", file("log.txt")), 1);
    EXPECT_EQ(run_cli("table --hurst 0.25 --n 25,50", file("log.txt")), 1);  // H < 1/2
}

TEST_F(CliTest, HelpExitsZero) {
    EXPECT_EQ(run_cli("--help", file("log.txt")), 0);
    EXPECT_EQ(run_cli("solve --help", file("log.txt")), 0);
}

} // namespace
