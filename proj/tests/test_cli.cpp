#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef ENTANGLIA_CLI
#error "ENTANGLIA_CLI must name the command-line binary"
#endif

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + ENTANGLIA_CLI + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "entanglia_cli_" + name; }

}  // namespace

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("ghz-noise --d 1").status, 1);
  EXPECT_EQ(run("ghz-noise --p 0:1").status, 1);
  EXPECT_EQ(run("verify-channel bogus").status, 1);
  EXPECT_EQ(run("analyze --state /nonexistent.json").status, 1);
  EXPECT_EQ(run("dephase --find-crossing ppt --t 0:3:1 --gamma1 0:1:0.5").status, 1);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, GhzNoiseTable) {
  const auto r = run("ghz-noise --d 2 --n 3 --p 0:1:0.01");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 102u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "ge_certified", "ppt_lambda_min",
                                                "projection_witness", "realign_excess"}));
  // Witness sign flips at p = 0.2.
  EXPECT_GT(std::stod(rows[20][3]), 0.0);
  EXPECT_LT(std::abs(std::stod(rows[21][3])), 1e-10);
  EXPECT_LT(std::stod(rows[22][3]), 0.0);
  // ge threshold 3/7.
  EXPECT_EQ(rows[43][1], "0");
  EXPECT_EQ(rows[44][1], "1");

  const auto single = csv_rows(run("ghz-noise --d 2 --n 3 --p 1:1:1").out);
  ASSERT_EQ(single.size(), 2u);
  EXPECT_EQ(single[1][1], "1");
  EXPECT_NEAR(std::stod(single[1][3]), -0.5, 1e-12);

  const auto qutrit = csv_rows(run("ghz-noise --d 3 --n 2 --p 0.24:0.26:0.01").out);
  EXPECT_GT(std::stod(qutrit[1][3]), 0.0);
  EXPECT_LT(std::abs(std::stod(qutrit[2][3])), 1e-10);
  EXPECT_LT(std::stod(qutrit[3][3]), 0.0);
}

TEST(Cli, DurTable) {
  const auto r = run("dur --N 4 --x 0:1:0.05");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 22u);
  EXPECT_EQ(rows[0].size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    const double ppt = std::stod(rows[i][1]);
    if (x <= 0.2 + 1e-12) {
      EXPECT_GE(ppt, -1e-12) << x;
    } else {
      EXPECT_LT(ppt, 0.0) << x;
    }
    EXPECT_EQ(rows[i][6], x <= 0.5 ? "1" : "0");
  }
  // x = 0.5: the (1 - 2x)/2N eigenvalue is zero.
  EXPECT_LT(std::abs(std::stod(rows[11][2])), 1e-12);
}

TEST(Cli, DephaseSliceAndCrossing) {
  const auto r = run("dephase --gamma1 0:0:1 --t 0:3:0.5 --alpha 0.5:1:0.5 --threads 2");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "gamma1", "ppt_lambda_min", "realign_excess",
                                                "map_lambda_min", "map_argmin_alpha"}));
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_EQ(rows[i][2], rows[1][2]);

  const auto c = run("dephase --find-crossing realign --gamma1 1.0 --t 0:3:1");
  ASSERT_EQ(c.status, 0);
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_NEAR(j["crossing"].get<double>(), 0.186, 0.02);
  EXPECT_EQ(j["metric"], "realign");

  const auto none = run("dephase --find-crossing ppt --gamma1 1.0 --t 0:0.5:0.5");
  EXPECT_EQ(none.status, 2);
  EXPECT_TRUE(nlohmann::json::parse(none.out)["crossing"].is_null());
}

TEST(Cli, DephaseIsThreadIndependent) {
  const std::string args = "dephase --gamma1 0:1:0.5 --t 0:2:1 --alpha 0.25:1:0.25";
  const auto a = run(args + " --threads 1"), b = run(args + " --threads 3");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto scalar = run(args + " --threads 1 --kernels scalar");
  ASSERT_EQ(scalar.status, 0);
  const auto ra = csv_rows(a.out), rs = csv_rows(scalar.out);
  ASSERT_EQ(ra.size(), rs.size());
  for (std::size_t i = 1; i < ra.size(); ++i) {
    for (std::size_t k = 2; k < 5; ++k) EXPECT_NEAR(std::stod(ra[i][k]), std::stod(rs[i][k]), 1e-10);
  }
}

TEST(Cli, MaskVerify) {
  auto r = run("mask-verify --d 2 --n 4 --p 0.5 --m 2");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["uniform"].get<bool>());
  EXPECT_TRUE(j["noisy"].get<bool>());

  j = nlohmann::json::parse(run("mask-verify --p 1.0").out);
  EXPECT_EQ(j["max_marginal_distance"].get<double>(), 0.0);
  j = nlohmann::json::parse(run("mask-verify --d 3 --n 3 --p 1.0 --m 1").out);
  EXPECT_LT(j["max_marginal_distance"].get<double>(), 1e-15);

  r = run("mask-verify --d 2 --n 3 --control product --m 1");
  EXPECT_EQ(r.status, 2);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["uniform"].get<bool>());

  r = run("mask-verify --channel dur-corrected --N 4 --x 0.3");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["m"], 3);
}

TEST(Cli, AnalyzeSavedStates) {
  const auto iso = temp_path("iso.json");
  ASSERT_EQ(run("make-state isotropic-ghz --d 2 --n 3 --p 0.5 -o " + iso).status, 0);
  auto r = run("analyze --state " + iso + " --cut '0|12'");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"][0]["criterion"], "ppt_min_eigenvalue");
  EXPECT_EQ(j["results"][0]["verdict"], "entangled");

  // A looser tolerance turns small values into threshold verdicts.
  r = run("analyze --state " + iso + " --cut '0|12'", "ENTANGLIA_TOL=1");
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"][0]["verdict"], "threshold");
  EXPECT_EQ(run("analyze --state " + iso, "ENTANGLIA_TOL=abc").status, 1);

  const auto mixed = temp_path("mixed.json");
  ASSERT_EQ(run("make-state maximally-mixed --d 3 --n 3 -o " + mixed).status, 0);
  j = nlohmann::json::parse(run("analyze --state " + mixed + " --alpha 0.5:1:0.5").out);
  for (const auto& res : j["results"]) EXPECT_NE(res["verdict"], "entangled") << res["criterion"];

  const auto r0 = temp_path("rho0.json");
  ASSERT_EQ(run("make-state rho0 -o " + r0).status, 0);
  j = nlohmann::json::parse(run("analyze --state " + r0 + " --alpha 1:1:1").out);
  int npt = 0;
  for (const auto& res : j["results"]) {
    if (res["criterion"] == "ppt_min_eigenvalue" && res["verdict"] == "entangled") ++npt;
    if (res["criterion"] == "realignment_excess") EXPECT_GT(res["value"].get<double>(), 0.0);
  }
  EXPECT_EQ(npt, 3);

  const auto bad = temp_path("bad.json");
  {
    std::FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs(R"({"dims": [2, 2], "matrix": [[[0.75,0],[0,0],[0,0],[0,0]],[[0,0],[0.5,0],[0,0],[0,0]],)"
               R"([[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[-0.25,0]]]})",
               f);
    std::fclose(f);
  }
  EXPECT_EQ(run("analyze --state " + bad).status, 2);
  for (const auto& p : {iso, mixed, r0, bad}) std::remove(p.c_str());
}

TEST(Cli, VerifyChannel) {
  auto r = run("verify-channel canonical-pauli --d 3 --n 2 --p 0.4");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["completeness_residual"].get<double>(), 1e-13);

  r = run("verify-channel dur-literal --N 4 --x 0.3");
  EXPECT_EQ(r.status, 2);
  j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["completeness_residual"].get<double>(), 1e-6);
  EXPECT_EQ(j["policy"], "verified_on_inputs");

  r = run("verify-channel example1 --p 0.5");
  ASSERT_EQ(r.status, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["claims"]["output_on_ghz_minus_isotropic_ghz"].get<double>(), 1e-12);

  r = run("verify-channel ghz-noise-literal --d 2 --n 2");
  j = nlohmann::json::parse(r.out);
  for (auto it = j["claims"].begin(); it != j["claims"].end(); ++it) {
    EXPECT_TRUE(it.value().is_number()) << it.key();
  }

  const auto file = temp_path("channel.json");
  ASSERT_EQ(run("make-channel dur-corrected --N 3 --x 0.4 -o " + file).status, 0);
  r = run("verify-channel --file " + file);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(run("verify-channel dur-corrected --file " + file).status, 1);
  std::remove(file.c_str());
}

TEST(Cli, MakeStateIsDeterministic) {
  const auto a = temp_path("a.json"), b = temp_path("b.json");
  ASSERT_EQ(run("make-state dur --N 3 --x 0.37 -o " + a).status, 0);
  const auto first = run("analyze --state " + a);
  ASSERT_EQ(first.status, 0);
  ASSERT_EQ(run("make-state dur --N 3 --x 0.37 -o " + b).status, 0);
  EXPECT_EQ(run("analyze --state " + b).out, first.out);
  std::remove(a.c_str());
  std::remove(b.c_str());
}
