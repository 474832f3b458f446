#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "r2r/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = r2r::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("r2r_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

double summary_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string k;
  double v;
  while (in >> k) {
    if (k == key && in >> v) return v;
  }
  return NAN;
}

}  // namespace

TEST_F(Cli, ChainPoissonAutoTruncation) {
  const auto r = run({"chain", "--dist", "poisson", "--lambda", "1", "--out", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tau_p 4\n"), std::string::npos);
  EXPECT_NEAR(summary_value(r.out, "e_tau"), 0.8128, 5e-5);
  const auto j = nlohmann::json::parse(r2r::read_file(path("c.json")));
  EXPECT_EQ(j["tau_p"], 4);
  EXPECT_EQ(j["dist"]["source"], "poisson");
}

TEST_F(Cli, ChainDocumentOnStdoutWithoutOut) {
  const auto r = run({"chain", "--sampling", "2"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["e_tau"].get<double>(), 1.0);
  EXPECT_NE(r.err.find("e_tau 1\n"), std::string::npos);
}

TEST_F(Cli, MixedProductChain) {
  const auto r = run({"chain", "--dist", "poisson", "--lambda", "1", "--pnm", "0.3", "--q", "0.7", "--taup", "4",
                      "--out", path("m.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(summary_value(r.out, "e_tau"), 1.185, 5e-4);
  const auto m = run({"mixed", "--dist", "poisson", "--lambda", "1", "--q", "0.5", "--taup", "6", "--out", path("x.json")});
  ASSERT_EQ(m.code, 0) << m.err;
  const auto j = nlohmann::json::parse(r2r::read_file(path("x.json")));
  EXPECT_EQ(j["mix"]["q"], 0.5);
  EXPECT_TRUE(j.contains("product_etas"));
}

TEST_F(Cli, StabilityExitCodes) {
  auto r = run({"stability", "--fixed-delay", "0", "--xi", "1", "--omega", "0.5"});
  EXPECT_EQ(r.code, r2r::cli::kExitStable);
  EXPECT_EQ(r.out.substr(0, 7), "stable ");
  r = run({"stability", "--fixed-delay", "9", "--xi", "2.6", "--omega", "0.34"});
  EXPECT_EQ(r.code, r2r::cli::kExitUnstable);
  r = run({"stability", "--fixed-delay", "0", "--xi", "2", "--omega", "1"});
  EXPECT_EQ(r.code, r2r::cli::kExitMarginal);
  r = run({"stability", "--fixed-delay", "10", "--xi", "2.6", "--omega", "0.14", "--method", "routh"});
  EXPECT_EQ(r.code, r2r::cli::kExitStable);
  EXPECT_NE(r.out.find(" routh\n"), std::string::npos);
  r = run({"stability", "--fixed-delay", "0", "--beta", "3", "--b", "2", "--omega", "0.5"});
  EXPECT_EQ(r.code, r2r::cli::kExitStable);
}

TEST_F(Cli, StabilityCertificateFile) {
  const auto r = run({"stability", "--dist", "poisson", "--lambda", "1", "--pnm", "0.3", "--controller", "ewma2",
                      "--xi", "1", "--omega", "0.4", "--method", "certificate", "--cert", path("q.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("certificate"), std::string::npos);
  const auto j = nlohmann::json::parse(r2r::read_file(path("q.json")));
  EXPECT_LT(j["residual"].get<double>(), 0.0);
  EXPECT_FALSE(j["Q"].empty());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, r2r::cli::kExitUsage);
  EXPECT_EQ(run({"chain", "--dist", "explicit", "--etas-file", path("missing.txt")}).code, r2r::cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--fixed-delay", "0", "--xi-range", "0.02:oops:0.02"}).code, r2r::cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--fixed-delay", "0", "--xi-range", "0:4:0.1"}).code, r2r::cli::kExitUsage);
  EXPECT_EQ(run({"stability", "--fixed-delay", "0", "--xi", "1"}).code, r2r::cli::kExitUsage);
  EXPECT_EQ(run({"stability", "--fixed-delay", "0", "--sampling", "2", "--xi", "1", "--omega", "0.5"}).code,
            r2r::cli::kExitUsage);
  EXPECT_EQ(run({"chain", "--dist", "poisson", "--lambda", "1", "--pnm", "1.5"}).code, r2r::cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, ExplicitEtasFile) {
  r2r::write_file(path("etas.txt"), "0.5 0.3 0.2\n");
  const auto r = run({"chain", "--dist", "explicit", "--etas-file", path("etas.txt"), "--taup", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  r2r::write_file(path("bad.txt"), "0.5 0.6\n");
  EXPECT_EQ(run({"chain", "--dist", "explicit", "--etas-file", path("bad.txt"), "--taup", "3"}).code,
            r2r::cli::kExitUsage);
}

TEST_F(Cli, ConfigInjection) {
  r2r::write_file(path("cfg.json"),
                  R"({"command": "stability", "fixed-delay": 9, "xi": 2.6, "omega": 0.34})");
  EXPECT_EQ(run({"--config", path("cfg.json")}).code, r2r::cli::kExitUnstable);
  // command-line values take precedence over the file
  EXPECT_EQ(run({"stability", "--config", path("cfg.json"), "--omega", "0.05"}).code, r2r::cli::kExitStable);
  r2r::write_file(path("broken.json"), "{not json");
  EXPECT_EQ(run({"--config", path("broken.json")}).code, r2r::cli::kExitUsage);
}

TEST_F(Cli, SweepSamplingEqualsDelayFree) {
  const std::vector<std::string> grid{"--xi-range", "0.1:4:0.1", "--omega-range", "0.05:1:0.05"};
  auto a = std::vector<std::string>{"sweep", "--fixed-delay", "0", "--out", path("f0.csv")};
  auto b = std::vector<std::string>{"sweep", "--sampling", "1", "--controller", "ewma2", "--out", path("s1.csv")};
  a.insert(a.end(), grid.begin(), grid.end());
  b.insert(b.end(), grid.begin(), grid.end());
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(r2r::read_file(path("f0.csv")), r2r::read_file(path("s1.csv")));
}

TEST_F(Cli, SweepCompare) {
  const std::vector<std::string> grid{"--xi-range", "0.1:4:0.1", "--omega-range", "0.05:1:0.05"};
  auto f1 = std::vector<std::string>{"sweep", "--fixed-delay", "1", "--out", path("f1.csv")};
  f1.insert(f1.end(), grid.begin(), grid.end());
  ASSERT_EQ(run(f1).code, 0);
  auto f3 = std::vector<std::string>{"sweep", "--fixed-delay", "3", "--serial", "--out", path("f3.csv"), "--compare",
                                     path("f1.csv")};
  f3.insert(f3.end(), grid.begin(), grid.end());
  auto r = run(f3);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("subset: true"), std::string::npos);
  auto back = std::vector<std::string>{"sweep", "--fixed-delay", "1", "--out", path("g1.csv"), "--compare",
                                       path("f3.csv")};
  back.insert(back.end(), grid.begin(), grid.end());
  r = run(back);
  EXPECT_NE(r.out.find("subset: false"), std::string::npos);
}

TEST_F(Cli, SimulateTrajectory) {
  auto r = run({"simulate", "traj", "--fixed-delay", "0", "--xi", "1", "--omega", "1", "--steps", "10", "--out",
                path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "converged\n");
  const std::string csv = r2r::read_file(path("t.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,tau,x0,norm,y,u");
  r = run({"simulate", "traj", "--fixed-delay", "0", "--xi", "2.6", "--omega", "0.78", "--steps", "1000"});
  EXPECT_NE(r.err.find("diverged"), std::string::npos);
  EXPECT_EQ(run({"simulate", "traj", "--fixed-delay", "1", "--xi", "1", "--omega", "0.5", "--x0", "1"}).code,
            r2r::cli::kExitUsage);
}

TEST_F(Cli, SimulateIsDeterministic) {
  const std::vector<std::string> args{"simulate", "chain", "--dist", "poisson", "--lambda", "1", "--pnm", "0.3",
                                      "--runs", "20000", "--seed", "5", "--taup", "2"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", path("a.json")});
  b.insert(b.end(), {"--out", path("b.json")});
  const auto ra = run(a);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(r2r::read_file(path("a.json")), r2r::read_file(path("b.json")));
  EXPECT_LT(summary_value(ra.out, "max_abs_diff"), 0.05);
  EXPECT_EQ(run({"simulate", "chain", "--dist", "poisson", "--lambda", "1", "--runs", "10"}).code,
            r2r::cli::kExitUsage);
}

TEST_F(Cli, ChainFileRoundTrip) {
  ASSERT_EQ(run({"chain", "--dist", "poisson", "--lambda", "1", "--pnm", "0.3", "--out", path("c.json")}).code, 0);
  const auto r = run({"stationary", "--chain", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto direct = run({"stationary", "--dist", "poisson", "--lambda", "1", "--pnm", "0.3"});
  EXPECT_NEAR(summary_value(r.err, "e_tau"), summary_value(direct.err, "e_tau"), 1e-12);
  EXPECT_EQ(run({"stability", "--chain", path("c.json"), "--xi", "1", "--omega", "0.3"}).code, 0);
}
