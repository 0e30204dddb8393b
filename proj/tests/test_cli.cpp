#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "k3iso/cli.hpp"
#include "k3iso/serialize.hpp"

namespace k3iso {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const std::vector<std::string> kWorkedArgs = {"--a", "1", "--b", "1", "--c", "2",
                                              "--d", "17", "--mu", "1"};

std::vector<std::string> with(std::string cmd, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{std::move(cmd)};
  args.insert(args.end(), kWorkedArgs.begin(), kWorkedArgs.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

TEST(Cli, Validate) {
  EXPECT_EQ(run(with("validate")).code, cli::kOk);
  const Outcome bad = run({"validate", "--a", "1", "--b", "1", "--c", "2", "--d", "13", "--mu", "1"});
  EXPECT_EQ(bad.code, cli::kInvalid);
  EXPECT_NE(bad.out.find("invalid"), std::string::npos);
  EXPECT_EQ(run({"validate", "--r", "2", "--s", "2", "--d", "17", "--mu", "1"}).code, cli::kOk);
}

TEST(Cli, CertifyAndVerify) {
  const std::string path = temp_path("worked.json");
  const Outcome c = run(with("certify", {"--out", path}));
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  EXPECT_NE(c.out.find("decided"), std::string::npos);
  EXPECT_EQ(run({"verify", "--cert", path}).code, cli::kOk);

  // --json prints exactly the bytes written by --out.
  const Outcome j = run(with("certify", {"--json"}));
  EXPECT_EQ(j.out, slurp(path));

  Json cert = Json::parse(slurp(path));
  cert["chain"][4]["s"] = 2;
  const std::string tampered = temp_path("tampered.json");
  std::ofstream(tampered) << dump(cert);
  const Outcome v = run({"verify", "--cert", tampered});
  EXPECT_EQ(v.code, cli::kFalse);
  EXPECT_NE(v.out.find("tyurin target mismatch"), std::string::npos);

  const std::string garbage = temp_path("garbage.json");
  std::ofstream(garbage) << "not json";
  EXPECT_EQ(run({"verify", "--cert", garbage}).code, cli::kInvalid);
  EXPECT_EQ(run({"verify", "--cert", temp_path("missing.json")}).code, cli::kInvalid);
}

TEST(Cli, Decide) {
  const Outcome d = run(with("decide", {"--bound", "100"}));
  EXPECT_EQ(d.code, cli::kOk);
  EXPECT_NE(d.out.find("branch A+: "), std::string::npos);
  const Outcome j = run(with("decide", {"--json"}));
  EXPECT_TRUE(Json::parse(j.out)["decided"].get<bool>());
}

TEST(Cli, Inconclusive) {
  const Outcome o =
      run({"decide", "--a", "1", "--b", "1", "--c", "1", "--d", "13", "--mu", "1", "--bound", "1"});
  EXPECT_EQ(o.code, cli::kInconclusive);
  EXPECT_NE(o.out.find("inconclusive"), std::string::npos);
}

TEST(Cli, BoundFromEnvironment) {
  const std::vector<std::string> args = {"decide", "--a", "1", "--b", "1", "--c", "1",
                                         "--d", "13", "--mu", "1"};
  ::setenv(cli::kBoundEnv, "1", 1);
  EXPECT_EQ(run(args).code, cli::kInconclusive);
  std::vector<std::string> explicit_bound = args;
  explicit_bound.insert(explicit_bound.end(), {"--bound", "10"});
  EXPECT_EQ(run(explicit_bound).code, cli::kOk);
  ::setenv(cli::kBoundEnv, "junk", 1);
  EXPECT_EQ(run(args).code, cli::kInvalid);
  ::unsetenv(cli::kBoundEnv);
  EXPECT_EQ(run(args).code, cli::kOk);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kInvalid);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInvalid);
  EXPECT_EQ(run({"certify", "--a", "1"}).code, cli::kInvalid);
  EXPECT_EQ(run(with("certify", {"--series", "c"})).code, cli::kInvalid);
  EXPECT_EQ(run(with("certify", {"--bound", "0"})).code, cli::kInvalid);
  EXPECT_EQ(run(with("certify", {"--r", "2", "--s", "2"})).code, cli::kInvalid);
  EXPECT_EQ(run({"certify", "--a", "2", "--b", "2", "--c", "1", "--d", "17", "--mu", "1"}).code,
            cli::kInvalid);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(Cli, VerifyPeriods) {
  const Outcome one = run({"verify-periods", "--a", "1", "--b", "1", "--c", "2", "--d1", "3"});
  EXPECT_EQ(one.code, cli::kOk) << one.err;
  EXPECT_NE(one.out.find("h^2 = 2"), std::string::npos);
  EXPECT_EQ(run({"verify-periods", "--a", "1", "--b", "2", "--c", "1", "--d1", "2"}).code,
            cli::kInvalid);
  const std::string path = temp_path("periods.json");
  const Outcome sweep = run({"verify-periods", "--sweep", "--max-abc", "2", "--max-d", "2",
                             "--out", path});
  EXPECT_EQ(sweep.code, cli::kOk);
  EXPECT_EQ(Json::parse(slurp(path))["succeeded"], Json::parse(slurp(path))["instances"]);
}

TEST(Cli, SweepEquivalence) {
  const Outcome o = run({"sweep-equivalence", "--d-max", "20", "--bound", "60", "--json"});
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_EQ(Json::parse(o.out)["verdict"], "no counterexample");
}

}  // namespace
}  // namespace k3iso
