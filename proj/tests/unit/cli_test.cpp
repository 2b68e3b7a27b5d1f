#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli/commands.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/io.hpp"

namespace hyperforge {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.status = cli::run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("hyperforge_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

class BudgetEnv {
 public:
  explicit BudgetEnv(const char* value) { ::setenv("HYPERFORGE_BUDGET", value, 1); }
  ~BudgetEnv() { ::unsetenv("HYPERFORGE_BUDGET"); }
};

std::string error_of(const CliRun& r) { return json::parse(r.err).at("error").get<std::string>(); }

TEST(Cli, SpacesList) {
  const CliRun r = run({"spaces", "list"});
  EXPECT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_GE(j.at("spaces").size(), 7u);
}

TEST(Cli, OutputIsDeterministic) {
  const CliRun a = run({"criteria", "hc", "--space", "l_p:1", "--weight", "const:2", "--count", "5"});
  const CliRun b = run({"criteria", "hc", "--space", "l_p:1", "--weight", "const:2", "--count", "5"});
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run({"build", "cauchy", "--rounds", "4"});
  const CliRun d = run({"build", "cauchy", "--rounds", "4"});
  EXPECT_EQ(c.status, 0);
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, BuildThenVerify) {
  TempDir dir;
  const std::string bundle = dir.file("bundle.json");
  const CliRun build = run({"build", "algebrable-coord", "--K", "3", "--rounds", "8", "--out", bundle});
  ASSERT_EQ(build.status, 0) << build.err;
  const json summary = json::parse(build.out);
  EXPECT_TRUE(summary.at("certified").get<bool>());
  EXPECT_EQ(summary.at("bundle_id"), bundle_id(coord_bundle_from_json(read_json_file(bundle))));

  const CliRun power = run({"verify", "power", "--bundle", bundle, "--j", "1"});
  EXPECT_EQ(power.status, 0) << power.err;
  EXPECT_TRUE(json::parse(power.out).at("revalidation").at("pass").get<bool>());

  const CliRun zp = run({"verify", "zero-products", "--bundle", bundle});
  EXPECT_EQ(zp.status, 0);

  const std::string csv = dir.file("power.csv");
  const CliRun elem = run({"verify", "element", "--bundle", bundle, "--element", "x1^2 + 0.3*x1^3", "--csv", csv});
  EXPECT_EQ(elem.status, 0) << elem.err;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "round,distance,bound,ratio");
}

TEST(Cli, CauchyExpansion) {
  TempDir dir;
  const std::string bundle = dir.file("cauchy.json");
  ASSERT_EQ(run({"build", "algebrable-cauchy", "--K", "2", "--rounds", "4", "--out", bundle}).status, 0);
  const CliRun r = run({"verify", "expansion", "--bundle", bundle, "--element", "x1*x2 + x1"});
  EXPECT_EQ(r.status, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.contains("generation"));
}

TEST(Cli, EditedBundleFailsVerification) {
  TempDir dir;
  const std::string bundle = dir.file("bundle.json");
  ASSERT_EQ(run({"build", "coord", "--rounds", "6", "--out", bundle}).status, 0);
  CoordBundle b = coord_bundle_from_json(read_json_file(bundle));
  b.rounds[3].block = b.rounds[3].block.scaled(2.0);
  write_text_file(bundle, to_json(b).dump());
  const CliRun r = run({"verify", "power", "--bundle", bundle});
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(json::parse(r.out).at("revalidation").at("pass").get<bool>());
}

TEST(Cli, ErrorsHaveDistinctCodes) {
  TempDir dir;
  const CliRun usage = run({"frobnicate"});
  EXPECT_EQ(usage.status, cli::kUsageExit);

  const CliRun parse = run({"verify", "element", "--bundle", dir.file("none.json"), "--element", "x1"});
  EXPECT_EQ(parse.status, exit_status(ErrorCode::io_error));
  EXPECT_EQ(error_of(parse), "io_error");

  const std::string bundle = dir.file("cauchy.json");
  ASSERT_EQ(run({"build", "cauchy", "--rounds", "3", "--out", bundle}).status, 0);
  const CliRun space = run({"verify", "zero-products", "--bundle", bundle});
  EXPECT_EQ(space.status, exit_status(ErrorCode::inconsistent_space));

  const CliRun element = run({"verify", "element", "--bundle", bundle, "--element", "1 + x1"});
  EXPECT_EQ(element.status, exit_status(ErrorCode::parse_error));
  EXPECT_NE(json::parse(element.err).at("message").get<std::string>().find("column 1"), std::string::npos);

  const CliRun witness = run({"criteria", "prop-b", "--space", "omega_cauchy"});
  EXPECT_EQ(witness.status, exit_status(ErrorCode::no_witness));

  const CliRun exhausted = run({"criteria", "hc", "--space", "l_p:1", "--weight", "const:0.5", "--budget", "200"});
  EXPECT_EQ(exhausted.status, exit_status(ErrorCode::search_exhausted));

  const CliRun mismatch = run({"build", "cauchy", "--space", "c0"});
  EXPECT_EQ(mismatch.status, exit_status(ErrorCode::inconsistent_space));

  std::ofstream(dir.file("junk.json")) << "{not json";
  const CliRun junk = run({"verify", "power", "--bundle", dir.file("junk.json")});
  EXPECT_EQ(junk.status, exit_status(ErrorCode::parse_error));
}

TEST(Cli, BudgetEnvironmentCapsSearches) {
  const std::vector<std::string> args{"criteria", "hc", "--space", "entire_hadamard", "--weight", "maclane",
                                      "--count", "12"};
  EXPECT_EQ(run(args).status, 0);
  BudgetEnv env("3");
  const CliRun capped = run(args);
  EXPECT_EQ(capped.status, exit_status(ErrorCode::search_exhausted));
  EXPECT_EQ(error_of(capped), "search_exhausted");
}

}  // namespace
}  // namespace hyperforge
