#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "altseq/cli.hpp"
#include "altseq/report.hpp"

namespace altseq {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

TEST(Cli, ExactExamples) {
  const auto r = run({"exact", "--n", "4", "--all-k", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto row = json_of(r)["results"]["rows"][0];
  EXPECT_EQ(row["k"], 1);
  EXPECT_EQ(row["exact_mean"], "17/6");
  EXPECT_EQ(row["equal"], true);

  const auto two = json_of(run({"exact", "--n", "2", "--k", "1", "--format", "json"}));
  EXPECT_EQ(two["results"]["rows"][0]["exact_mean"], "3/2");

  const auto csv = run({"exact", "--n", "3", "--all-k", "--format", "csv"});
  EXPECT_EQ(csv.code, cli::kSuccess);
  EXPECT_EQ(csv.out.rfind("schema_version,n,k,exact_mean,armstrong_mean,equal,exact_variance", 0), 0u);

  const auto big = run({"exact", "--n", "13", "--k", "1"});
  EXPECT_EQ(big.code, cli::kCapacityError);
  EXPECT_FALSE(big.err.empty());
}

TEST(Cli, OracleExamples) {
  const auto r = json_of(run({"oracle", "--word", "3,1,4,5,2", "--k", "2", "--format", "json"}));
  EXPECT_EQ(r["results"]["greedy_length"], 3);
  EXPECT_EQ(r["results"]["witness_indices"], nlohmann::json({2, 4, 5}));
  EXPECT_EQ(r["results"]["agree"], true);

  const auto down = json_of(run({"oracle", "--word", "5,4,3,2,1", "--k", "1", "--format", "json"}));
  EXPECT_EQ(down["results"]["greedy_length"], 1);

  const auto dup = run({"oracle", "--word", "1,1,2", "--k", "1"});
  EXPECT_EQ(dup.code, cli::kUsageError);
  EXPECT_NE(dup.err.find("duplicate value 1"), std::string::npos);

  const auto junk = run({"oracle", "--word", "1,x7,2"});
  EXPECT_EQ(junk.code, cli::kUsageError);
  EXPECT_NE(junk.err.find("x7"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsageError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsageError);
  EXPECT_EQ(run({"mc", "--n", "10", "--x", "0.3", "--samples", "1000"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"mc", "--n", "10", "--samples", "1000", "--seed", "1"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"mc", "--n", "10", "--k", "2", "--x", "0.3", "--samples", "1000",
                 "--seed", "1"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"mc", "--n", "10", "--k", "2", "--samples", "1000", "--seed", "1",
                 "--method", "binomial"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"verify", "--suite", "nonsense"}).code, cli::kUsageError);
  EXPECT_EQ(run({"exact", "--n", "4", "--k", "1", "--format", "xml"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"verify", "--suite", "sandwich", "--n", "100", "--k", "5",
                 "--trials", "100", "--seed", "1"}).code,
            cli::kUsageError);
}

TEST(Cli, EntropyRecordsSeed) {
  const auto r = run({"mc", "--n", "10", "--x", "0.3", "--samples", "200", "--entropy",
                      "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_TRUE(json_of(r)["parameters"]["seed"].contains("master_seed"));
}

TEST(Cli, McReportRoundTrips) {
  const auto r = run({"mc", "--n", "50", "--x", "0.3", "--samples", "5000", "--seed", "9",
                      "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto j = json_of(r);
  const auto report = report_from_json(j);
  EXPECT_EQ(to_json(report), j);
  EXPECT_EQ(report.command, "mc");
}

TEST(Cli, VerifyReportRoundTripsAndPasses) {
  const auto r = run({"verify", "--suite", "stanley", "--n-max", "8", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(to_json(report_from_json(j)), j);
  EXPECT_EQ(j["passed"], true);

  const auto oracles = run({"verify", "--suite", "oracles", "--cases", "300",
                            "--n-max", "12", "--seed", "3"});
  EXPECT_EQ(oracles.code, cli::kSuccess) << oracles.err;
}

TEST(Cli, OutputIsByteIdenticalAcrossRunsAndWorkers) {
  const std::vector<std::string> base{"mc", "--n", "200", "--x", "0.25", "--samples",
                                      "30000", "--seed", "7", "--format", "csv"};
  auto with = [&](const char* w) {
    auto a = base;
    a.insert(a.end(), {"--workers", w});
    return run(a);
  };
  const auto a = with("1");
  const auto b = with("1");
  const auto c = with("5");
  ASSERT_EQ(a.code, cli::kSuccess) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);

  const std::vector<std::string> sw{"verify", "--suite", "sandwich", "--n", "1000",
                                    "--k", "300", "--trials", "9000", "--seed", "2",
                                    "--format", "json"};
  auto s1 = sw, s3 = sw;
  s1.insert(s1.end(), {"--workers", "1"});
  s3.insert(s3.end(), {"--workers", "3"});
  EXPECT_EQ(run(s1).out, run(s3).out);
}

TEST(Cli, OutputFileIsWrittenWhole) {
  const auto dir = std::filesystem::temp_directory_path() / "altseq_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "exact.json").string();
  const auto r = run({"exact", "--n", "5", "--all-k", "--format", "json", "--output", path});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  const auto j = nlohmann::json::parse(contents.str());
  EXPECT_EQ(j["results"]["rows"].size(), 4u);
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(e.path().filename(), "exact.json");
  }
  std::filesystem::remove_all(dir);
}

TEST(Cli, TablesValidate) {
  const auto dir = std::filesystem::temp_directory_path() / "altseq_tables_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "t.csv").string();
  ASSERT_EQ(run({"tables", "--n-max", "5", "--k", "1", "--format", "csv", "--output", path})
                .code,
            cli::kSuccess);
  EXPECT_EQ(run({"tables", "--validate", path}).code, cli::kSuccess);
  {
    std::ofstream bad(path, std::ios::app);
    bad << "1,5,1,3,1\n";
  }
  EXPECT_NE(run({"tables", "--validate", path}).code, cli::kSuccess);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace altseq
