#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "tspgap/cli.hpp"
#include "tspgap/instance.hpp"

using namespace tspgap;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("tspgap_cli_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(CliGen, WorstCaseEllTwoHasNineVertices) {
  auto r = cli({"gen", "worstcase", "--ell", "2"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(parse_instance(r.out).size(), 9);
}

TEST(CliGen, RandomIsDeterministic) {
  auto a = cli({"gen", "random", "--n", "7", "--seed", "3"});
  auto b = cli({"gen", "random", "--n", "7", "--seed", "3"});
  EXPECT_EQ(a.code, kExitPass);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, cli({"gen", "random", "--n", "7", "--seed", "4"}).out);
}

TEST(CliGen, UsageErrors) {
  EXPECT_EQ(cli({"gen", "random", "--n", "2"}).code, kExitUsage);
  EXPECT_EQ(cli({"gen", "bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"run", "--instance", "/nonexistent/file.json"}).code, kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, kExitPass);
}

TEST(CliRun, BoydCarrOnTriangle) {
  auto path = temp_file("triangle.json", instance_to_json(MetricInstance(3, {1, 1, 1})));
  auto r = cli({"run", "--instance", path.string(), "--pipeline", "boydcarr"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["pipelines"][0]["pipeline"], "boydcarr");
  EXPECT_EQ(j["pipelines"][0]["ratio"]["exact"], "1");
  EXPECT_EQ(j["pipelines"][0]["pass"], true);
}

TEST(CliRun, AllOnWorstCaseEllOne) {
  auto path = temp_file("w1.json", instance_to_json(gen_worst_case_family(1).instance));
  auto r = cli({"run", "--instance", path.string(), "--pipeline", "all"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  auto j = nlohmann::json::parse(r.out);
  std::map<std::string, std::pair<Rat, Rat>> ratios;
  for (const auto& row : j["pipelines"]) {
    if (row.contains("ratio")) {
      ratios[row["pipeline"]] = {parse_rat(row["ratio"]["exact"].get<std::string>()),
                                 parse_rat(row["bound"].get<std::string>())};
    }
  }
  EXPECT_LE(ratios.at("g2m43").first, make_rat(4, 3));
  EXPECT_LE(ratios.at("g2m109").first, make_rat(10, 9));
  EXPECT_LE(ratios.at("boydcarr").first, make_rat(10, 9));
  for (const auto& [name, rb] : ratios) EXPECT_LE(rb.first, rb.second) << name;
  // Byte-for-byte reproducible.
  EXPECT_EQ(cli({"run", "--instance", path.string(), "--pipeline", "all"}).out, r.out);
}

TEST(CliRun, TenNinthsNotApplicableWithCutEdge) {
  auto f = fixture::cut_path_instance(2, 3);
  auto path = temp_file("cut.json", instance_to_json(f.instance));
  auto r = cli({"run", "--instance", path.string(), "--pipeline", "g2m109", "--format", "csv"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find(",g2m109,not applicable,"), std::string::npos) << r.out;
}

TEST(CliRun, CsvHeader) {
  auto path = temp_file("w2.json", instance_to_json(gen_worst_case_family(2).instance));
  auto r = cli({"run", "--instance", path.string(), "--pipeline", "g2m43", "--format", "csv"});
  ASSERT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out.rfind("digest,n,pipeline,status,cost,reference,ratio,ratio_decimal,bound,pass\n", 0), 0u);
}

TEST(CliVerify, OraclesSummary) {
  auto r = cli({"verify", "oracles", "--n", "8", "--trials", "100"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("blossom=bruteforce 100/100"), std::string::npos) << r.out;
}

TEST(CliVerify, Polytopes) {
  auto r = cli({"verify", "polytopes", "--n", "5", "--trials", "5", "--format", "json"});
  EXPECT_EQ(r.code, kExitPass);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["checks"][0]["check"], "2mo_membership");
  EXPECT_EQ(j["checks"][0]["passed"], 5);
  EXPECT_GE(j["checks"][1]["total"].get<int>(), 3);
}

TEST(CliVerify, Ratios) {
  auto r = cli({"verify", "ratios", "--n", "9", "--trials", "10"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  EXPECT_NE(r.out.find("pipeline_bounds 10/10"), std::string::npos);
}

TEST(CliFamily, CsvTable) {
  auto r = cli({"family", "--ell-max", "3", "--format", "csv"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("\n2,9,9,9,10,10/9,1.111111,"), std::string::npos) << r.out;
}
