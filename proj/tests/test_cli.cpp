#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "support.hpp"

using namespace tb_test;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

const fs::path& scratch() {
  static const fs::path p = [] {
    auto dir = fs::temp_directory_path() / ("tribound_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
  }();
  return p;
}

CliRun run(const std::string& args) {
  const std::string cmd = "TRIBOUND_CACHE='" + (scratch() / "cache").string() + "' '" + TRIBOUND_CLI + "' " + args +
                          " 2>" + (scratch() / "stderr.txt").string();
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& key) { return "'" + fixture_path(key) + "'"; }

json run_json(const std::string& args, int expected_code = 0) {
  const CliRun r = run(args + " --json");
  EXPECT_EQ(r.code, expected_code) << args << "\n" << r.out;
  return json::parse(r.out);
}

}  // namespace

TEST(Fixtures, EmbeddedMatchFiles) {
  for (const auto& [key, text] : tribound::fixtures::embedded())
    EXPECT_EQ(json::parse(text), json::parse(slurp(fixture_path(key)))) << key;
}

TEST(Fixtures, LibraryLoadsDirectory) {
  const auto dir = tribound::fixtures::FixtureLibrary::from_directory(TRIBOUND_FIXTURE_DIR);
  const auto bundled = tribound::fixtures::FixtureLibrary::bundled();
  for (const char* key : {"d1", "d2", "d3", "d4", "d5", "d6"})
    EXPECT_EQ(tribound::diagram_hash(dir.get(key)), tribound::diagram_hash(bundled.get(key)));
}

TEST(Cli, Validate) {
  const json j = run_json("validate " + fx("d1"));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "validate");
  EXPECT_TRUE(j["results"]["valid"].get<bool>());
  EXPECT_EQ(j["results"]["counts"]["crossings"], 3);
  EXPECT_EQ(j["results"]["counts"]["faces"], 5);

  const json derived = run_json("validate " + fx("d3") + " --emit-derived");
  EXPECT_EQ(derived["results"]["diagram"]["derived"]["signs"].size(), 4u);

  auto broken = json::parse(slurp(fixture_path("d1")));
  broken["crossings"][0]["slots"][0]["edge"] = broken["crossings"][0]["slots"][2]["edge"];
  std::ofstream(scratch() / "broken.json") << broken.dump();
  const json bad = run_json("validate '" + (scratch() / "broken.json").string() + "'", 2);
  EXPECT_FALSE(bad["results"]["valid"].get<bool>());
  EXPECT_FALSE(bad["results"]["violations"].empty());

  std::ofstream(scratch() / "garbage.json") << "{ not json";
  EXPECT_EQ(run("validate '" + (scratch() / "garbage.json").string() + "'").code, 2);
}

TEST(Cli, Colorings) {
  EXPECT_EQ(run_json("colorings " + fx("d1") + " -n 3")["results"]["listed"], 9);
  EXPECT_EQ(run_json("colorings " + fx("d3") + " -n 5 --nontrivial-only")["results"]["listed"], 20);
  EXPECT_EQ(run_json("colorings " + fx("d1") + " -n 1")["results"]["listed"], 1);
  const json ext = run_json("colorings " + fx("d1") + " -n 3 --outer-color 0");
  EXPECT_TRUE(ext["results"]["colorings"][1].contains("regions"));
  EXPECT_EQ(run("colorings " + fx("d1") + " -n 0").code, 1);
}

TEST(Cli, Weight) {
  const std::string f3 = "-n 3 -f '(x-y)*(y-z)*z' -s 0";
  const json d1 = run_json("weight " + fx("d1") + " " + f3 + " --coloring all");
  const auto phi1 = d1["results"]["phi"]["values"].get<std::vector<long long>>();
  EXPECT_NE(std::find(phi1.begin(), phi1.end(), -8), phi1.end());
  const json d2 = run_json("weight " + fx("d2") + " " + f3);
  EXPECT_EQ(d2["results"]["phi"]["values"], json::parse("[-2,2]"));
  const json d6 = run_json("weight " + fx("d6") + " -n 4 -f '(x+y)^2*(y-z)^3*z^5' -s 0 --coloring all");
  EXPECT_EQ(d6["results"]["phi"]["values"], json::parse("[-3744,-1004,0,292]"));
  const json trivial = run_json("weight " + fx("d1") + " " + f3 + " --coloring 0");
  EXPECT_EQ(trivial["results"]["weights"][0]["value"], 0);
  const CliRun sharp = run("weight " + fx("d1") + " -n 3 -f x -s 0");
  EXPECT_EQ(sharp.code, 2);
  EXPECT_NE(slurp((scratch() / "stderr.txt").string()).find("(1,0,0)"), std::string::npos);
}

TEST(Cli, Delta) {
  const json d3 = run_json("delta -n 3 -f '(x-y)*(y-z)*z' --max-m 1");
  EXPECT_EQ(d3["results"]["levels"][1], json(tribound::fixtures::trefoil_delta1()));
  EXPECT_EQ(run_json("delta -n 5 -f '(x+y)^3*(y+z)*(y-z)^3*z^5'")["results"]["im_delta_size"], 393);
  EXPECT_EQ(run_json("delta -n 4 -f '(x+y)^2*(y-z)^3*z^5'")["results"]["im_delta_size"], 105);
  const json big = run_json("delta -n 4 -f '(x+y)^2*(y-z)^3*z^5' --max-m 2 --inline-limit 10");
  EXPECT_TRUE(big["results"]["levels"][2].contains("count"));
  EXPECT_TRUE(big["results"]["levels"][2].contains("file"));
  EXPECT_EQ(run("delta -n 5 -f '(x+y)^3*(y+z)*(y-z)^3*z^5' --max-m 2 --cap 1000 --no-cache").code, 4);
}

TEST(Cli, CacheWarmMatchesCold) {
  const std::string args = "delta -n 4 -f '(x+y)^2*(y-z)^3*z^5' --max-m 2 --cache '" + (scratch() / "c2").string() + "'";
  json cold = run_json(args);
  json warm = run_json(args);
  EXPECT_EQ(cold["cache"]["misses"], 1);
  EXPECT_EQ(warm["cache"]["hits"], 1);
  EXPECT_EQ(cold["results"], warm["results"]);
}

TEST(Cli, CertifyAndVerify) {
  const std::string out = (scratch() / "cert.json").string();
  const json c = run_json("certify " + fx("d1") + " " + fx("d2") + " -n 3 -f '(x-y)*(y-z)*z' -s 0 --max-m 2 -o '" +
                          out + "'");
  EXPECT_EQ(c["results"]["m"], 2);
  EXPECT_EQ(run("verify '" + out + "' " + fx("d1") + " " + fx("d2")).code, 0);
  EXPECT_EQ(run("verify '" + out + "' " + fx("d2") + " " + fx("d1")).code, 3);

  const json c8 =
      run_json("certify " + fx("d3") + " " + fx("d4") + " -n 5 -f '(x+y)^3*(y+z)*(y-z)^3*z^5' -s 2 --max-m 3");
  EXPECT_EQ(c8["results"]["m"], 3);
  const json same = run_json("certify " + fx("d1") + " " + fx("d1") + " -n 3 -f '(x-y)*(y-z)*z' -s 0", 3);
  EXPECT_EQ(same["results"]["m"], 0);
}

TEST(Cli, Reproduce) {
  const json r = run_json("reproduce");
  EXPECT_TRUE(r["results"]["all_pass"].get<bool>());
  EXPECT_GE(r["results"]["checks"].size(), 15u);

  const fs::path wrong = scratch() / "wrong";
  fs::create_directories(wrong);
  for (const auto& [key, text] : tribound::fixtures::embedded()) std::ofstream(wrong / (key + ".json")) << text;
  auto d2 = json::parse(slurp(fixture_path("d1")));
  d2["name"] = "D2";
  std::ofstream(wrong / "d2.json") << d2.dump();
  const CliRun bad = run("reproduce --fixtures '" + wrong.string() + "'");
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.out.find("FAIL Phi(D2)"), std::string::npos);
  EXPECT_NE(bad.out.find("expected: {-2,2}"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("weight " + fx("d1") + " -n 3").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ExportFixtures) {
  const fs::path dir = scratch() / "exported";
  EXPECT_EQ(run("export-fixtures '" + dir.string() + "'").code, 0);
  for (const char* key : {"d1", "d6"})
    EXPECT_EQ(json::parse(slurp((dir / (std::string(key) + ".json")).string())), json::parse(slurp(fixture_path(key))));
}
