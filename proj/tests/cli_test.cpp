#include <gtest/gtest.h>
#include <sys/wait.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string problem(const std::string& name) {
  return std::string(CEX_PROBLEMS_DIR) + "/" + name;
}

Result cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CEX_CLI + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  Result r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Cli, RunPrintsAssignmentAndTrace) {
  const auto r = cli("run " + problem("intro.json") + " -m csd");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("assignment: (4,5,6,2,1,3)"), std::string::npos);
  EXPECT_NE(r.out.find("A1 -> b1"), std::string::npos);
  EXPECT_NE(r.out.find("fallback"), std::string::npos);
}

TEST(Cli, RunJsonWithCertificate) {
  const auto r = cli("run " + problem("odd7.json") + " -m tsd --certify --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["tool"], "cexchange");
  EXPECT_EQ(j["trace"].size(), 7u);
  EXPECT_TRUE(j["certification"]["derangement"].get<bool>());
  EXPECT_TRUE(j["certification"]["eap_efficient"].get<bool>());
}

TEST(Cli, CeTtcStartIsConfigurable) {
  const auto a = cli("run " + problem("n3_improved.json") + " -m cettc --format json");
  const auto b = cli("run " + problem("n3_improved.json") + " -m cettc --mu0 explicit:3,1,2 --format json");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(nlohmann::json::parse(a.out)["assignment"], nlohmann::json({2, 3, 1}));
  EXPECT_EQ(nlohmann::json::parse(b.out)["assignment"], nlohmann::json({3, 1, 2}));
  EXPECT_EQ(cli("run " + problem("n3_improved.json") + " -m cettc --mu0 explicit:1,3,2").code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("--version").code, 0);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("run " + problem("missing.json") + " -m csd").code, 2);
  EXPECT_EQ(cli("run " + problem("intro.json") + " -m nope").code, 2);
  EXPECT_EQ(cli("run " + problem("intro.json") + " -m csd --bogus").code, 2);
  EXPECT_EQ(cli("run " + problem("bttc_base.json") + " -m csd").code, 2);  // no partition
  EXPECT_EQ(cli("run " + problem("n3_improved.json") + " -m bttc").code, 2);  // own rank unknown
  EXPECT_EQ(cli("partition --sizes 5,1").code, 3);
  EXPECT_EQ(cli("verify -m csd -p sp -n 5").code, 4);
  EXPECT_EQ(cli("verify -m csd -p sp -n 3").code, 0);
  EXPECT_EQ(cli("verify -m bttc -p ri -n 3").code, 1);
  EXPECT_EQ(cli("repro bttc-ri").code, 0);
  EXPECT_EQ(cli("repro nope").code, 2);
}

TEST(Cli, PartitionCommand) {
  const auto r = cli("partition --sizes 2,1,1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["partition"].size(), 3u);
  EXPECT_EQ(j["partition"][1]["workers"], nlohmann::json({1}));
  const auto g = cli("partition --groups \"1,4;2;3\" --format text");
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("divisions 1,4"), std::string::npos);
}

TEST(Cli, SampledSweepsAreReproducible) {
  const std::string args = "verify -m npb -p ri -n 6 --scope sampled --count 300 --seed 4 --format json";
  const auto a = cli(args + " --jobs 1");
  const auto b = cli(args + " --jobs 3");
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(cli("verify -m npb -p ri -n 6 --scope sampled --count 300 --seed 5 --format json").out,
            std::string());
}

TEST(Cli, WitnessFilesReplay) {
  const auto dir = std::filesystem::temp_directory_path() / "cex_cli_witness";
  std::filesystem::remove_all(dir);
  const auto r = cli("verify -m bttc -p ri -n 3 --witness-out " + dir.string());
  ASSERT_EQ(r.code, 1);
  const auto w = read_json(dir / "witness.json")["witness"];
  const auto before = cli("run " + (dir / "problem.json").string() + " -m bttc --format json");
  const auto after = cli("run " + (dir / "alternative.json").string() + " -m bttc --format json");
  ASSERT_EQ(before.code, 0);
  ASSERT_EQ(after.code, 0);
  EXPECT_EQ(nlohmann::json::parse(before.out)["assignment"], w["outcome"]);
  EXPECT_EQ(nlohmann::json::parse(after.out)["assignment"], w["alternative_outcome"]);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReproAllReportsTheIntroMismatch) {
  const auto r = cli("repro all");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("[FAIL] intro"), std::string::npos);
  EXPECT_NE(r.out.find("[PASS] n4-tables"), std::string::npos);
  EXPECT_NE(r.out.find("[PASS] npb:12"), std::string::npos);
}
