#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "process.h"

namespace cursor {
namespace {

namespace fs = std::filesystem;
using testing::cli;
using testing::run_command;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cursorctl_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, CcfCrop) {
  const auto r = run_command(cli() + " ccf-crop --width 3840 --height 2160 --pred-x 2000 --pred-y 1200");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["origin"], nlohmann::json::parse("[1040,660]"));
  EXPECT_EQ(j["size"], nlohmann::json::parse("[1920,1080]"));
}

TEST_F(CliTest, RunScoreEval) {
  ASSERT_EQ(run_command(cli() + " gen-scenes --out " + path("scenes") + " --count 5 --seed 3").exit_code, 0);
  EXPECT_TRUE(fs::exists(path("scenes/manifest.jsonl")));
  ASSERT_EQ(run_command(cli() + " run --scenes " + path("scenes") + " --policy oracle --out " +
                        path("log.jsonl")).exit_code,
            0);
  const auto score = run_command(cli() + " score --in " + path("log.jsonl"));
  EXPECT_EQ(score.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(score.out)["mismatches"], 0);
  EXPECT_EQ(nlohmann::json::parse(score.out)["records"], 5);
  const auto eval = run_command(cli() + " eval --in " + path("log.jsonl") + " --by tag");
  ASSERT_EQ(eval.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(eval.out)["accuracy"], 1.0);
}

TEST_F(CliTest, GroupRun) {
  ASSERT_EQ(run_command(cli() + " gen-scenes --out " + path("scenes") + " --count 2").exit_code, 0);
  const auto r = run_command(cli() + " run --scenes " + path("scenes") + " --policy noisy:10 --n 4");
  ASSERT_EQ(r.exit_code, 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 8);
  EXPECT_NE(r.out.find("\"group\""), std::string::npos);
}

TEST_F(CliTest, ScoreDetectsTampering) {
  ASSERT_EQ(run_command(cli() + " gen-scenes --out " + path("scenes") + " --count 2").exit_code, 0);
  const auto r = run_command(cli() + " run --scenes " + path("scenes") + " --policy lazy");
  std::string log = r.out;
  const std::string key = "\"false_stop\":";
  const auto pos = log.rfind(key);
  ASSERT_NE(pos, std::string::npos);
  const char bit = log[pos + key.size()];
  log[pos + key.size()] = bit == '0' ? '1' : '0';
  std::ofstream(path("bad.jsonl")) << log;
  EXPECT_EQ(run_command(cli() + " score --in " + path("bad.jsonl")).exit_code, 1);
}

TEST_F(CliTest, Probe) {
  ASSERT_EQ(run_command(cli() + " gen-probe --out " + path("probe") + " --no-images").exit_code, 0);
  std::ifstream manifest(path("probe/manifest.jsonl"));
  std::ofstream answers(path("answers.txt"));
  std::string line;
  int n = 0;
  while (std::getline(manifest, line)) {
    answers << (nlohmann::json::parse(line)["label"] == "inside" ? "yes" : "no") << '\n';
    ++n;
  }
  answers.close();
  EXPECT_EQ(n, 250);
  const auto r = run_command(cli() + " probe-heatmap --manifest " + path("probe/manifest.jsonl") +
                             " --answers " + path("answers.txt"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.substr(0, 9), "1.000000,");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run_command(cli() + " 2>/dev/null").exit_code, 2);
  EXPECT_EQ(run_command(cli() + " run --scenes " + path("missing") + " 2>/dev/null").exit_code, 2);
  EXPECT_EQ(run_command(cli() + " run --scenes " + path("") + " --policy bogus 2>/dev/null").exit_code, 1);
  std::ofstream(path("junk.jsonl")) << "not json\n";
  EXPECT_EQ(run_command(cli() + " eval --in " + path("junk.jsonl") + " 2>/dev/null").exit_code, 2);
}

}  // namespace
}  // namespace cursor
