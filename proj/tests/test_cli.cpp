#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "confplan/io.hpp"

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(CONFPLAN_BIN) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string data(const char* name) { return std::string(CONFPLAN_DATA) + "/" + name; }

std::string y_args(const char* from, const char* to) {
  return "--graph " + data("y_tree.json") + " --root r --from " + data(from) + " --to " + data(to);
}

}  // namespace

TEST(Cli, PlanIsCollisionFreeAndDeterministic) {
  const CliRun a = run("plan " + y_args("y_from.json", "y_to.json") + " --recheck");
  ASSERT_EQ(a.status, 0);
  const auto j = confplan::Json::parse(a.out);
  EXPECT_EQ(j["collision_check"]["verdict"], "clear");
  EXPECT_TRUE(j.contains("domain_index"));
  const CliRun b = run("plan " + y_args("y_from.json", "y_to.json") + " --recheck");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, RandomPlanNearTheVertex) {
  const CliRun r = run("random-plan " + y_args("y_near.json", "y_to.json"));
  ASSERT_EQ(r.status, 0);
  const auto j = confplan::Json::parse(r.out);
  const auto& entries = j["entries"];
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0]["p"], "1/2");
  EXPECT_EQ(entries[1]["p"], "1/2");
  EXPECT_EQ(entries[2]["p"], "0");
  EXPECT_EQ(run("random-plan " + y_args("y_near.json", "y_to.json")).out, r.out);
  EXPECT_EQ(run("random-plan " + y_args("y_near.json", "y_to.json") + " --eps 0.6").status, 1);
}

TEST(Cli, TopologicalComplexity) {
  const CliRun y = run("tc --graph " + data("y_tree.json") + " --agents 2");
  ASSERT_EQ(y.status, 0);
  EXPECT_EQ(confplan::Json::parse(y.out)["configuration_tc"]["value"], 2);
  const CliRun k5 = run("tc --graph " + data("k5.json") + " --agents 2");
  ASSERT_EQ(k5.status, 0);
  EXPECT_EQ(confplan::Json::parse(k5.out)["configuration_tc"]["value"], 5);
}

TEST(Cli, AnalyzeAndDiscretize) {
  const CliRun a = run("analyze --graph " + data("h_tree.json") + " --root a");
  ASSERT_EQ(a.status, 0);
  EXPECT_TRUE(confplan::Json::parse(a.out)["consistent"].get<bool>());
  const CliRun d = run("discretize --graph " + data("y_tree.json") + " --agents 2 --subdivision 3");
  ASSERT_EQ(d.status, 0);
  EXPECT_EQ(confplan::Json::parse(d.out)["betti1"], 1);
}

TEST(Cli, VerifySuitePasses) {
  const CliRun v = run("verify --suite default --fuzz 20");
  ASSERT_EQ(v.status, 0);
  EXPECT_TRUE(confplan::Json::parse(v.out)["pass"].get<bool>());
}

TEST(Cli, ErrorsAreReportedAsJson) {
  const CliRun coarse = run("discretize --graph " + data("y_tree.json") + " --agents 3 --subdivision 2", true);
  EXPECT_EQ(coarse.status, 1);
  EXPECT_EQ(confplan::Json::parse(coarse.out)["error"]["code"], "SubdivisionTooCoarse");
  const CliRun root = run("plan --graph " + data("y_tree.json") + " --root c --from " + data("y_from.json") + " --to " + data("y_to.json"), true);
  EXPECT_EQ(root.status, 1);
  EXPECT_EQ(confplan::Json::parse(root.out)["error"]["code"], "RootNotUnivalent");
  EXPECT_EQ(run("plan --graph /nonexistent.json --root r --from x --to y").status, 1);
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("--help").status, 0);
}
