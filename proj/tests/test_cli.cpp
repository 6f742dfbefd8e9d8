#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path dir() {
  static fs::path d = [] {
    fs::path p = fs::temp_directory_path() / "voa_cli_test";
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int run(const std::string& args) {
  std::string cmd = std::string(VOA_BIN) + " " + args + " 2>/dev/null >/dev/null";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string f(const std::string& name) { return (dir() / name).string(); }

}  // namespace

TEST(Cli, BuildLevelDims) {
  ASSERT_EQ(run("build virasoro --c 1/2 --cutoff 6 --out " + f("v.json")), 0);
  auto j = nlohmann::json::parse(slurp(f("v.json")));
  EXPECT_EQ(j["level_dims"], (std::vector<int>{1, 0, 1, 1, 2, 2, 3}));
  ASSERT_EQ(run("build heisenberg --cutoff 4 --out " + f("h.json")), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(f("h.json")))["level_dims"], (std::vector<int>{1, 1, 2, 3, 5}));
  ASSERT_EQ(run("build virasoro --c 0 --cutoff 4 --out " + f("v0.json")), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(f("v0.json")))["level_dims"], (std::vector<int>{1, 0, 0, 0, 0}));
}

TEST(Cli, BuildIsIdempotent) {
  ASSERT_EQ(run("build sl2 --k 1 --cutoff 4 --out " + f("a.json")), 0);
  ASSERT_EQ(run("build sl2 --k 1 --cutoff 4 --out " + f("b.json")), 0);
  EXPECT_EQ(slurp(f("a.json")), slurp(f("b.json")));
}

TEST(Cli, BuildErrors) {
  EXPECT_EQ(run("build nosuch --cutoff 3"), 2);
  EXPECT_EQ(run("build sl2 --k 0 --cutoff 3"), 2);
  EXPECT_EQ(run("build virasoro --c x/y --cutoff 3"), 2);
  EXPECT_EQ(run("build tensor --cutoff 3"), 2);
}

TEST(Cli, TensorBuild) {
  ASSERT_EQ(run("build heisenberg --cutoff 3 --out " + f("h3.json")), 0);
  ASSERT_EQ(run("build tensor --left " + f("h3.json") + " --right " + f("h3.json") + " --out " + f("t.json")), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(f("t.json")))["level_dims"], (std::vector<int>{1, 2, 5, 10}));
}

TEST(Cli, CheckExitCodes) {
  ASSERT_EQ(run("build heisenberg --cutoff 5 --out " + f("h5.json")), 0);
  EXPECT_EQ(run("check axioms --model " + f("h5.json") + " --out " + f("ax.json")), 0);
  auto rep = nlohmann::json::parse(slurp(f("ax.json")));
  for (const auto& r : rep["records"]) {
    EXPECT_EQ(r["verdict"], "pass");
    EXPECT_TRUE(r.contains("exact"));
  }
  EXPECT_EQ(rep["seed"], 0);
  EXPECT_FALSE(rep["records"][0].contains("runtime_ms"));

  ASSERT_EQ(run("build virasoro --c -22/5 --cutoff 5 --out " + f("ly.json")), 0);
  EXPECT_EQ(run("check unitarity --model " + f("ly.json") + " --out " + f("un.json")), 1);
  bool positivity_failed = false;
  auto un = nlohmann::json::parse(slurp(f("un.json")));
  for (const auto& r : un["records"])
    if (r["name"].get<std::string>().rfind("unitarity.positivity", 0) == 0 && r["verdict"] == "fail")
      positivity_failed = true;
  EXPECT_TRUE(positivity_failed);
}

TEST(Cli, ReportsAreReproducible) {
  ASSERT_EQ(run("build sl2 --k 1 --cutoff 3 --out " + f("s3.json")), 0);
  ASSERT_EQ(run("check unitarity --model " + f("s3.json") + " --out " + f("r1.json")), 0);
  ASSERT_EQ(run("--threads 3 check unitarity --model " + f("s3.json") + " --out " + f("r2.json")), 0);
  EXPECT_EQ(slurp(f("r1.json")), slurp(f("r2.json")));
}

TEST(Cli, CorruptOrTamperedModel) {
  { std::ofstream(f("broken.json")) << "{\"cutoff\":"; }
  EXPECT_EQ(run("check axioms --model " + f("broken.json")), 2);
  ASSERT_EQ(run("build heisenberg --cutoff 3 --out " + f("t3.json")), 0);
  auto j = nlohmann::json::parse(slurp(f("t3.json")));
  j["central_charge"] = "5";
  { std::ofstream(f("tampered.json")) << j.dump(); }
  EXPECT_EQ(run("check axioms --model " + f("tampered.json")), 2);
  EXPECT_EQ(run("check axioms --model " + f("missing.json")), 2);
}

TEST(Cli, Character) {
  ASSERT_EQ(run("build sl2 --k 1 --cutoff 5 --out " + f("c.json")), 0);
  std::string cmd = std::string(VOA_BIN) + " character --model " + f("c.json") + " --max 3 --out " + f("ch.txt");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(f("ch.txt")), "1 + 3q + 4q² + 7q³\n");
}

TEST(Cli, SubalgebraOps) {
  ASSERT_EQ(run("build sl2 --k 1 --cutoff 5 --out " + f("s5.json")), 0);
  { std::ofstream(f("gen.json")) << R"({"generators":["nu"]})"; }
  ASSERT_EQ(run("subalgebra --model " + f("s5.json") + " --generators " + f("gen.json") + " --op coset --out " +
                f("co.json")),
            0);
  auto co = nlohmann::json::parse(slurp(f("co.json")));
  EXPECT_EQ(co["level_dims"], (std::vector<int>{1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(co["split"]["sum_exact"], true);
  { std::ofstream(f("grp.json")) << R"({"group":[{"zero_mode_exp":{"field":"e"}},{"zero_mode_exp":{"field":"f"}}]})"; }
  ASSERT_EQ(run("subalgebra --model " + f("s5.json") + " --generators " + f("grp.json") + " --op fixed --out " +
                f("fx.json")),
            0);
  EXPECT_EQ(nlohmann::json::parse(slurp(f("fx.json")))["level_dims"], (std::vector<int>{1, 0, 1, 1, 2, 2}));
  { std::ofstream(f("bad.json")) << R"({"group":[{"zero_mode_exp":{"field":"h"}}]})"; }
  EXPECT_EQ(run("subalgebra --model " + f("s5.json") + " --generators " + f("bad.json") + " --op fixed"), 2);
}

TEST(Cli, SmearChecks) {
  ASSERT_EQ(run("build heisenberg --cutoff 6 --out " + f("h6.json")), 0);
  EXPECT_EQ(run("smear --model " + f("h6.json") + " --field a --function bump:0,pi --check adjoint --window 64"), 0);
  EXPECT_EQ(run("smear --model " + f("h6.json") + " --function bump:0.3,0.7pi --function2 bump:1.1pi,1.9pi "
                "--check wightman --window 128"),
            0);
  EXPECT_EQ(run("smear --model " + f("h6.json") + " --function cos:1 --function2 sin:1 --check symplectic"), 0);
  // reflection residual diverges with the truncation; the check reports failure
  EXPECT_EQ(run("smear --model " + f("h6.json") + " --check bw --nmax 20 --window 64 --out " + f("bw.json")), 1);
  auto bw = nlohmann::json::parse(slurp(f("bw.json")));
  EXPECT_TRUE(bw["records"][0].contains("residual"));
  EXPECT_TRUE(bw["records"][0]["details"].contains("improvement"));
  EXPECT_EQ(run("smear --model " + f("h6.json") + " --function nope:1 --check adjoint"), 2);
  EXPECT_EQ(run("smear --model " + f("h6.json") + " --function bump:0,1 --function2 bump:0.5,2 --check wightman"), 2);
}
