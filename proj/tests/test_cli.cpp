#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "swapshop/instance.hpp"

using namespace swapshop;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "swapshop_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  const auto out_path = scratch() / "stdout.txt";
  const std::string cmd =
      std::string(SWAPSHOP_CLI) + " " + args + " > " + out_path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

bool has(const Run& r, const std::string& needle) {
  return r.out.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, SolvePathAgainstOracle) {
  const auto path = write("path3.txt", "0 1 1\n1 2 1\n");
  const auto r = run("solve --instance " + path + " --mode kmed --k 1 --s 2 --epsilon 0.01 --oracle");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r, "ratio=1\n")) << r.out;
  EXPECT_TRUE(has(r, "result=PASS"));
}

TEST(Cli, SolveUfl) {
  const auto path = write("path3.txt", "0 1 1\n1 2 1\n");
  const auto r = run("solve --instance " + path + " --mode ufl --f 10 --s 2 --epsilon 0.01");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r, "final_cost=12\n")) << r.out;
}

TEST(Cli, TightnessPlantedRatio) {
  const auto path = (scratch() / "tight.txt").string();
  ASSERT_EQ(run("generate --family tightness --params m=8 eps=0.5 --out " + path).code, 0);
  const auto r = run("solve --instance " + path + " --mode kmed --initial " + path +
                     ".planted --s 2 --epsilon 0.01 --oracle");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r, "iterations=0\n"));
  EXPECT_TRUE(has(r, "ratio=2.625\n")) << r.out;
  EXPECT_TRUE(std::filesystem::exists(path + ".opt"));
}

TEST(Cli, ReportsAreStableExceptTiming) {
  const auto path = (scratch() / "grid.txt").string();
  ASSERT_EQ(run("generate --family grid --params 5 5 weights=random --seed 3 --out " + path).code, 0);
  auto strip = [](std::string s) {
    const auto at = s.find("timing ");
    const auto end = s.find('\n', at);
    return s.erase(at, end - at);
  };
  const std::string args = "solve --instance " + path +
                           " --mode kmeans --k 3 --s 2 --epsilon 0.01 --init random --seed 9";
  EXPECT_EQ(strip(run(args).out), strip(run(args).out));
}

TEST(Cli, BudgetIsAWarning) {
  const auto path = (scratch() / "grid6.txt").string();
  ASSERT_EQ(run("generate --family grid --params 6 6 --out " + path).code, 0);
  ::setenv("SWAPSHOP_BUDGET", "10", 1);
  const auto r = run("solve --instance " + path + " --mode kmed --k 2 --s 1 --epsilon 0.01 --oracle");
  ::unsetenv("SWAPSHOP_BUDGET");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r, "warning"));
}

TEST(Cli, GenerateShapes) {
  const auto grid = (scratch() / "g44.txt").string();
  ASSERT_EQ(run("generate --family grid --params 4 4 --out " + grid).code, 0);
  const auto inst = load_instance(grid);
  EXPECT_EQ(inst.num_elements, 16);
  EXPECT_EQ(inst.edges.size(), 24u);
  const auto pts = (scratch() / "e.csv").string();
  ASSERT_EQ(run("generate --family random-euclid --params n=50 d=2 --seed 7 --out " + pts).code, 0);
  EXPECT_EQ(load_instance(pts).num_elements, 50);
  EXPECT_EQ(run("generate --family grid --params 4 --out " + grid).code, 2);
  EXPECT_EQ(run("generate --family tightness --params m=1 --out " + grid).code, 2);
}

TEST(Cli, CertifyChecks) {
  const auto grid = (scratch() / "cg.txt").string();
  ASSERT_EQ(run("generate --family grid --params 5 6 --f 3 --out " + grid).code, 0);
  const auto same = write("same.sol", "0\n7\n22\n");
  auto r = run("certify --instance " + grid + " --local " + same + " --global " + same +
               " --epsilon 0.3 --check ufl-chain");
  EXPECT_EQ(r.code, 0) << r.out;
  const auto path = write("p4.txt", "0 1 1\n1 2 1\n2 3 1\n");
  const auto l = write("l.sol", "1\n");
  const auto g = write("g.sol", "0\n3\n");
  r = run("certify --instance " + path + " --local " + l + " --global " + g +
          " --epsilon 0.3 --check isolation");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r, "k_bar=2\n"));
  r = run("certify --instance " + path + " --local " + l + " --global " + g +
          " --epsilon 0.3 --check deletion");
  EXPECT_EQ(r.code, 0) << r.out;
  r = run("certify --instance " + path + " --local " + l + " --global " + g +
          " --epsilon 0.3 --check ufl-chain");
  EXPECT_EQ(r.code, 2) << r.out;  // no opening cost
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("solve --mode kmed").code, 2);
  EXPECT_EQ(run("solve --instance /nonexistent --mode kmed --s 1 --epsilon 0.1").code, 2);
  const auto bad = write("bad.txt", "0 1 -1\n");
  const auto r = run("solve --instance " + bad + " --mode kmed --k 1 --s 1 --epsilon 0.1");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r, "nonpositive weight"));
  const auto path = write("path3.txt", "0 1 1\n1 2 1\n");
  EXPECT_EQ(run("solve --instance " + path + " --mode kmed --s 1 --epsilon 0.1").code, 2);
  EXPECT_EQ(run("solve --instance " + path + " --mode ufl --s 1 --epsilon 0.1").code, 2);
}

TEST(Cli, DivideAndVoronoi) {
  const auto grid = (scratch() / "d.txt").string();
  ASSERT_EQ(run("generate --family grid --params 8 8 --out " + grid).code, 0);
  EXPECT_EQ(run("divide --instance " + grid + " --r 16").code, 0);
  const auto pts = (scratch() / "d.csv").string();
  ASSERT_EQ(run("generate --family random-euclid --params 100 2 --seed 1 --out " + pts).code, 0);
  EXPECT_EQ(run("divide --instance " + pts + " --r 32").code, 0);
  const auto centers = write("c.sol", "0\n63\n");
  const auto r = run("voronoi --instance " + grid + " --centers " + centers);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "cells_connected=true"));
}
