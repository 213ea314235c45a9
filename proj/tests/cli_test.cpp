#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "wocd/graphio.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(WOCD_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("wocd_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string small_synth(const fs::path& dir, int seed = 0) {
  const auto out = dir / "data";
  const auto r = run("synth --nodes 80 --communities 3 --p-in 0.2 --p-out 0.01 --dims-per-community 4 --seed " +
                     std::to_string(seed) + " --out-dir " + out.string());
  EXPECT_EQ(r.code, 0);
  return out.string();
}

std::string data_flags(const std::string& d) {
  return " --edges " + d + "/edges.tsv --features " + d + "/features.csv --cover " + d + "/cover.txt";
}

}  // namespace

TEST(Cli, SynthIsByteIdentical) {
  const auto dir = scratch("synth");
  const auto a = small_synth(dir / "a", 4), b = small_synth(dir / "b", 4);
  for (const char* file : {"edges.tsv", "features.csv", "cover.txt"}) {
    EXPECT_EQ(wocd::read_text_file(fs::path(a) / file), wocd::read_text_file(fs::path(b) / file)) << file;
  }
  EXPECT_EQ(wocd::load_edge_list(fs::path(a) / "edges.tsv").n_nodes(), 80);
}

TEST(Cli, MissingFlagIsUsageError) {
  EXPECT_EQ(run("synth --nodes 10").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, BadInputCodes) {
  const auto dir = scratch("bad");
  wocd::write_text_file(dir / "bad.txt", "0: x\n");
  wocd::write_text_file(dir / "ok.txt", "0: 0\n");
  EXPECT_EQ(run("eval " + (dir / "bad.txt").string() + " " + (dir / "ok.txt").string()).code, 3);
  const auto d = small_synth(dir);
  EXPECT_EQ(run("train" + data_flags(d) + " --lambda1 -1 --epochs 2 --out-cover " + (dir / "c").string() +
                " --report " + (dir / "r").string())
                .code,
            4);
}

TEST(Cli, EvalIdentityAndCliques) {
  const auto dir = scratch("eval");
  const auto d = small_synth(dir);
  const auto r = run("eval " + d + "/cover.txt " + d + "/cover.txt");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out).at("onmi").get<double>(), 1.0, 1e-12);

  const auto c = run("cliques --edges " + d + "/edges.tsv");
  ASSERT_EQ(c.code, 0);
  std::istringstream lines(c.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_NE(line.find(':'), std::string::npos);
    ++n;
  }
  EXPECT_GT(n, 0);
}

TEST(Cli, PseudoWritesCover) {
  const auto dir = scratch("pseudo");
  const auto d = small_synth(dir);
  const auto out = dir / "pseudo.txt";
  const auto r = run("pseudo --edges " + d + "/edges.tsv --cover " + d + "/cover.txt --rho 0.2 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(wocd::load_cover(out).n_nodes(), 80);
  EXPECT_TRUE(nlohmann::json::parse(r.out).contains("n_pseudo"));
}

TEST(Cli, TrainWritesOutputs) {
  const auto dir = scratch("train");
  const auto d = small_synth(dir);
  const auto r = run("train" + data_flags(d) + " --epochs 9 --hidden 8 --report " + (dir / "report.json").string() +
                     " --out-cover " + (dir / "final.txt").string() + " --csv " + (dir / "row.csv").string() +
                     " --save-model " + (dir / "model.json").string() + " --artifacts " + (dir / "art").string());
  ASSERT_EQ(r.code, 0);
  const auto report = nlohmann::json::parse(wocd::read_text_file(dir / "report.json"));
  EXPECT_EQ(report.at("loss_trace_initial").size(), 5u);
  EXPECT_EQ(report.at("loss_trace_refined").size(), 4u);
  EXPECT_EQ(wocd::load_cover(dir / "final.txt").n_nodes(), 80);
  EXPECT_TRUE(fs::exists(dir / "model.json"));
  EXPECT_TRUE(fs::exists(dir / "row.csv"));
  EXPECT_FALSE(fs::is_empty(dir / "art"));
}

TEST(Cli, AblateRowCounts) {
  const auto dir = scratch("ablate");
  const auto d = small_synth(dir);
  const auto r = run("ablate" + data_flags(d) + " --epochs 4 --hidden 8 --rhos 0.1,0.2 --seeds 0,1,2"
                     " --arms full,no-pseudo,gcn-only");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int runs = 0, means = 0, total = 0;
  while (std::getline(lines, line)) {
    ++total;
    runs += line.rfind("run,", 0) == 0;
    means += line.rfind("mean,", 0) == 0;
  }
  EXPECT_EQ(runs, 18);
  EXPECT_EQ(means, 6);
  EXPECT_EQ(total, 25);
}
