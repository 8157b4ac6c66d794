#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "mixgen_cli_test";

int run(const std::string& args) {
  fs::create_directories(kRoot);
  const std::string cmd = std::string("\"") + MIXGEN_CLI_PATH + "\" " + args + " >>\"" +
                          (kRoot / "log.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out(const std::string& name) { return "--out \"" + (kRoot / name).string() + "\""; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

using Table = std::vector<std::vector<std::string>>;

Table read_csv(const fs::path& p) {
  Table rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t k = 0; k < t.at(0).size(); ++k)
    if (t[0][k] == name) return k;
  FAIL("missing column " << name);
  return 0;
}

const char* kSmallNet =
    "--hidden 8 --depth-dim 8 --head 16 8 --estimator-lr 3e-3 --generator-lr 3e-3";

}  // namespace

TEST_CASE("pool lists every grouping") {
  REQUIRE(run("pool --n 5 " + out("pool")) == 0);
  const Table t = read_csv(kRoot / "pool" / "pool.csv");
  CHECK(t[0] == std::vector<std::string>{"index", "rgs", "groups"});
  CHECK(t.size() == 1 + 52u);
  CHECK(t[1][1] == "0-0-0-0-0");
  CHECK(fs::exists(kRoot / "pool" / "run.json"));
}

TEST_CASE("solve reports the spec, parameter count and traces, and replays exactly") {
  REQUIRE(run("solve --mixer file:XYXYXX/0-1-2-0-3-3 --p 3 --restarts 2 --epochs 10 --seed 4 " +
              out("solve")) == 0);
  const Table t = read_csv(kRoot / "solve" / "solve.csv");
  REQUIRE(t.size() == 2u);
  CHECK(t[1][column(t, "mixer")] == "XYXYXX/0-1-2-0-3-3");
  CHECK(t[1][column(t, "K")] == "4");
  CHECK(t[1][column(t, "num_params")] == "15");
  const double r = std::stod(t[1][column(t, "r")]);
  CHECK(r > 0.0);
  CHECK(r <= 1.0);
  const Table trace = read_csv(kRoot / "solve" / "trace.csv");
  CHECK(trace[0] == std::vector<std::string>{"restart", "epoch", "loss", "grad_norm"});
  CHECK(trace.size() == 1 + 2 * 10u);

  nlohmann::json manifest = nlohmann::json::parse(slurp(kRoot / "solve" / "run.json"));
  CHECK(manifest["command"] == "solve");
  CHECK(manifest["seed"] == 4);
  CHECK(manifest["options"]["p"] == 3);
  REQUIRE(run("--config \"" + (kRoot / "solve" / "run.json").string() + "\" " + out("solve2")) == 0);
  for (const char* f : {"solve.csv", "trace.csv", "instance.json", "run.json"})
    CHECK(slurp(kRoot / "solve" / f) == slurp(kRoot / "solve2" / f));

  // The saved instance feeds back in unchanged.
  REQUIRE(run("solve --mixer ng --p 2 --epochs 5 --instance \"" +
              (kRoot / "solve" / "instance.json").string() + "\" " + out("solve3")) == 0);
  CHECK(slurp(kRoot / "solve" / "instance.json") == slurp(kRoot / "solve3" / "instance.json"));
  const Table ng = read_csv(kRoot / "solve3" / "solve.csv");
  CHECK(ng[1][column(ng, "num_params")] == "14");
}

TEST_CASE("solve with every built-in mixer source") {
  for (const char* m : {"fg", "ng", "pg", "ma", "adapt"}) {
    CAPTURE(m);
    REQUIRE(run(std::string("solve --graph ring --p 2 --epochs 5 --mixer ") + m + " " +
                out(std::string("src_") + m)) == 0);
    const Table t = read_csv(kRoot / (std::string("src_") + m) / "solve.csv");
    const int p = std::stoi(t[1][column(t, "p")]), k = std::stoi(t[1][column(t, "K")]);
    CHECK(std::stoi(t[1][column(t, "num_params")]) == p * (1 + k));
  }
}

TEST_CASE("usage and input errors exit with code 2") {
  CHECK(run("solve --task knapsack " + out("e1")) == 2);
  CHECK(run("solve --mixer file:XYXYXX/0-1-2-0-4-4 " + out("e2")) == 2);
  CHECK(run("solve --mixer file:XYX/0-1-2 --n 6 " + out("e3")) == 2);
  CHECK(run("solve --mixer zz " + out("e4")) == 2);
  CHECK(run("solve --mixer mgnet " + out("e5")) == 2);
  CHECK(run("gen-data --task knapsack " + out("e6")) == 2);
  CHECK(run("train --data \"" + (kRoot / "nowhere").string() + "\" " + out("e7")) == 2);
  CHECK(run("--config \"" + (kRoot / "nowhere.json").string() + "\" " + out("e8")) == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("solve --p notanumber") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("ratio is unavailable beyond the exact oracle") {
  REQUIRE(run("solve --task tfim --n 17 --p 1 --epochs 1 " + out("big")) == 0);
  const Table t = read_csv(kRoot / "big" / "solve.csv");
  CHECK(t[1][column(t, "r")] == "unavailable");
  CHECK(std::stod(t[1][column(t, "expectation")]) < 0.0);
}

TEST_CASE("effdim and encode") {
  REQUIRE(run("effdim --graph ring --n 6 --mixers XYXYXX/0-1-2-0-3-3 " + out("eff")) == 0);
  const Table t = read_csv(kRoot / "eff" / "effdim.csv");
  CHECK(t[0] == std::vector<std::string>{"design", "mixer", "d_eff", "dla_dim"});
  REQUIRE(t.size() == 5u);
  CHECK(t[1][0] == "FG");
  CHECK(t[2][0] == "PG");
  CHECK(t[3][0] == "NG");
  CHECK(t[1][2] == t[2][2]);
  CHECK(std::stoi(t[1][2]) < std::stoi(t[3][2]));
  CHECK(std::stoi(t[1][2]) <= std::stoi(t[1][3]));

  REQUIRE(run("encode --n 6 --mixer XYXYXX/0-1-2-0-3-3 " + out("enc")) == 0);
  const auto problem = nlohmann::json::parse(slurp(kRoot / "enc" / "problem_graph.json"));
  const auto mixer = nlohmann::json::parse(slurp(kRoot / "enc" / "mixer_graph.json"));
  CHECK(problem["directed"] == true);
  CHECK(mixer["directed"] == false);
  CHECK(mixer["nodes"].size() == 6u);
}

TEST_CASE("gen-data, two-stage training, generation and baselines") {
  const std::string data_dir = (kRoot / "data" / "dataset").string();
  REQUIRE(run("gen-data --n 4 --instances 3 --depths 2 12 --types 2 --groupings 2 --restarts 2 "
              "--epochs 8 --seed 3 " + out("data")) == 0);
  const Table labels = read_csv(kRoot / "data" / "labels.csv");
  CHECK(labels.size() == 1 + 3 * 2 * 2 * 2u);
  REQUIRE(run("--config \"" + (kRoot / "data" / "run.json").string() + "\" " + out("data2")) == 0);
  CHECK(slurp(kRoot / "data" / "labels.csv") == slurp(kRoot / "data2" / "labels.csv"));

  const std::string data = "--data \"" + data_dir + "\" ";
  CHECK(run("train --stage generator " + data + out("t0")) == 2);
  REQUIRE(run("train --stage estimator --estimator-epochs 4 " + data + kSmallNet + " " +
              out("t1")) == 0);
  CHECK(read_csv(kRoot / "t1" / "estimator_loss.csv").size() == 1 + 4u);
  CHECK_FALSE(fs::exists(kRoot / "t1" / "generator.json"));
  const std::string est = "--estimator \"" + (kRoot / "t1" / "estimator.json").string() + "\" ";
  REQUIRE(run("train --stage generator --generator-epochs 3 " + data + est + out("t2")) == 0);
  CHECK(read_csv(kRoot / "t2" / "generator_loss.csv").size() == 1 + 3u);

  REQUIRE(run("train --estimator-epochs 2 --generator-epochs 2 " + data + kSmallNet + " " +
              out("t3")) == 0);
  REQUIRE(run("--config \"" + (kRoot / "t3" / "run.json").string() + "\" " + out("t4")) == 0);
  for (const char* f : {"estimator_loss.csv", "generator_loss.csv", "estimator.json",
                        "generator.json"})
    CHECK(slurp(kRoot / "t3" / f) == slurp(kRoot / "t4" / f));

  const std::string gen = "--generator \"" + (kRoot / "t2" / "generator.json").string() + "\" ";
  REQUIRE(run("generate --n 6 --depths 2 12 " + gen + out("g")) == 0);
  const Table g = read_csv(kRoot / "g" / "generated.csv");
  REQUIRE(g.size() == 3u);
  CHECK(g[1][1].size() == std::string("XXXXXX/0-0-0-0-0-0").size());
  REQUIRE(run("solve --mixer mgnet --p 2 --epochs 5 " + gen + out("gs")) == 0);

  const std::string base =
      "baselines --instances 3 --p 2 --epochs 5 --methods greedy gw fg ng adapt mgnet " + gen;
  REQUIRE(run(base + "--jobs 1 " + out("b1")) == 0);
  REQUIRE(run(base + "--jobs 2 " + out("b2")) == 0);
  CHECK(slurp(kRoot / "b1" / "baselines.csv") == slurp(kRoot / "b2" / "baselines.csv"));
  const Table s = read_csv(kRoot / "b1" / "summary.csv");
  CHECK(s[0] == std::vector<std::string>{"method", "count", "mean_r", "std_r"});
  REQUIRE(s.size() == 7u);
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k][1] == "3");

  // Greedy and GW are Max-Cut only; QAOA methods still report.
  REQUIRE(run("baselines --task tfim --instances 2 --p 2 --epochs 5 --methods greedy fg " +
              out("b3")) == 0);
  const Table tf = read_csv(kRoot / "b3" / "summary.csv");
  CHECK(tf[1][1] == "0");
  CHECK(tf[2][1] == "2");
}
