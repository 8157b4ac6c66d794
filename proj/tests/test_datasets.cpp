#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mixgen/datasets.hpp"

using namespace mixgen;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

DatasetConfig tiny_config() {
  DatasetConfig c;
  c.instances = 2;
  c.depths = {2, 12};
  c.types_per_instance = 2;
  c.groupings_per_type = 2;
  c.label.restarts = 2;
  c.label.optimizer.epochs = 8;
  c.seed = 17;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mixgen_ds_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("weighted 3-regular sampling") {
  Rng rng(1);
  for (int n : {4, 6, 8, 16}) {
    for (int k = 0; k < 20; ++k) {
      const WeightedGraph g = sample_w3r(n, rng);
      CHECK(g.edges.size() == static_cast<std::size_t>(3 * n / 2));
      std::vector<int> deg(static_cast<std::size_t>(n), 0);
      std::set<std::pair<int, int>> seen;
      for (const Edge& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
        CHECK(e.u != e.v);
        CHECK(seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second);
        CHECK(e.w >= 0.0);
        CHECK(e.w < 1.0);
      }
      for (int d : deg) CHECK(d == 3);
    }
  }
  CHECK_THROWS_AS(sample_w3r(5, rng), Error);
  Rng a(9), b(9);
  CHECK(instance_to_json(sample_instance(ProblemKind::MaxCut, 6, a)) ==
        instance_to_json(sample_instance(ProblemKind::MaxCut, 6, b)));
}

TEST_CASE("TFIM sampling") {
  Rng rng(2);
  double mean_h = 0.0;
  const int draws = 2000;
  for (int k = 0; k < draws; ++k) {
    const ProblemInstance t = sample_tfim_1d(6, rng);
    CHECK(t.kind == ProblemKind::TFIM);
    CHECK(t.graph.edges.size() == 6u);
    CHECK(t.h >= 0.1);
    CHECK(t.h <= 2.0);
    for (const Edge& e : t.graph.edges) {
      CHECK(e.w >= 0.5);
      CHECK(e.w <= 1.5);
    }
    mean_h += t.h / draws;
  }
  // U[0.1, 2] has mean 1.05 and standard deviation 0.548.
  CHECK(std::abs(mean_h - 1.05) < 4 * 0.548 / std::sqrt(double(draws)));
  CHECK(sample_tfim_1d(2, rng).graph.edges.size() == 1u);
  CHECK_THROWS_AS(sample_tfim_1d(1, rng), Error);
}

TEST_CASE("instance JSON round trip") {
  Rng rng(3);
  for (ProblemKind kind : {ProblemKind::MaxCut, ProblemKind::TFIM}) {
    const ProblemInstance inst = sample_instance(kind, 6, rng);
    const nlohmann::json j = instance_to_json(inst);
    CHECK(instance_to_json(instance_from_json(j)) == j);
    const fs::path p = scratch("inst.json");
    write_instance_file(p.string(), inst);
    CHECK(instance_to_json(read_instance_file(p.string())) == j);
    fs::remove(p);
  }
  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"n", 3}}), Error);
  CHECK_THROWS_AS(read_instance_file("/nonexistent/instance.json"), Error);
}

TEST_CASE("labels") {
  ProblemInstance edge;
  edge.graph = ring_graph(2);
  const double label = build_label(edge, fg_spec(2), 2, LabelOptions{}, 5);
  CHECK(std::abs(label - -0.5) < 1e-3);
  LabelOptions one;
  one.restarts = 1;
  CHECK(build_label(edge, fg_spec(2), 2, one, 5) >= label);
  one.restarts = 0;
  CHECK_THROWS_AS(build_label(edge, fg_spec(2), 2, one, 5), Error);
}

TEST_CASE("dataset plan") {
  DatasetConfig c = tiny_config();
  const auto plan = plan_dataset(c);
  CHECK(plan.size() == c.record_count());
  CHECK(plan.size() == 2u * 2u * 2u * 2u);
  CHECK(plan[0].mixer == fg_spec(6));
  bool has_ng = false;
  for (const auto& r : plan) has_ng |= r.instance_index == 0 && r.mixer == ng_spec(6);
  CHECK(has_ng);
  std::set<std::uint64_t> seeds;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    CHECK(plan[k].index == k);
    seeds.insert(plan[k].seed);
  }
  CHECK(seeds.size() == plan.size());
  CHECK(DatasetConfig::from_json(c.to_json()).to_json() == c.to_json());
}

TEST_CASE("dataset build is reproducible and resumable") {
  const DatasetConfig c = tiny_config();
  const fs::path a = scratch("a"), b = scratch("b");
  std::size_t calls = 0;
  const DatasetManifest m = build_estimator_dataset(c, a.string(), [&](std::size_t done, std::size_t total) {
    ++calls;
    CHECK(done <= total);
  });
  CHECK(m.complete);
  CHECK(m.offsets.size() == c.record_count());
  CHECK(calls >= 1u);

  DatasetConfig parallel = c;
  parallel.jobs = 2;
  build_estimator_dataset(parallel, b.string());
  CHECK(slurp(a / "records.jsonl") == slurp(b / "records.jsonl"));

  const auto records = load_dataset(a.string());
  REQUIRE(records.size() == c.record_count());
  CHECK(record_to_json(record_from_json(record_to_json(records[3]))) == record_to_json(records[3]));
  const auto batches = group_by_instance(records);
  CHECK(batches.size() == 2u);
  CHECK(batches[0].size() == 8u);
  CHECK(batches[0].labels(0) == records[0].label);

  // Interrupt: keep the first five records, then leave a torn line behind.
  nlohmann::json man;
  std::ifstream(b / "manifest.json") >> man;
  const std::string full = slurp(b / "records.jsonl");
  const auto cut = man["offsets"][5].get<std::uint64_t>();
  man["offsets"] = std::vector<std::uint64_t>(man["offsets"].begin(), man["offsets"].begin() + 5);
  man["complete"] = false;
  std::ofstream(b / "manifest.json") << man.dump();
  {
    std::ofstream out(b / "records.jsonl", std::ios::binary | std::ios::trunc);
    out << full.substr(0, cut) << "{\"torn\":";
  }
  const DatasetManifest resumed = build_estimator_dataset(c, b.string());
  CHECK(resumed.complete);
  CHECK(slurp(b / "records.jsonl") == full);

  // A corrupted offset is detected on load.
  std::ifstream(b / "manifest.json") >> man;
  man["offsets"][2] = man["offsets"][2].get<std::uint64_t>() + 3;
  std::ofstream(b / "manifest.json") << man.dump();
  CHECK_THROWS_AS(load_dataset(b.string()), Error);
  CHECK_THROWS_AS(read_manifest((a / "missing").string()), Error);

  fs::remove_all(a);
  fs::remove_all(b);
}
