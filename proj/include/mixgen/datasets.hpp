#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixgen/common.hpp"
#include "mixgen/mgnet.hpp"
#include "mixgen/mixer.hpp"
#include "mixgen/problems.hpp"
#include "mixgen/simulator.hpp"

namespace mixgen {

/// Random 3-regular simple graph (pairing model with rejection), weights
/// i.i.d. U[0, 1].
WeightedGraph sample_w3r(int n, Rng& rng);
/// Ring TFIM with J ~ U[0.5, 1.5] per edge and a shared h ~ U[0.1, 2].
ProblemInstance sample_tfim_1d(int n, Rng& rng);
ProblemInstance sample_instance(ProblemKind kind, int n, Rng& rng);

/// `{n, edges: [[i, j, w], ...], kind, h, J}`; J lists the ring couplings of
/// a TFIM instance.
nlohmann::json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& j);
ProblemInstance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const ProblemInstance& instance);

struct LabelOptions {
  int restarts = 10;
  OptimizeOptions optimizer;
};

/// Minimum over restarts of the best loss reached by optimize(); restart r
/// starts from derive_seed(seed, r).
double build_label(const ProblemInstance& instance, const MixerSpec& mixer, int p,
                   const LabelOptions& options, std::uint64_t seed);

inline constexpr int kDatasetSchemaVersion = 1;

struct DatasetConfig {
  ProblemKind kind = ProblemKind::MaxCut;
  int instances = 100;
  int n = 6;
  std::vector<int> depths = {2, 12, 22, 42, 62, 82, 92};
  int types_per_instance = 4;
  int groupings_per_type = 5;
  LabelOptions label;
  std::uint64_t seed = 0;
  int jobs = 1;

  std::size_t record_count() const;
  nlohmann::json to_json() const;
  static DatasetConfig from_json(const nlohmann::json& j);
};

struct DatasetRecord {
  std::size_t index = 0;
  std::size_t instance_index = 0;
  ProblemInstance instance;
  MixerSpec mixer;
  int p = 1;
  double label = 0.0;
  std::uint64_t seed = 0;
};

/// The (instance, mixer, depth) triples a config expands to, labels unset.
/// Instance i draws from derive_seed(seed, 1, i); its mixers from
/// derive_seed(seed, 2, i). The first type string is all-X and its groupings
/// always include FG and NG.
std::vector<DatasetRecord> plan_dataset(const DatasetConfig& config);

struct DatasetManifest {
  int schema_version = kDatasetSchemaVersion;
  DatasetConfig config;
  std::string records_file = "records.jsonl";
  std::vector<std::uint64_t> offsets;  // byte offset of each written record
  bool complete = false;
};

nlohmann::json record_to_json(const DatasetRecord& record);
DatasetRecord record_from_json(const nlohmann::json& j);

/// Writes `dir/records.jsonl` and `dir/manifest.json`. A partial dataset
/// with the same config resumes after its last recorded offset.
DatasetManifest build_estimator_dataset(
    const DatasetConfig& config, const std::string& dir,
    const std::function<void(std::size_t done, std::size_t total)>& progress = {});

DatasetManifest read_manifest(const std::string& dir);
/// Loads every record; offsets are checked against the file.
std::vector<DatasetRecord> load_dataset(const std::string& dir);

/// One estimator batch per instance, in first-seen order.
std::vector<EstimatorBatch> group_by_instance(const std::vector<DatasetRecord>& records);

}  // namespace mixgen
