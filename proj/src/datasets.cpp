#include "mixgen/datasets.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace mixgen {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Seed streams.
constexpr std::uint64_t kInstanceStream = 1;
constexpr std::uint64_t kMixerStream = 2;
constexpr std::uint64_t kLabelStream = 3;

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[uniform_index(rng, k)]);
}

}  // namespace

WeightedGraph sample_w3r(int n, Rng& rng) {
  if (n < 4 || n % 2 != 0)
    throw Error(ErrorKind::Input, "3-regular graphs need an even n >= 4, got " + std::to_string(n));
  std::vector<int> points(static_cast<std::size_t>(3 * n));
  for (;;) {
    for (int i = 0; i < 3 * n; ++i) points[i] = i / 3;
    shuffle(points, rng);
    std::set<std::pair<int, int>> edges;
    bool simple = true;
    for (std::size_t k = 0; k < points.size() && simple; k += 2) {
      const int u = std::min(points[k], points[k + 1]);
      const int v = std::max(points[k], points[k + 1]);
      simple = u != v && edges.emplace(u, v).second;
    }
    if (!simple) continue;
    WeightedGraph g;
    g.n = n;
    for (const auto& [u, v] : edges) g.edges.push_back({u, v, uniform01(rng)});
    return g;
  }
}

ProblemInstance sample_tfim_1d(int n, Rng& rng) {
  if (n < 2) throw Error(ErrorKind::Input, "TFIM ring needs n >= 2");
  std::vector<double> j(static_cast<std::size_t>(n == 2 ? 1 : n));
  for (double& c : j) c = uniform(rng, 0.5, 1.5);
  return make_tfim_ring(j, uniform(rng, 0.1, 2.0));
}

ProblemInstance sample_instance(ProblemKind kind, int n, Rng& rng) {
  if (kind == ProblemKind::TFIM) return sample_tfim_1d(n, rng);
  ProblemInstance inst;
  inst.kind = ProblemKind::MaxCut;
  inst.graph = sample_w3r(n, rng);
  return inst;
}

// ---------------------------------------------------------------------------
// Instance JSON

json instance_to_json(const ProblemInstance& instance) {
  json edges = json::array();
  for (const Edge& e : instance.graph.edges) edges.push_back({e.u, e.v, e.w});
  json j = {{"n", instance.graph.n}, {"edges", edges}, {"kind", to_string(instance.kind)}};
  if (instance.kind == ProblemKind::TFIM) {
    j["h"] = instance.h;
    json couplings = json::array();
    for (const Edge& e : instance.graph.edges) couplings.push_back(e.w);
    j["J"] = couplings;
  }
  return j;
}

ProblemInstance instance_from_json(const json& j) {
  try {
    ProblemInstance inst;
    inst.kind = problem_kind_from_string(j.value("kind", std::string("maxcut")));
    inst.graph.n = j.at("n").get<int>();
    if (inst.kind == ProblemKind::TFIM && j.contains("J") && !j.contains("edges")) {
      inst = make_tfim_ring(j.at("J").get<std::vector<double>>(), j.value("h", 0.0));
      return inst;
    }
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3)
        throw Error(ErrorKind::Input, "edges must be [i, j] or [i, j, w]");
      inst.graph.edges.push_back(
          {e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    if (inst.kind == ProblemKind::TFIM) {
      inst.h = j.value("h", 0.0);
      if (j.contains("J")) {
        const auto couplings = j.at("J").get<std::vector<double>>();
        if (couplings.size() != inst.graph.edges.size())
          throw Error(ErrorKind::Input, "J must list one coupling per ring edge");
        for (std::size_t k = 0; k < couplings.size(); ++k) inst.graph.edges[k].w = couplings[k];
      }
    }
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, std::string("malformed instance JSON: ") + e.what());
  }
}

ProblemInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cannot open instance file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, path + ": " + e.what());
  }
  return instance_from_json(j);
}

void write_instance_file(const std::string& path, const ProblemInstance& instance) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Input, "cannot write " + path);
  out << instance_to_json(instance).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Labels

double build_label(const ProblemInstance& instance, const MixerSpec& mixer, int p,
                   const LabelOptions& options, std::uint64_t seed) {
  if (options.restarts < 1) throw Error(ErrorKind::Input, "restarts must be >= 1");
  const CircuitSpec circuit(cost_hamiltonian(instance), mixer, p);
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r)
    best = std::min(best, optimize(circuit, derive_seed(seed, static_cast<std::uint64_t>(r)),
                                   options.optimizer)
                              .best_loss);
  return best;
}

// ---------------------------------------------------------------------------
// Dataset configuration and plan

std::size_t DatasetConfig::record_count() const {
  return static_cast<std::size_t>(instances) * types_per_instance * groupings_per_type *
         depths.size();
}

json DatasetConfig::to_json() const {
  return {{"task", to_string(kind)},
          {"instances", instances},
          {"n", n},
          {"depths", depths},
          {"types_per_instance", types_per_instance},
          {"groupings_per_type", groupings_per_type},
          {"restarts", label.restarts},
          {"epochs", label.optimizer.epochs},
          {"lr", label.optimizer.lr},
          {"seed", seed}};
}

DatasetConfig DatasetConfig::from_json(const json& j) {
  DatasetConfig c;
  c.kind = problem_kind_from_string(j.at("task").get<std::string>());
  c.instances = j.at("instances").get<int>();
  c.n = j.at("n").get<int>();
  c.depths = j.at("depths").get<std::vector<int>>();
  c.types_per_instance = j.at("types_per_instance").get<int>();
  c.groupings_per_type = j.at("groupings_per_type").get<int>();
  c.label.restarts = j.at("restarts").get<int>();
  c.label.optimizer.epochs = j.at("epochs").get<int>();
  c.label.optimizer.lr = j.at("lr").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::vector<DatasetRecord> plan_dataset(const DatasetConfig& config) {
  const int n = config.n;
  if (config.instances < 1 || config.types_per_instance < 1 || config.groupings_per_type < 1 ||
      config.depths.empty())
    throw Error(ErrorKind::Input, "dataset sizes must be positive");
  for (int p : config.depths)
    if (p < 1) throw Error(ErrorKind::Input, "depths must be >= 1");
  if (config.types_per_instance > (1 << std::min(n, 20)))
    throw Error(ErrorKind::Input, "more type strings requested than exist");
  const std::vector<Rgs> pool = grouping_pool(n);
  if (static_cast<std::size_t>(config.groupings_per_type) > pool.size())
    throw Error(ErrorKind::Input, "more groupings requested than the pool holds");

  std::vector<DatasetRecord> plan;
  plan.reserve(config.record_count());
  for (int i = 0; i < config.instances; ++i) {
    Rng inst_rng(derive_seed(config.seed, kInstanceStream, static_cast<std::uint64_t>(i)));
    const ProblemInstance instance = sample_instance(config.kind, n, inst_rng);
    Rng mix_rng(derive_seed(config.seed, kMixerStream, static_cast<std::uint64_t>(i)));

    std::vector<std::vector<PauliType>> types{std::vector<PauliType>(n, PauliType::X)};
    std::set<std::vector<PauliType>> seen_types(types.begin(), types.end());
    while (static_cast<int>(types.size()) < config.types_per_instance) {
      std::vector<PauliType> t(static_cast<std::size_t>(n));
      for (PauliType& x : t) x = uniform_index(mix_rng, 2) ? PauliType::Y : PauliType::X;
      if (seen_types.insert(t).second) types.push_back(t);
    }
    for (std::size_t ti = 0; ti < types.size(); ++ti) {
      std::vector<Rgs> groupings;
      std::set<Rgs> seen;
      if (ti == 0) {
        for (const Rgs& anchor : {fg_spec(n).groups, ng_spec(n).groups})
          if (static_cast<int>(groupings.size()) < config.groupings_per_type &&
              seen.insert(anchor).second)
            groupings.push_back(anchor);
      }
      while (static_cast<int>(groupings.size()) < config.groupings_per_type) {
        const Rgs& g = pool[uniform_index(mix_rng, pool.size())];
        if (seen.insert(g).second) groupings.push_back(g);
      }
      for (const Rgs& g : groupings)
        for (int p : config.depths) {
          DatasetRecord r;
          r.index = plan.size();
          r.instance_index = static_cast<std::size_t>(i);
          r.instance = instance;
          r.mixer = {types[ti], g};
          r.p = p;
          r.seed = derive_seed(config.seed, kLabelStream, r.index);
          plan.push_back(std::move(r));
        }
    }
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Records and manifest

json record_to_json(const DatasetRecord& r) {
  return {{"index", r.index},         {"instance_index", r.instance_index},
          {"instance", instance_to_json(r.instance)}, {"mixer", format_mixer(r.mixer)},
          {"p", r.p},                 {"label", r.label},
          {"seeds", json::array({r.seed})}};
}

DatasetRecord record_from_json(const json& j) {
  try {
    DatasetRecord r;
    r.index = j.at("index").get<std::size_t>();
    r.instance_index = j.at("instance_index").get<std::size_t>();
    r.instance = instance_from_json(j.at("instance"));
    r.mixer = parse_mixer(j.at("mixer").get<std::string>());
    r.p = j.at("p").get<int>();
    r.label = j.at("label").get<double>();
    r.seed = j.at("seeds").at(0).get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, std::string("malformed dataset record: ") + e.what());
  }
}

namespace {

json manifest_to_json(const DatasetManifest& m) {
  return {{"schema_version", m.schema_version},
          {"config", m.config.to_json()},
          {"record_count", m.config.record_count()},
          {"records_file", m.records_file},
          {"offsets", m.offsets},
          {"complete", m.complete}};
}

void write_manifest(const std::string& dir, const DatasetManifest& m) {
  const fs::path tmp = fs::path(dir) / "manifest.json.tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::Input, "cannot write manifest in " + dir);
    out << manifest_to_json(m).dump(2) << '\n';
  }
  fs::rename(tmp, fs::path(dir) / "manifest.json");
}

}  // namespace

DatasetManifest read_manifest(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw Error(ErrorKind::Input, "no dataset manifest in " + dir);
  try {
    json j;
    in >> j;
    DatasetManifest m;
    m.schema_version = j.at("schema_version").get<int>();
    if (m.schema_version != kDatasetSchemaVersion)
      throw Error(ErrorKind::Input, "unsupported dataset schema version " +
                                        std::to_string(m.schema_version));
    m.config = DatasetConfig::from_json(j.at("config"));
    m.records_file = j.at("records_file").get<std::string>();
    m.offsets = j.at("offsets").get<std::vector<std::uint64_t>>();
    m.complete = j.at("complete").get<bool>();
    if (j.at("record_count").get<std::size_t>() != m.config.record_count() ||
        m.offsets.size() > m.config.record_count())
      throw Error(ErrorKind::Input, "dataset manifest counts are inconsistent");
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, "malformed dataset manifest: " + std::string(e.what()));
  }
}

DatasetManifest build_estimator_dataset(
    const DatasetConfig& config, const std::string& dir,
    const std::function<void(std::size_t, std::size_t)>& progress) {
  std::vector<DatasetRecord> plan = plan_dataset(config);
  fs::create_directories(dir);
  const fs::path records_path = fs::path(dir) / "records.jsonl";

  DatasetManifest manifest;
  manifest.config = config;
  if (fs::exists(fs::path(dir) / "manifest.json")) {
    DatasetManifest old = read_manifest(dir);
    if (old.config.to_json() == config.to_json()) manifest = old;
  }
  // Drop anything past the last recorded record (an interrupted append).
  std::uint64_t end = 0;
  if (!manifest.offsets.empty()) {
    std::ifstream in(records_path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "manifest lists records but " +
                                               records_path.string() + " is missing");
    in.seekg(static_cast<std::streamoff>(manifest.offsets.back()));
    std::string line;
    if (!std::getline(in, line))
      throw Error(ErrorKind::Input, "last manifest offset does not resolve");
    end = manifest.offsets.back() + line.size() + 1;
  }
  if (fs::exists(records_path))
    fs::resize_file(records_path, end);
  else
    std::ofstream(records_path, std::ios::binary);
  manifest.complete = false;

  const std::size_t total = plan.size();
  const int jobs = std::max(1, config.jobs);
  const std::size_t chunk = static_cast<std::size_t>(jobs) * 8;
  std::size_t done = manifest.offsets.size();
  std::ofstream out(records_path, std::ios::binary | std::ios::app);
  while (done < total) {
    const std::size_t stop = std::min(total, done + chunk);
    std::atomic<std::size_t> next{done};
    std::vector<std::string> failures(static_cast<std::size_t>(jobs));
    auto worker = [&](int w) {
      for (std::size_t k; (k = next++) < stop;) {
        try {
          DatasetRecord& r = plan[k];
          r.label = build_label(r.instance, r.mixer, r.p, config.label, r.seed);
        } catch (const std::exception& e) {
          failures[w] = "record " + std::to_string(k) + ": " + e.what();
          next = stop;
        }
      }
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < jobs; ++w) threads.emplace_back(worker, w);
    worker(0);
    for (std::thread& t : threads) t.join();
    for (const std::string& f : failures)
      if (!f.empty()) throw Error(ErrorKind::Numeric, "dataset label failed at " + f);

    for (std::size_t k = done; k < stop; ++k) {
      manifest.offsets.push_back(end);
      const std::string line = record_to_json(plan[k]).dump() + "\n";
      out << line;
      end += line.size();
    }
    out.flush();
    if (!out) throw Error(ErrorKind::Input, "write failed for " + records_path.string());
    done = stop;
    write_manifest(dir, manifest);
    if (progress) progress(done, total);
  }
  manifest.complete = true;
  write_manifest(dir, manifest);
  return manifest;
}

std::vector<DatasetRecord> load_dataset(const std::string& dir) {
  const DatasetManifest m = read_manifest(dir);
  std::ifstream in(fs::path(dir) / m.records_file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "dataset records file missing in " + dir);
  std::vector<DatasetRecord> out;
  std::uint64_t pos = 0;
  std::string line;
  while (out.size() < m.offsets.size() && std::getline(in, line)) {
    if (pos != m.offsets[out.size()])
      throw Error(ErrorKind::Input, "dataset offset mismatch at record " +
                                        std::to_string(out.size()));
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Input, "record " + std::to_string(out.size()) + ": " + e.what());
    }
    pos += line.size() + 1;
  }
  if (out.size() != m.offsets.size())
    throw Error(ErrorKind::Input, "dataset records file is shorter than its manifest");
  return out;
}

std::vector<EstimatorBatch> group_by_instance(const std::vector<DatasetRecord>& records) {
  std::vector<EstimatorBatch> batches;
  std::vector<std::size_t> ids;
  std::vector<std::vector<double>> labels;
  for (const DatasetRecord& r : records) {
    auto it = std::find(ids.begin(), ids.end(), r.instance_index);
    std::size_t b = static_cast<std::size_t>(it - ids.begin());
    if (it == ids.end()) {
      ids.push_back(r.instance_index);
      batches.push_back({encode_problem(r.instance), {}, {}, {}});
      labels.emplace_back();
    }
    batches[b].mixers.push_back(r.mixer);
    batches[b].depths.push_back(r.p);
    labels[b].push_back(r.label);
  }
  for (std::size_t b = 0; b < batches.size(); ++b)
    batches[b].labels = Eigen::Map<const Eigen::VectorXd>(labels[b].data(),
                                                          static_cast<Eigen::Index>(labels[b].size()));
  return batches;
}

}  // namespace mixgen
