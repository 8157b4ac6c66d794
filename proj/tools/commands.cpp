#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include "mixgen/datasets.hpp"
#include "mixgen/mgnet.hpp"
#include "mixgen/mixer.hpp"
#include "mixgen/pauli.hpp"
#include "mixgen/problems.hpp"
#include "mixgen/simulator.hpp"

namespace mixgen::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Seed streams for the pieces of a run.
enum : std::uint64_t {
  kInstanceStream = 0x10,
  kRestartStream = 0x11,
  kBaselineInstance = 0x20,
  kBaselineMethod = 0x21,
  kEstimatorInit = 0x51,
  kEstimatorTrain = 0x52,
  kGeneratorInit = 0x53,
  kGeneratorTrain = 0x54,
};

/// Shortest round-trip decimal form, identical on every run.
std::string num(double x) {
  if (std::isnan(x)) return "NA";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(ErrorKind::Input, "cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Input, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string join(const std::vector<int>& xs, char sep) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(xs[k]);
  return s;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::Usage, message);
}

ProblemInstance resolve_instance(const InstanceSource& src, std::uint64_t seed) {
  if (!src.instance.empty()) return read_instance_file(src.instance);
  const ProblemKind kind = problem_kind_from_string(src.task);
  require(src.n >= 2, "--n must be at least 2");
  Rng rng(derive_seed(seed, kInstanceStream));
  if (kind == ProblemKind::TFIM) return sample_tfim_1d(src.n, rng);
  ProblemInstance inst;
  if (src.graph == "w3r") inst.graph = sample_w3r(src.n, rng);
  else if (src.graph == "ring") inst.graph = ring_graph(src.n);
  else if (src.graph == "path") inst.graph = path_graph(src.n);
  else if (src.graph == "complete") inst.graph = complete_graph(src.n);
  else throw Error(ErrorKind::Usage, "unknown graph '" + src.graph + "' (w3r|ring|path|complete)");
  return inst;
}

/// Optimum, or NaN when no exact oracle fits.
double try_optimum(const ProblemInstance& inst) {
  try {
    return optimal_value(inst);
  } catch (const CapacityError& e) {
    std::cerr << "note: " << e.what() << "; ratio unavailable\n";
    return std::nan("");
  }
}

double ratio_or_nan(const ProblemInstance& inst, double expectation, double optimum) {
  return std::isnan(optimum) ? optimum : approximation_ratio(inst, expectation, optimum);
}

struct Best {
  OptimizeReport report;
  int restart = 0;
};

/// Lowest best_loss over restarts; restart r seeds from derive_seed(seed, r).
Best optimize_restarts(const CircuitSpec& circuit, int restarts, std::uint64_t seed,
                       const OptimizeOptions& opts, std::vector<OptimizeReport>* all = nullptr) {
  require(restarts >= 1, "--restarts must be at least 1");
  Best best;
  for (int r = 0; r < restarts; ++r) {
    OptimizeReport rep = optimize(circuit, derive_seed(seed, static_cast<std::uint64_t>(r)), opts);
    if (all) all->push_back(rep);
    if (r == 0 || rep.best_loss < best.report.best_loss) best = {std::move(rep), r};
  }
  return best;
}

AnsatzDesign design_for(const PauliSum& cost, const MixerSpec& spec) {
  AnsatzDesign d{{cost}, DesignLabel::Custom};
  const int n = spec.num_qubits();
  for (const auto& members : spec.group_members()) {
    PauliSum h(n);
    for (int q : members) h.add(PauliTerm::single(n, q, to_char(spec.types[q])));
    d.generators.push_back(std::move(h));
  }
  return d;
}

json graph_json(const EncodedGraph& g) {
  static const char* roles[] = {"input", "gate", "output", "operator"};
  json nodes = json::array();
  for (int i = 0; i < g.node_count(); ++i) {
    std::vector<double> f(g.features.cols());
    for (Eigen::Index c = 0; c < g.features.cols(); ++c) f[c] = g.features(i, c);
    nodes.push_back({{"role", roles[static_cast<int>(g.roles[i])]}, {"features", f}});
  }
  json arcs = json::array();
  for (const auto& a : g.arcs) arcs.push_back({a.from, a.to, a.weight});
  return {{"directed", g.directed}, {"nodes", nodes}, {"arcs", arcs},
          {"output_nodes", g.output_nodes}};
}

/// Runs f(i) for i in [0, count) on `jobs` threads; the first failure is
/// rethrown after all threads stop.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex lock;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(lock);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < std::max(1, jobs); ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------

json cmd_gen_data(const GenDataOptions& o, const Globals& g) {
  DatasetConfig c;
  c.kind = problem_kind_from_string(o.task);
  c.n = o.n;
  c.instances = o.instances;
  c.depths = o.depths;
  c.types_per_instance = o.types;
  c.groupings_per_type = o.groupings;
  c.label.restarts = o.restarts;
  c.label.optimizer.epochs = o.epochs;
  c.label.optimizer.lr = o.lr;
  c.seed = g.seed;
  c.jobs = g.jobs;
  const fs::path dir = fs::path(g.out) / "dataset";
  build_estimator_dataset(c, dir.string(), [](std::size_t done, std::size_t total) {
    std::cerr << "gen-data: " << done << "/" << total << " records\n";
  });
  Csv csv(fs::path(g.out) / "labels.csv", {"index", "instance", "mixer", "p", "label"});
  for (const DatasetRecord& r : load_dataset(dir.string()))
    csv.row({std::to_string(r.index), std::to_string(r.instance_index), format_mixer(r.mixer),
             std::to_string(r.p), num(r.label)});
  return {{"dataset", "dataset/manifest.json"}};
}

json cmd_train(const TrainOptions& o, const Globals& g) {
  require(o.stage == "both" || o.stage == "estimator" || o.stage == "generator",
          "--stage must be both, estimator or generator");
  require(!o.data.empty(), "train needs --data pointing at a gen-data dataset directory");
  if (!fs::exists(fs::path(o.data) / "manifest.json"))
    throw Error(ErrorKind::Usage, "no dataset manifest under " + o.data);
  if (o.stage == "generator")
    require(!o.estimator.empty(),
            "stage generator needs a trained estimator checkpoint (--estimator)");

  const DatasetManifest manifest = read_manifest(o.data);
  const std::vector<EstimatorBatch> batches = group_by_instance(load_dataset(o.data));
  NetworkConfig net;
  net.hidden = o.hidden;
  net.depth_dim = o.depth_dim;
  net.head = o.head;
  const fs::path out(g.out);

  std::optional<CostEstimator> estimator;
  if (o.stage == "generator") {
    estimator = load_estimator(o.estimator);
  } else {
    estimator.emplace(net, derive_seed(g.seed, kEstimatorInit));
    EstimatorTrainOptions eo;
    eo.epochs = o.estimator_epochs;
    eo.lr = o.estimator_lr;
    eo.lambda_e = o.lambda_e;
    eo.lambda_r = o.lambda_r;
    eo.seed = derive_seed(g.seed, kEstimatorTrain);
    eo.on_epoch = [&](int e, double loss) {
      std::cerr << "estimator epoch " << e + 1 << "/" << o.estimator_epochs << " loss " << loss
                << "\n";
    };
    const TrainReport rep = train_estimator(*estimator, batches, eo);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    Csv csv(out / "estimator_loss.csv", {"epoch", "loss"});
    for (std::size_t e = 0; e < rep.loss_trace.size(); ++e)
      csv.row({std::to_string(e + 1), num(rep.loss_trace[e])});
    save_checkpoint((out / "estimator.json").string(), *estimator);
  }
  if (o.stage == "estimator") return {{"estimator", "estimator.json"}};

  MixerGenerator generator(estimator->config, derive_seed(g.seed, kGeneratorInit));
  std::vector<EncodedGraph> problems;
  for (const auto& b : batches) problems.push_back(b.problem);
  GeneratorTrainOptions go;
  go.epochs = o.generator_epochs;
  go.lr = o.generator_lr;
  go.tau = o.tau;
  go.seed = derive_seed(g.seed, kGeneratorTrain);
  go.on_epoch = [&](int e, double loss) {
    std::cerr << "generator epoch " << e + 1 << "/" << o.generator_epochs << " objective "
              << loss << "\n";
  };
  const std::vector<int> depths =
      o.generator_depths.empty() ? manifest.config.depths : o.generator_depths;
  const TrainReport rep = train_generator(generator, *estimator, problems, depths, go);
  Csv csv(out / "generator_loss.csv", {"epoch", "loss"});
  for (std::size_t e = 0; e < rep.loss_trace.size(); ++e)
    csv.row({std::to_string(e + 1), num(rep.loss_trace[e])});
  save_checkpoint((out / "generator.json").string(), generator);
  json files = {{"generator", "generator.json"}};
  if (o.stage == "both") files["estimator"] = "estimator.json";
  return files;
}

json cmd_solve(const SolveOptions& o, const Globals& g) {
  require(o.p >= 1, "--p must be at least 1");
  const ProblemInstance inst = resolve_instance(o.source, g.seed);
  write_instance_file((fs::path(g.out) / "instance.json").string(), inst);
  const PauliSum cost = cost_hamiltonian(inst);
  const int n = inst.num_qubits();
  OptimizeOptions opts;
  opts.epochs = o.epochs;
  opts.lr = o.lr;
  const std::uint64_t seed = derive_seed(g.seed, kRestartStream);

  std::string mixer_text;
  std::optional<CircuitSpec> circuit;
  std::vector<OptimizeReport> runs;
  Best best;
  if (o.mixer == "adapt") {
    AdaptOptions ao;
    ao.max_depth = o.p;
    ao.optimizer = opts;
    ao.seed = seed;
    AdaptResult res = adapt_qaoa(inst, adapt_default_pool(n), ao);
    mixer_text = "adapt:" + join(res.selected, '-');
    circuit = res.circuit;
    runs.push_back(res.report);
    best = {res.report, 0};
  } else {
    MixerSpec spec;
    if (o.mixer == "fg") spec = fg_spec(n);
    else if (o.mixer == "ng") spec = ng_spec(n);
    else if (o.mixer == "ma") spec = ma_qaoa_spec(n);
    else if (o.mixer == "pg") spec = pg_spec(inst.graph);
    else if (o.mixer.rfind("file:", 0) == 0) spec = parse_mixer(o.mixer.substr(5));
    else if (o.mixer == "mgnet") {
      require(!o.generator.empty(), "--mixer mgnet needs --generator CHECKPOINT");
      MixerGenerator gen = load_generator(o.generator);
      spec = generate_mixer(gen, encode_problem(inst), o.p);
    } else {
      throw Error(ErrorKind::Usage, "unknown mixer source '" + o.mixer +
                                        "' (fg|ng|pg|ma|adapt|file:SPEC|mgnet)");
    }
    if (spec.num_qubits() != n)
      throw Error(ErrorKind::Input, "mixer covers " + std::to_string(spec.num_qubits()) +
                                        " qubits but the instance has " + std::to_string(n));
    mixer_text = format_mixer(spec);
    circuit.emplace(cost, spec, o.p);
    best = optimize_restarts(*circuit, o.restarts, seed, opts, &runs);
  }

  const double optimum = try_optimum(inst);
  const double r = ratio_or_nan(inst, best.report.best_loss, optimum);
  const std::size_t k = circuit->parameter_count() / static_cast<std::size_t>(circuit->depth()) - 1;
  Csv csv(fs::path(g.out) / "solve.csv", {"task", "n", "source", "mixer", "p", "K", "num_params",
                                          "best_restart", "expectation", "optimum", "r"});
  csv.row({to_string(inst.kind), std::to_string(n), o.mixer.rfind("file:", 0) == 0 ? "file" : o.mixer,
           mixer_text, std::to_string(circuit->depth()), std::to_string(k),
           std::to_string(circuit->parameter_count()), std::to_string(best.restart),
           num(best.report.best_loss), std::isnan(optimum) ? "unavailable" : num(optimum),
           std::isnan(r) ? "unavailable" : num(r)});
  Csv trace(fs::path(g.out) / "trace.csv", {"restart", "epoch", "loss", "grad_norm"});
  for (std::size_t run = 0; run < runs.size(); ++run)
    for (std::size_t e = 0; e < runs[run].loss_trace.size(); ++e)
      trace.row({std::to_string(run), std::to_string(e + 1), num(runs[run].loss_trace[e]),
                 num(runs[run].grad_norm_trace[e])});
  std::cout << "mixer " << mixer_text << "  p " << circuit->depth() << "  #P "
            << circuit->parameter_count() << "  <H> " << num(best.report.best_loss) << "  r "
            << (std::isnan(r) ? "unavailable" : num(r)) << "\n";
  return {{"mixer", mixer_text}};
}

json cmd_effdim(const EffdimOptions& o, const Globals& g) {
  const ProblemInstance inst = resolve_instance(o.source, g.seed);
  write_instance_file((fs::path(g.out) / "instance.json").string(), inst);
  const PauliSum cost = cost_hamiltonian(inst);
  const int n = inst.num_qubits();
  const Eigen::VectorXcd psi0 = StateVector::plus(n).amplitudes();

  struct Row {
    std::string design, mixer;
    AnsatzDesign ansatz;
  };
  std::vector<Row> rows{{"FG", format_mixer(fg_spec(n)), fg_design(cost)}};
  if (inst.kind == ProblemKind::MaxCut)
    rows.push_back({"PG", format_mixer(pg_spec(inst.graph)), pg_design(inst.graph)});
  rows.push_back({"NG", format_mixer(ng_spec(n)), ng_design(cost)});
  for (const std::string& text : o.mixers) {
    const MixerSpec spec = parse_mixer(text);
    rows.push_back({"custom", format_mixer(spec), design_for(cost, spec)});
  }
  Csv csv(fs::path(g.out) / "effdim.csv", {"design", "mixer", "d_eff", "dla_dim"});
  for (const Row& r : rows) {
    const std::size_t deff = effective_dimension(r.ansatz, psi0);
    std::string dla;
    try {
      dla = std::to_string(dla_dimension(r.ansatz, static_cast<std::size_t>(o.dla_cap)));
    } catch (const CapacityError& e) {
      std::cerr << "note: " << r.design << " DLA exceeds " << o.dla_cap << "\n";
      dla = ">" + std::to_string(o.dla_cap);
    }
    csv.row({r.design, r.mixer, std::to_string(deff), dla});
  }
  return json::object();
}

json cmd_baselines(const BaselinesOptions& o, const Globals& g) {
  const ProblemKind kind = problem_kind_from_string(o.task);
  require(o.instances >= 1 && o.p >= 1, "--instances and --p must be positive");
  static const std::vector<std::string> known = {"greedy", "gw", "fg", "ng", "ma", "pg", "adapt",
                                                 "mgnet"};
  for (const std::string& m : o.methods)
    require(std::find(known.begin(), known.end(), m) != known.end(),
            "unknown method '" + m + "' (greedy|gw|fg|ng|ma|pg|adapt|mgnet)");
  std::optional<MixerGenerator> generator;
  if (std::find(o.methods.begin(), o.methods.end(), "mgnet") != o.methods.end()) {
    require(!o.generator.empty(), "method mgnet needs --generator CHECKPOINT");
    generator = load_generator(o.generator);
  }
  OptimizeOptions opts;
  opts.epochs = o.epochs;
  opts.lr = o.lr;

  const std::size_t count = static_cast<std::size_t>(o.instances);
  const std::size_t methods = o.methods.size();
  std::vector<double> ratio(count * methods, std::nan("")), energy(count * methods, std::nan(""));
  std::mutex log;
  parallel_for(count, generator ? 1 : g.jobs, [&](std::size_t i) {
    Rng rng(derive_seed(g.seed, kBaselineInstance, i));
    const ProblemInstance inst = sample_instance(kind, o.n, rng);
    const double optimum = try_optimum(inst);
    const PauliSum cost = cost_hamiltonian(inst);
    for (std::size_t m = 0; m < methods; ++m) {
      const std::string& name = o.methods[m];
      const std::uint64_t seed = derive_seed(derive_seed(g.seed, kBaselineMethod, i), m);
      try {
        double e = std::nan("");
        if (name == "greedy" || name == "gw") {
          if (kind != ProblemKind::MaxCut)
            throw Error(ErrorKind::Unsupported, name + " applies to Max-Cut only");
          Solution s;
          if (name == "greedy") {
            s = greedy_maxcut(inst.graph);
          } else {
            Rng r(seed);
            GwOptions gw;
            gw.rounds = o.gw_rounds;
            s = gw_maxcut(inst.graph, r, gw);
          }
          ratio[i * methods + m] = std::isnan(optimum) ? optimum : s.value / optimum;
          continue;
        }
        if (name == "adapt") {
          AdaptOptions ao;
          ao.max_depth = o.p;
          ao.optimizer = opts;
          ao.seed = seed;
          e = adapt_qaoa(inst, adapt_default_pool(o.n), ao).report.best_loss;
        } else {
          MixerSpec spec;
          if (name == "fg") spec = fg_spec(o.n);
          else if (name == "ng") spec = ng_spec(o.n);
          else if (name == "ma") spec = ma_qaoa_spec(o.n);
          else if (name == "pg") spec = pg_spec(inst.graph);
          else spec = generate_mixer(*generator, encode_problem(inst), o.p);
          e = optimize_restarts(CircuitSpec(cost, spec, o.p), o.restarts, seed, opts)
                  .report.best_loss;
        }
        energy[i * methods + m] = e;
        ratio[i * methods + m] = ratio_or_nan(inst, e, optimum);
      } catch (const Error& err) {
        std::lock_guard<std::mutex> guard(log);
        std::cerr << "baselines: instance " << i << " method " << name << " failed: "
                  << err.what() << "\n";
      }
    }
  });

  Csv rows(fs::path(g.out) / "baselines.csv", {"instance", "method", "expectation", "r"});
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t m = 0; m < methods; ++m)
      rows.row({std::to_string(i), o.methods[m], num(energy[i * methods + m]),
                num(ratio[i * methods + m])});
  Csv summary(fs::path(g.out) / "summary.csv", {"method", "count", "mean_r", "std_r"});
  for (std::size_t m = 0; m < methods; ++m) {
    std::vector<double> v;
    for (std::size_t i = 0; i < count; ++i)
      if (!std::isnan(ratio[i * methods + m])) v.push_back(ratio[i * methods + m]);
    double mean = std::nan(""), sd = std::nan("");
    if (!v.empty()) {
      mean = 0.0;
      for (double x : v) mean += x / static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
    }
    summary.row({o.methods[m], std::to_string(v.size()), num(mean), num(sd)});
    std::cout << o.methods[m] << ": r = " << num(mean) << " +- " << num(sd) << " over "
              << v.size() << "\n";
  }
  return json::object();
}

json cmd_pool(const PoolOptions& o, const Globals& g) {
  Csv csv(fs::path(g.out) / "pool.csv", {"index", "rgs", "groups"});
  const auto pool = grouping_pool(o.n);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const int groups = 1 + *std::max_element(pool[k].begin(), pool[k].end());
    csv.row({std::to_string(k), format_rgs(pool[k]), std::to_string(groups)});
  }
  std::cout << pool.size() << " groupings of " << o.n << " qubits\n";
  return json::object();
}

json cmd_encode(const EncodeOptions& o, const Globals& g) {
  const ProblemInstance inst = resolve_instance(o.source, g.seed);
  write_instance_file((fs::path(g.out) / "instance.json").string(), inst);
  write_json(fs::path(g.out) / "problem_graph.json", graph_json(encode_problem(inst)));
  if (!o.mixer.empty())
    write_json(fs::path(g.out) / "mixer_graph.json", graph_json(encode_mixer(parse_mixer(o.mixer))));
  return json::object();
}

json cmd_generate(const GenerateOptions& o, const Globals& g) {
  require(!o.generator.empty(), "generate needs --generator CHECKPOINT");
  const ProblemInstance inst = resolve_instance(o.source, g.seed);
  write_instance_file((fs::path(g.out) / "instance.json").string(), inst);
  MixerGenerator gen = load_generator(o.generator);
  const EncodedGraph problem = encode_problem(inst);
  Csv csv(fs::path(g.out) / "generated.csv", {"p", "mixer", "K"});
  for (int p : o.depths) {
    const MixerSpec spec = generate_mixer(gen, problem, p);
    csv.row({std::to_string(p), format_mixer(spec), std::to_string(spec.group_count())});
  }
  return json::object();
}

template <typename T>
T parse_options(const json& j) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("bad options in run config: ") + e.what());
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"gen-data", "train",  "solve",  "effdim",
                                                 "baselines", "pool", "encode", "generate"};
  return names;
}

json default_options(const std::string& command) {
  if (command == "gen-data") return GenDataOptions{};
  if (command == "train") return TrainOptions{};
  if (command == "solve") return SolveOptions{};
  if (command == "effdim") return EffdimOptions{};
  if (command == "baselines") return BaselinesOptions{};
  if (command == "pool") return PoolOptions{};
  if (command == "encode") return EncodeOptions{};
  if (command == "generate") return GenerateOptions{};
  throw Error(ErrorKind::Usage, "unknown command '" + command + "'");
}

void run_command(const std::string& command, const json& options, const Globals& globals) {
  require(globals.jobs >= 1, "--jobs must be at least 1");
  fs::create_directories(globals.out);
  // Normalize through the typed struct so run.json lists every field.
  json normalized;
  json outputs;
  if (command == "gen-data") {
    const auto o = parse_options<GenDataOptions>(options);
    normalized = o;
    outputs = cmd_gen_data(o, globals);
  } else if (command == "train") {
    const auto o = parse_options<TrainOptions>(options);
    normalized = o;
    outputs = cmd_train(o, globals);
  } else if (command == "solve") {
    const auto o = parse_options<SolveOptions>(options);
    normalized = o;
    outputs = cmd_solve(o, globals);
  } else if (command == "effdim") {
    const auto o = parse_options<EffdimOptions>(options);
    normalized = o;
    outputs = cmd_effdim(o, globals);
  } else if (command == "baselines") {
    const auto o = parse_options<BaselinesOptions>(options);
    normalized = o;
    outputs = cmd_baselines(o, globals);
  } else if (command == "pool") {
    const auto o = parse_options<PoolOptions>(options);
    normalized = o;
    outputs = cmd_pool(o, globals);
  } else if (command == "encode") {
    const auto o = parse_options<EncodeOptions>(options);
    normalized = o;
    outputs = cmd_encode(o, globals);
  } else if (command == "generate") {
    const auto o = parse_options<GenerateOptions>(options);
    normalized = o;
    outputs = cmd_generate(o, globals);
  } else {
    throw Error(ErrorKind::Usage, "unknown command '" + command + "'");
  }
  const json manifest = {{"format", "mixgen-run"},
                         {"version", 1},
                         {"command", command},
                         {"seed", globals.seed},
                         {"jobs", globals.jobs},
                         {"options", normalized},
                         {"seeds",
                          {{"instance", derive_seed(globals.seed, kInstanceStream)},
                           {"restarts", derive_seed(globals.seed, kRestartStream)}}},
                         {"outputs", outputs}};
  write_json(fs::path(globals.out) / "run.json", manifest);
}

}  // namespace mixgen::cli
