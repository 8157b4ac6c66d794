#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace mixgen::cli {

/// Where the problem instance comes from: a JSON file, or a sample drawn from
/// the run seed.
struct InstanceSource {
  std::string instance;       // path; empty means sample
  std::string task = "maxcut";
  int n = 6;
  std::string graph = "w3r";  // w3r | ring | path | complete (maxcut only)
};

struct GenDataOptions {
  std::string task = "maxcut";
  int n = 6;
  int instances = 100;
  std::vector<int> depths = {2, 12, 22, 42, 62, 82, 92};
  int types = 4;
  int groupings = 5;
  int restarts = 10;
  int epochs = 40;
  double lr = 0.15;
};

struct TrainOptions {
  std::string data;
  std::string stage = "both";  // both | estimator | generator
  std::string estimator;       // stage-1 checkpoint, required for stage generator
  int estimator_epochs = 250;
  int generator_epochs = 50;
  double estimator_lr = 1e-4;
  double generator_lr = 1e-4;
  double lambda_e = 1.0;
  double lambda_r = 1.0;
  double tau = 1.0;
  int hidden = 128;
  int depth_dim = 128;
  std::vector<int> head = {256, 64};
  std::vector<int> generator_depths;  // empty means the dataset's depths
};

struct SolveOptions {
  InstanceSource source;
  std::string mixer = "fg";  // fg | ng | pg | ma | adapt | file:<spec> | mgnet
  int p = 2;
  int restarts = 1;
  int epochs = 40;
  double lr = 0.15;
  std::string generator;  // checkpoint for mgnet
};

struct EffdimOptions {
  InstanceSource source;
  std::vector<std::string> mixers;  // extra TYPES/RGS specs
  int dla_cap = 256;
};

struct BaselinesOptions {
  std::string task = "maxcut";
  int n = 6;
  int instances = 100;
  int p = 42;
  int restarts = 1;
  int epochs = 40;
  double lr = 0.15;
  std::vector<std::string> methods = {"greedy", "gw", "fg", "ma", "adapt"};
  std::string generator;
  int gw_rounds = 1;
};

struct PoolOptions {
  int n = 4;
};

struct EncodeOptions {
  InstanceSource source;
  std::string mixer;  // optional TYPES/RGS spec
};

struct GenerateOptions {
  InstanceSource source;
  std::string generator;
  std::vector<int> depths = {2, 12, 22, 42, 62, 82, 92};
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(InstanceSource, instance, task, n, graph)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GenDataOptions, task, n, instances, depths, types,
                                                groupings, restarts, epochs, lr)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TrainOptions, data, stage, estimator,
                                                estimator_epochs, generator_epochs, estimator_lr,
                                                generator_lr, lambda_e, lambda_r, tau, hidden,
                                                depth_dim, head, generator_depths)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SolveOptions, source, mixer, p, restarts, epochs,
                                                lr, generator)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(EffdimOptions, source, mixers, dla_cap)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BaselinesOptions, task, n, instances, p, restarts,
                                                epochs, lr, methods, generator, gw_rounds)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PoolOptions, n)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(EncodeOptions, source, mixer)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GenerateOptions, source, generator, depths)

/// Settings shared by every subcommand. `out` is not recorded in run.json so
/// a replay can target any directory.
struct Globals {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out = "out";
};

/// Runs `command` with JSON options, writing outputs and run.json under
/// globals.out. Throws mixgen::Error on failure.
void run_command(const std::string& command, const nlohmann::json& options,
                 const Globals& globals);

/// Options JSON for a command with every field defaulted.
nlohmann::json default_options(const std::string& command);

const std::vector<std::string>& command_names();

}  // namespace mixgen::cli
