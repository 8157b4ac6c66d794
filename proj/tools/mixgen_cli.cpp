#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "mixgen/common.hpp"

using mixgen::ErrorKind;
using nlohmann::json;
namespace cli = mixgen::cli;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::Input:
    case ErrorKind::Dimension:
    case ErrorKind::Unsupported:
      return 2;
    case ErrorKind::Capacity:
      return 3;
    case ErrorKind::Numeric:
      return 4;
    default:
      return 1;
  }
}

void add_source(CLI::App* sub, cli::InstanceSource& s) {
  sub->add_option("--instance", s.instance, "Instance JSON file (otherwise sampled from --seed)");
  sub->add_option("--task", s.task, "maxcut | tfim")->capture_default_str();
  sub->add_option("--n", s.n, "Qubit count for a sampled instance")->capture_default_str();
  sub->add_option("--graph", s.graph, "w3r | ring | path | complete")->capture_default_str();
}

json load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mixgen::Error(ErrorKind::Input, "cannot read config " + path);
  try {
    json j;
    in >> j;
    if (!j.contains("command") || !j.contains("options"))
      throw mixgen::Error(ErrorKind::Input, path + " lacks command/options");
    return j;
  } catch (const json::exception& e) {
    throw mixgen::Error(ErrorKind::Input, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixer design, cost estimation and QAOA baselines"};
  app.require_subcommand(0, 1);
  cli::Globals globals;
  std::string config;
  auto* seed_opt = app.add_option("--seed", globals.seed, "Root seed")->capture_default_str();
  auto* jobs_opt = app.add_option("--jobs", globals.jobs, "Worker threads")->capture_default_str();
  app.add_option("--out", globals.out, "Output directory")->capture_default_str();
  app.add_option("--config", config, "Replay a run.json (or any {command, options} file)");

  cli::GenDataOptions gen_data;
  cli::TrainOptions train;
  cli::SolveOptions solve;
  cli::EffdimOptions effdim;
  cli::BaselinesOptions baselines;
  cli::PoolOptions pool;
  cli::EncodeOptions encode;
  cli::GenerateOptions generate;

  auto* s = app.add_subcommand("gen-data", "Label random mixers on random instances");
  s->add_option("--task", gen_data.task)->capture_default_str();
  s->add_option("--n", gen_data.n)->capture_default_str();
  s->add_option("--instances", gen_data.instances)->capture_default_str();
  s->add_option("--depths", gen_data.depths)->capture_default_str();
  s->add_option("--types", gen_data.types, "Type patterns per instance")->capture_default_str();
  s->add_option("--groupings", gen_data.groupings, "Groupings per type")->capture_default_str();
  s->add_option("--restarts", gen_data.restarts)->capture_default_str();
  s->add_option("--epochs", gen_data.epochs)->capture_default_str();
  s->add_option("--lr", gen_data.lr)->capture_default_str();

  s = app.add_subcommand("train", "Train the cost estimator, then the mixer generator");
  s->add_option("--data", train.data, "Dataset directory from gen-data");
  s->add_option("--stage", train.stage, "both | estimator | generator")->capture_default_str();
  s->add_option("--estimator", train.estimator, "Trained estimator checkpoint");
  s->add_option("--estimator-epochs", train.estimator_epochs)->capture_default_str();
  s->add_option("--generator-epochs", train.generator_epochs)->capture_default_str();
  s->add_option("--estimator-lr", train.estimator_lr)->capture_default_str();
  s->add_option("--generator-lr", train.generator_lr)->capture_default_str();
  s->add_option("--lambda-e", train.lambda_e)->capture_default_str();
  s->add_option("--lambda-r", train.lambda_r)->capture_default_str();
  s->add_option("--tau", train.tau)->capture_default_str();
  s->add_option("--hidden", train.hidden)->capture_default_str();
  s->add_option("--depth-dim", train.depth_dim)->capture_default_str();
  s->add_option("--head", train.head)->capture_default_str();
  s->add_option("--generator-depths", train.generator_depths);

  s = app.add_subcommand("solve", "Optimize one QAOA circuit");
  add_source(s, solve.source);
  s->add_option("--mixer", solve.mixer, "fg | ng | pg | ma | adapt | file:TYPES/RGS | mgnet")
      ->capture_default_str();
  s->add_option("--p", solve.p)->capture_default_str();
  s->add_option("--restarts", solve.restarts)->capture_default_str();
  s->add_option("--epochs", solve.epochs)->capture_default_str();
  s->add_option("--lr", solve.lr)->capture_default_str();
  s->add_option("--generator", solve.generator, "Generator checkpoint for --mixer mgnet");

  s = app.add_subcommand("effdim", "Effective and Lie-algebra dimensions");
  add_source(s, effdim.source);
  s->add_option("--mixers", effdim.mixers, "Extra TYPES/RGS specs");
  s->add_option("--dla-cap", effdim.dla_cap)->capture_default_str();

  s = app.add_subcommand("baselines", "Compare solvers over random instances");
  s->add_option("--task", baselines.task)->capture_default_str();
  s->add_option("--n", baselines.n)->capture_default_str();
  s->add_option("--instances", baselines.instances)->capture_default_str();
  s->add_option("--p", baselines.p)->capture_default_str();
  s->add_option("--restarts", baselines.restarts)->capture_default_str();
  s->add_option("--epochs", baselines.epochs)->capture_default_str();
  s->add_option("--lr", baselines.lr)->capture_default_str();
  s->add_option("--methods", baselines.methods)->capture_default_str();
  s->add_option("--generator", baselines.generator);
  s->add_option("--gw-rounds", baselines.gw_rounds)->capture_default_str();

  s = app.add_subcommand("pool", "List every qubit grouping");
  s->add_option("--n", pool.n)->capture_default_str();

  s = app.add_subcommand("encode", "Write the problem and mixer graphs as JSON");
  add_source(s, encode.source);
  s->add_option("--mixer", encode.mixer, "TYPES/RGS spec");

  s = app.add_subcommand("generate", "Generate mixers with a trained generator");
  add_source(s, generate.source);
  s->add_option("--generator", generate.generator, "Generator checkpoint");
  s->add_option("--depths", generate.depths)->capture_default_str();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string command;
    json options;
    if (!config.empty()) {
      if (!app.get_subcommands().empty())
        throw mixgen::Error(ErrorKind::Usage, "--config replaces the subcommand; give one or the other");
      const json run = load_run_config(config);
      command = run.at("command").get<std::string>();
      options = run.at("options");
      if (!seed_opt->count() && run.contains("seed")) globals.seed = run["seed"].get<std::uint64_t>();
      if (!jobs_opt->count() && run.contains("jobs")) globals.jobs = run["jobs"].get<int>();
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
      }
      command = app.get_subcommands().front()->get_name();
      if (command == "gen-data") options = gen_data;
      else if (command == "train") options = train;
      else if (command == "solve") options = solve;
      else if (command == "effdim") options = effdim;
      else if (command == "baselines") options = baselines;
      else if (command == "pool") options = pool;
      else if (command == "encode") options = encode;
      else options = generate;
    }
    cli::run_command(command, options, globals);
    return 0;
  } catch (const mixgen::Error& e) {
    std::cerr << "error (" << mixgen::to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
