// flsched: generate cost tables, run one scheduler, certify optimality, or
// run a benchmark scenario.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "flsched/bench.hpp"
#include "flsched/costgen.hpp"
#include "flsched/instance_io.hpp"
#include "flsched/oracle.hpp"
#include "flsched/schedulers.hpp"

namespace fs = std::filesystem;
using namespace flsched;

namespace {

struct GenOptions {
  std::string kind = "mixed";
  std::size_t n = 10;
  TaskCount tasks = 100;
  std::uint64_t seed = 0;
  std::string limits = "none";
  std::string out;
};

struct ScheduleOptions {
  std::string algo = "olar";
  std::optional<TaskCount> k;
  std::uint64_t seed = 0;
  std::string instance;
};

struct BenchOptions {
  int scenario = 1;
  std::size_t scale = 1;
  std::string out = "results.csv";
  std::string keep_assignments;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Proportional needs 1 <= k <= T; default to the mean share.
TaskCount default_k(const Instance& instance) {
  const TaskCount mean = instance.tasks() / static_cast<TaskCount>(instance.size());
  return std::max<TaskCount>(1, mean);
}

int cmd_gen_costs(const GenOptions& opt) {
  const auto group = parse_group(opt.kind);
  if (!group) throw ScheduleError("unknown cost kind " + opt.kind);
  const auto mode =
      opt.limits == "standard" ? bench::LimitMode::Standard : bench::LimitMode::None;
  Instance instance(opt.tasks, bench::apply_limits(gen_group(*group, opt.n, opt.tasks, opt.seed),
                                                   opt.tasks, mode));
  if (opt.out.empty()) {
    std::cout << instance_to_json(instance).dump() << '\n';
  } else {
    save_instance(instance, opt.out);
  }
  return 0;
}

int cmd_schedule(const ScheduleOptions& opt) {
  const auto algo = parse_algorithm(opt.algo);
  if (!algo) throw ScheduleError("unknown algorithm " + opt.algo);
  const Instance instance = load_instance(opt.instance);
  const SchedulerParams params{opt.k.value_or(default_k(instance)), opt.seed};
  const Assignment result = run_scheduler(*algo, instance, params);
  std::cout << assignment_to_json(instance, result).dump() << '\n';
  return 0;
}

int cmd_verify(const ScheduleOptions& opt) {
  const Instance instance = load_instance(opt.instance);
  const SchedulerParams params{opt.k.value_or(default_k(instance)), opt.seed};
  const double optimum = dp_optimal(instance).makespan;

  nlohmann::json report = nlohmann::json::object();
  double olar_makespan = -1.0;
  for (Algorithm algo : kAllAlgorithms) {
    nlohmann::json entry;
    try {
      const Assignment a = run_scheduler(algo, instance, params);
      entry["makespan"] = makespan(instance, a);
      entry["valid"] = validate(instance, a).ok();
      if (algo == Algorithm::Olar) olar_makespan = makespan(instance, a);
    } catch (const std::exception& e) {
      entry["error"] = e.what();
    }
    report[std::string(to_string(algo))] = std::move(entry);
  }
  report["optimum"] = optimum;
  report["olar_optimal"] = olar_makespan == optimum;
  std::cout << report.dump(2) << '\n';
  return olar_makespan == optimum ? 0 : 1;
}

fs::path manifest_path(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".manifest.json");
  return p;
}

int cmd_bench(const BenchOptions& opt) {
  const auto configs = bench::scenario_configs(opt.scenario, opt.scale, opt.seed);

  std::ofstream csv(opt.out);
  if (!csv) throw ScheduleError("cannot write " + opt.out);
  csv << bench::kCsvHeader << '\n';

  std::ofstream assignments;
  if (!opt.keep_assignments.empty()) {
    fs::create_directories(opt.keep_assignments);
    assignments.open(fs::path(opt.keep_assignments) / "assignments.jsonl");
  }

  nlohmann::json manifest = {{"scenario", opt.scenario},
                             {"scale", opt.scale},
                             {"seed", opt.seed},
                             {"csv", opt.out},
                             {"sweeps", nlohmann::json::array()},
                             {"errors", nlohmann::json::array()}};
  std::size_t row_index = 0;
  std::size_t errors = 0;
  for (auto config : configs) {
    config.threads = opt.threads;
    manifest["sweeps"].push_back({{"tasks", config.task_grid},
                                  {"resources", config.resource_grid},
                                  {"samples", config.samples},
                                  {"runs_per_sample", config.runs_per_sample},
                                  {"shuffle_seed", config.shuffle_seed}});
    const auto summary = bench::run_scenario(config, [&](const bench::ResultRow& row,
                                                         const Assignment& a) {
      csv << bench::to_csv(row) << '\n';
      if (row.error) {
        manifest["errors"].push_back({{"row", row_index}, {"message", *row.error}});
      }
      if (assignments.is_open()) {
        assignments << nlohmann::json{{"row", row_index}, {"counts", a.counts}}.dump() << '\n';
      }
      ++row_index;
    });
    errors += summary.errors;
  }
  manifest["rows"] = row_index;

  std::ofstream(manifest_path(opt.out)) << manifest.dump(2) << '\n';
  std::cerr << row_index << " rows written to " << opt.out << " (" << errors << " errors)\n";
  return errors == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task assignment schedulers for federated learning rounds"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-costs", "Generate a resource group as an instance file");
  gen_cmd->add_option("--kind", gen.kind, "recursive|linear|nlogn|quadratic|mixed")
      ->check(CLI::IsMember({"recursive", "linear", "nlogn", "quadratic", "mixed"}));
  gen_cmd->add_option("-n,--resources", gen.n, "Number of resources")->check(CLI::PositiveNumber);
  gen_cmd->add_option("-T,--tasks", gen.tasks, "Number of tasks")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "Base seed; resource i uses seed + i");
  gen_cmd->add_option("--limits", gen.limits, "none|standard")
      ->check(CLI::IsMember({"none", "standard"}));
  gen_cmd->add_option("-o,--out", gen.out, "Output file (stdout if omitted)");

  ScheduleOptions sched;
  auto* sched_cmd = app.add_subcommand("schedule", "Run one scheduler on an instance file");
  std::vector<std::string> algo_names;
  for (Algorithm a : kAllAlgorithms) algo_names.emplace_back(to_string(a));
  sched_cmd->add_option("--algo", sched.algo)->check(CLI::IsMember(algo_names));
  sched_cmd->add_option("--k", sched.k, "Proportional cost probe (default floor(T/n))");
  sched_cmd->add_option("--seed", sched.seed, "Random scheduler seed");
  sched_cmd->add_option("--instance", sched.instance)->required()->check(CLI::ExistingFile);

  ScheduleOptions verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "Run every scheduler and compare OLAR with the exact optimum");
  verify_cmd->add_option("--k", verify.k);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--instance", verify.instance)->required()->check(CLI::ExistingFile);

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark scenario and write CSV");
  bench_cmd->add_option("--scenario", bench_opt.scenario)->required()->check(CLI::Range(1, 4));
  bench_cmd->add_option("--scale", bench_opt.scale, "Grid/sample divisor, 1 = full grid")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_opt.out);
  bench_cmd->add_option("--keep-assignments", bench_opt.keep_assignments,
                        "Directory for per-row assignments");
  bench_cmd->add_option("--seed", bench_opt.seed, "Base seed for costs and shuffling");
  bench_cmd->add_option("--threads", bench_opt.threads,
                        "Workers for makespan scenarios (timing stays single-threaded)")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return cmd_gen_costs(gen);
    if (*sched_cmd) return cmd_schedule(sched);
    if (*verify_cmd) return cmd_verify(verify);
    if (*bench_cmd) return cmd_bench(bench_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
