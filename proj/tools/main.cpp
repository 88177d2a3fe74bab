// lasernoise - experiment runner for the cavity jump-process laboratory.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lasernoise/experiments.hpp"
#include "lasernoise/io.hpp"

namespace {

using lasernoise::ExperimentKind;
using lasernoise::ExperimentSpec;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int execute(const ExperimentSpec& spec) {
  const auto diagnostics = lasernoise::validate_config(spec);
  if (!diagnostics.empty()) {
    std::cerr << "configuration error:\n";
    for (const auto& d : diagnostics) std::cerr << "  - " << d << "\n";
    return kExitConfig;
  }
  try {
    lasernoise::run_experiment(spec);
  } catch (const lasernoise::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cout << "wrote " << lasernoise::experiment_name(spec.name)
            << " artifacts to " << spec.out_dir << "\n";
  return kExitOk;
}

void add_common_flags(CLI::App* cmd, ExperimentSpec& spec) {
  cmd->add_option("--N", spec.n_atoms, "number of two-level atoms");
  cmd->add_option("--alpha", spec.loss_rate, "detection (loss) rate");
  cmd->add_option("--J", spec.pump_rate, "pump rate");
  cmd->add_option_function<std::string>(
         "--pump",
         [&spec](const std::string& v) {
           spec.pump = lasernoise::pump_from_name(v);
         },
         "pump discipline: quiet | poisson")
      ->check(CLI::IsMember({"quiet", "poisson"}));
  cmd->add_option("--U", spec.total_energy,
                  "total energy for closed experiments (-1 = N)");
  cmd->add_option("--runs", spec.runs, "number of independent replicas");
  cmd->add_option("--duration", spec.duration, "measured span per replica");
  cmd->add_option("--seed", spec.seed, "base seed (replica r uses stream r)");
  cmd->add_option("--jobs", spec.jobs, "worker pool size (0 = all cores)");
  cmd->add_option("--out", spec.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lasernoise: jump-process simulation and noise analytics for a "
               "single-mode cavity with two-level atoms"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "run an experiment described by a JSON config file");

  // CLI11 stores pointers into each spec, so the container must never
  // relocate its elements.
  struct SubSpec {
    CLI::App* cmd;
    ExperimentSpec spec;
  };
  std::deque<SubSpec> subs;

  auto add_sub = [&](ExperimentKind kind, const std::string& help, int runs,
                     double duration) {
    ExperimentSpec spec;
    spec.name = kind;
    spec.runs = runs;
    spec.duration = duration;
    CLI::App* cmd =
        app.add_subcommand(lasernoise::experiment_name(kind), help);
    subs.push_back({cmd, spec});
    add_common_flags(cmd, subs.back().spec);
  };

  add_sub(ExperimentKind::Equilibrium,
          "closed-cavity equilibrium moments vs the exact law", 20, 200.0);
  add_sub(ExperimentKind::ClosedSpectrum,
          "closed-form noise spectra of the isolated cavity", 1, 1.0);
  add_sub(ExperimentKind::LaserSpectrum,
          "simulated detection spectrum vs the closed form", 200, 20.0);
  add_sub(ExperimentKind::FanoScan,
          "counting Fano factor vs window size, quiet vs poisson pump", 100,
          30.0);
  add_sub(ExperimentKind::EntropyTable,
          "entropy split of the isolated system", 1, 1.0);
  add_sub(ExperimentKind::Fig2,
          "benchmark spectrum comparison at N=100, alpha=20, <m>=50", 200,
          20.0);

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "configuration error: cannot read " << config_path << "\n";
      return kExitConfig;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      return execute(lasernoise::spec_from_json(buf.str()));
    } catch (const std::exception& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return kExitConfig;
    }
  }

  for (auto& sub : subs)
    if (sub.cmd->parsed()) return execute(sub.spec);

  std::cerr << app.help() << "\n";
  return kExitConfig;
}
