#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lasernoise/analytics.hpp"
#include "lasernoise/spectral.hpp"
#include "lasernoise/ssa.hpp"

namespace lasernoise {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExperimentKind {
  Equilibrium,
  ClosedSpectrum,
  LaserSpectrum,
  FanoScan,
  EntropyTable,
  Fig2,
};

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);

// A named, reproducible experiment.  Identical specs (seed included)
// produce byte-identical primary artifacts.
struct ExperimentSpec {
  ExperimentKind name = ExperimentKind::Fig2;
  int n_atoms = 100;
  double loss_rate = 20.0;
  double pump_rate = 1000.0;
  PumpDiscipline pump = PumpDiscipline::Quiet;
  int total_energy = -1;  // closed experiments; -1 means U = N
  int runs = 200;
  double duration = 20.0;
  std::uint64_t seed = 1;
  int jobs = 0;  // replica worker pool size; 0 = hardware concurrency
  std::string out_dir = "out";
};

std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);

// FNV-1a of the canonical config JSON; embedded in every artifact header.
std::string config_hash(const ExperimentSpec& spec);

// All invariant violations, without running anything.
std::vector<std::string> validate_config(const ExperimentSpec& spec);

// Runs the experiment and writes its artifacts under spec.out_dir.
// On error, partial outputs are removed and the exception propagates.
void run_experiment(const ExperimentSpec& spec);

// Deterministic replica fan-out: fn(i) for i in [0, n); results must be
// stored by index so the aggregate is independent of scheduling.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

// ---- batch runners shared with the acceptance suite ----

struct ClosedRunStats {
  double mean_m = 0.0;
  double var_m = 0.0;
};

struct ClosedBatch {
  std::vector<ClosedRunStats> per_run;
  Distribution pooled_occupation;
  double mean_of_means = 0.0;
  double mean_of_vars = 0.0;
  double se_mean = 0.0;  // replica-scatter standard errors
  double se_var = 0.0;
};

ClosedBatch run_closed_batch(int n_atoms, int total_energy, int runs,
                             double duration, double burn_in,
                             std::uint64_t seed, int jobs);

struct LaserBatchConfig {
  ModelParams params;
  int runs = 0;
  double tau_m = 0.0;    // measured span per run, after burn-in removal
  double burn_in = 0.0;  // simulated ahead of the measured span
  std::uint64_t seed = 0;
  int jobs = 0;
  int k_max = 0;            // 0 disables the spectral estimate
  double fano_window = 0.0; // <= 0 disables the counting statistic
};

struct LaserBatch {
  Spectrum spectrum;  // empty unless k_max >= 1
  std::vector<double> per_run_fano;
  std::vector<double> per_run_mean_m;
  std::vector<double> per_run_mean_n;
  std::vector<std::uint64_t> seeds;
  long long blocked_pumps = 0;
  long long detections = 0;
  long long pump_events = 0;
  double max_balance = 0.0;  // sup_t |cumulative detections - pumps|
};

LaserBatch run_laser_batch(const LaserBatchConfig& config);

}  // namespace lasernoise
