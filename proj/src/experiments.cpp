#include "lasernoise/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lasernoise/io.hpp"
#include "lasernoise/master_eq.hpp"
#include "lasernoise/rng.hpp"

namespace lasernoise {

namespace fs = std::filesystem;
using nlohmann::json;

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Equilibrium: return "equilibrium";
    case ExperimentKind::ClosedSpectrum: return "closed-spectrum";
    case ExperimentKind::LaserSpectrum: return "laser-spectrum";
    case ExperimentKind::FanoScan: return "fano-scan";
    case ExperimentKind::EntropyTable: return "entropy-table";
    case ExperimentKind::Fig2: return "fig2";
  }
  throw DomainError("unknown experiment kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
  for (ExperimentKind kind :
       {ExperimentKind::Equilibrium, ExperimentKind::ClosedSpectrum,
        ExperimentKind::LaserSpectrum, ExperimentKind::FanoScan,
        ExperimentKind::EntropyTable, ExperimentKind::Fig2})
    if (experiment_name(kind) == name) return kind;
  throw DomainError("unknown experiment '" + name + "'");
}

namespace {

// The canonical form leaves out execution details (worker count, output
// location) that cannot change the computed numbers; artifact headers and
// the config hash use it so reruns stay byte-identical wherever they land.
json spec_json(const ExperimentSpec& spec, bool canonical) {
  json j;
  j["name"] = experiment_name(spec.name);
  j["N"] = spec.n_atoms;
  j["alpha"] = spec.loss_rate;
  j["J"] = spec.pump_rate;
  j["pump"] = pump_name(spec.pump);
  j["U"] = spec.total_energy;
  j["runs"] = spec.runs;
  j["duration"] = spec.duration;
  j["seed"] = spec.seed;
  if (!canonical) {
    j["jobs"] = spec.jobs;
    j["out"] = spec.out_dir;
  }
  return j;
}

}  // namespace

std::string spec_to_json(const ExperimentSpec& spec) {
  return spec_json(spec, false).dump(2) + "\n";
}

ExperimentSpec spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentSpec spec;
  spec.name = experiment_from_name(j.at("name").get<std::string>());
  if (j.contains("N")) spec.n_atoms = j["N"].get<int>();
  if (j.contains("alpha")) spec.loss_rate = j["alpha"].get<double>();
  if (j.contains("J")) spec.pump_rate = j["J"].get<double>();
  if (j.contains("pump")) spec.pump = pump_from_name(j["pump"].get<std::string>());
  if (j.contains("U")) spec.total_energy = j["U"].get<int>();
  if (j.contains("runs")) spec.runs = j["runs"].get<int>();
  if (j.contains("duration")) spec.duration = j["duration"].get<double>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("jobs")) spec.jobs = j["jobs"].get<int>();
  if (j.contains("out")) spec.out_dir = j["out"].get<std::string>();
  return spec;
}

std::string config_hash(const ExperimentSpec& spec) {
  const std::string canonical = spec_json(spec, true).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> validate_config(const ExperimentSpec& spec) {
  std::vector<std::string> diags;
  if (spec.n_atoms < 1) diags.push_back("N must be >= 1");
  if (spec.runs < 1) diags.push_back("runs must be >= 1");
  if (spec.loss_rate < 0.0) diags.push_back("alpha must be >= 0");
  if (spec.pump_rate < 0.0) diags.push_back("J must be >= 0");
  if (spec.jobs < 0) diags.push_back("jobs must be >= 0");
  if (spec.out_dir.empty()) diags.push_back("output directory must be set");

  const bool needs_laser = spec.name == ExperimentKind::LaserSpectrum ||
                           spec.name == ExperimentKind::FanoScan ||
                           spec.name == ExperimentKind::Fig2;
  const bool needs_sim = needs_laser || spec.name == ExperimentKind::Equilibrium;
  if (needs_sim && spec.duration <= 0.0) diags.push_back("duration must be > 0");
  if (needs_laser) {
    if (spec.loss_rate <= 0.0) diags.push_back("laser experiments need alpha > 0");
    if (spec.pump_rate <= 0.0) diags.push_back("laser experiments need J > 0");
    if (spec.loss_rate > static_cast<double>(spec.n_atoms))
      diags.push_back("infeasible steady state: alpha > N");
    if (spec.loss_rate > 0.0 && spec.pump_rate / spec.loss_rate > 1e6)
      diags.push_back("target quantum count J/alpha exceeds the 1e6 bound");
    if (spec.name == ExperimentKind::FanoScan && spec.loss_rate > 0.0 &&
        spec.duration <= 20.0 / spec.loss_rate)
      diags.push_back("fano-scan needs duration > 20/alpha for a window grid");
  }
  if (spec.total_energy > spec.n_atoms)
    diags.push_back("total energy U exceeds N");
  if ((spec.name == ExperimentKind::Equilibrium ||
       spec.name == ExperimentKind::EntropyTable) &&
      spec.total_energy < -1)
    diags.push_back("total energy U must be >= 0 (or -1 for U = N)");
  return diags;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    jobs = hw > 0 ? static_cast<int>(hw) : 1;
  }
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

ClosedBatch run_closed_batch(int n_atoms, int total_energy, int runs,
                             double duration, double burn_in,
                             std::uint64_t seed, int jobs) {
  if (runs < 1) throw DomainError("runs must be >= 1");
  ClosedBatch batch;
  batch.per_run.resize(static_cast<std::size_t>(runs));
  std::vector<Distribution> occupations(static_cast<std::size_t>(runs));

  parallel_for(runs, jobs, [&](int i) {
    SimConfig config;
    config.params.n_atoms = n_atoms;
    config.initial = {total_energy, 0, 0.0};
    config.duration = duration;
    config.seed = Rng::stream_seed(seed, static_cast<std::uint64_t>(i));
    const SimResult result = simulate_closed(config);
    const TimeAverages avg = time_averages(config, result.trace, burn_in);
    batch.per_run[static_cast<std::size_t>(i)] = {avg.mean_m, avg.var_m};
    occupations[static_cast<std::size_t>(i)] =
        occupation_distribution(config, result.trace, burn_in);
  });

  // Equal measured spans, so the pooled occupation is the plain average.
  std::size_t width = 0;
  for (const auto& occ : occupations) width = std::max(width, occ.probs.size());
  batch.pooled_occupation.support_min = 0;
  batch.pooled_occupation.probs.assign(width, 0.0);
  for (const auto& occ : occupations)
    for (std::size_t m = 0; m < occ.probs.size(); ++m)
      batch.pooled_occupation.probs[m] += occ.probs[m] / runs;

  double sm = 0.0, sv = 0.0;
  for (const auto& r : batch.per_run) {
    sm += r.mean_m;
    sv += r.var_m;
  }
  batch.mean_of_means = sm / runs;
  batch.mean_of_vars = sv / runs;
  if (runs > 1) {
    double ssm = 0.0, ssv = 0.0;
    for (const auto& r : batch.per_run) {
      ssm += (r.mean_m - batch.mean_of_means) * (r.mean_m - batch.mean_of_means);
      ssv += (r.var_m - batch.mean_of_vars) * (r.var_m - batch.mean_of_vars);
    }
    batch.se_mean = std::sqrt(ssm / (runs - 1) / runs);
    batch.se_var = std::sqrt(ssv / (runs - 1) / runs);
  }
  return batch;
}

LaserBatch run_laser_batch(const LaserBatchConfig& config) {
  if (config.runs < 1) throw DomainError("runs must be >= 1");
  if (config.tau_m <= 0.0) throw DomainError("tau_m must be > 0");

  LaserBatch batch;
  const auto runs = static_cast<std::size_t>(config.runs);
  batch.per_run_mean_m.resize(runs);
  batch.per_run_mean_n.resize(runs);
  batch.seeds.resize(runs);
  if (config.fano_window > 0.0) batch.per_run_fano.resize(runs);
  std::vector<std::vector<double>> pgrams(config.k_max >= 1 ? runs : 0);
  std::vector<long long> blocked(runs, 0), dets(runs, 0), pumps(runs, 0);
  std::vector<double> balance(runs, 0.0);

  const double mean_n = (config.params.n_atoms + config.params.loss_rate) / 2.0;
  const double mean_m = config.params.pump_rate / config.params.loss_rate;

  parallel_for(config.runs, config.jobs, [&](int i) {
    SimConfig sim;
    sim.params = config.params;
    sim.initial = {static_cast<int>(std::lround(mean_n)),
                   std::llround(mean_m), 0.0};
    sim.duration = config.tau_m + config.burn_in;
    sim.seed = Rng::stream_seed(config.seed, static_cast<std::uint64_t>(i));
    batch.seeds[static_cast<std::size_t>(i)] = sim.seed;

    const SimResult result = simulate_laser(sim);
    blocked[static_cast<std::size_t>(i)] = result.blocked_pumps;

    long long running = 0;
    double worst = 0.0;
    for (const auto& ev : result.trace.events) {
      if (ev.kind == EventKind::Detection) {
        ++dets[static_cast<std::size_t>(i)];
        --running;
      } else if (ev.kind == EventKind::Pump) {
        ++pumps[static_cast<std::size_t>(i)];
        ++running;
      }
      worst = std::max(worst, std::abs(static_cast<double>(running)));
    }
    balance[static_cast<std::size_t>(i)] = worst;

    const TimeAverages avg =
        time_averages(sim, result.trace, config.burn_in);
    batch.per_run_mean_m[static_cast<std::size_t>(i)] = avg.mean_m;
    batch.per_run_mean_n[static_cast<std::size_t>(i)] = avg.mean_n;

    const EventTrace measured =
        config.burn_in > 0.0 ? trim_burn_in(result.trace, config.burn_in)
                             : result.trace;
    if (config.k_max >= 1)
      pgrams[static_cast<std::size_t>(i)] = periodogram(measured, config.k_max);
    if (config.fano_window > 0.0)
      batch.per_run_fano[static_cast<std::size_t>(i)] =
          counting_fano(measured, config.fano_window);
  });

  for (std::size_t i = 0; i < runs; ++i) {
    batch.blocked_pumps += blocked[i];
    batch.detections += dets[i];
    batch.pump_events += pumps[i];
    batch.max_balance = std::max(batch.max_balance, balance[i]);
  }
  if (config.k_max >= 1) {
    SpectrumAccumulator acc(config.tau_m, config.k_max);
    for (const auto& pg : pgrams) acc.add(pg);
    batch.spectrum = acc.finalize();
    flag_comb_bins(batch.spectrum, config.params.pump_rate);
  }
  return batch;
}

// ---------------------------------------------------------------------------
// Experiment artifact writing

namespace {

// Collects output paths so a failed experiment leaves nothing behind.
class ArtifactSet {
 public:
  explicit ArtifactSet(const fs::path& dir) : dir_(dir) {
    fs::create_directories(dir_);
  }

  void write(const std::string& filename, const std::string& content) {
    const fs::path path = dir_ / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out) throw SimError("failed writing " + path.string());
    written_.push_back(path);
  }

  void discard_all() {
    for (const auto& path : written_) {
      std::error_code ec;
      fs::remove(path, ec);
    }
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

std::vector<std::string> artifact_header(const ExperimentSpec& spec) {
  return {
      std::string("lasernoise v") + kToolVersion,
      "experiment=" + experiment_name(spec.name),
      "config_hash=" + config_hash(spec),
      "config=" + spec_json(spec, true).dump(),
  };
}

std::string csv_prelude(const ExperimentSpec& spec) {
  std::string out;
  for (const auto& line : artifact_header(spec)) out += "# " + line + "\n";
  return out;
}

json manifest_base(const ExperimentSpec& spec) {
  json j;
  j["tool"] = "lasernoise";
  j["version"] = kToolVersion;
  j["experiment"] = experiment_name(spec.name);
  j["config_hash"] = config_hash(spec);
  j["config"] = spec_json(spec, true);
  return j;
}

ModelParams laser_params(const ExperimentSpec& spec) {
  ModelParams params;
  params.n_atoms = spec.n_atoms;
  params.loss_rate = spec.loss_rate;
  params.pump_rate = spec.pump_rate;
  params.pump = spec.pump;
  return params;
}

int closed_energy(const ExperimentSpec& spec) {
  return spec.total_energy < 0 ? spec.n_atoms : spec.total_energy;
}

void run_equilibrium(const ExperimentSpec& spec, ArtifactSet& artifacts) {
  const int u = closed_energy(spec);
  const double burn_in = std::min(1.0, spec.duration / 10.0);
  const ClosedBatch batch =
      run_closed_batch(spec.n_atoms, u, spec.runs, spec.duration, burn_in,
                       spec.seed, spec.jobs);
  const Distribution exact = equilibrium_distribution(spec.n_atoms, u);
  const Moments exact_mom = moments(exact);
  const CountingError err = counting_error_probability(exact_mom.mean);

  json report = manifest_base(spec);
  report["N"] = spec.n_atoms;
  report["U"] = u;
  report["burn_in"] = burn_in;
  report["simulated"] = {{"mean_m", batch.mean_of_means},
                         {"var_m", batch.mean_of_vars},
                         {"se_mean", batch.se_mean},
                         {"se_var", batch.se_var}};
  report["exact"] = {{"mean_m", exact_mom.mean},
                     {"var_m", exact_mom.variance}};
  report["tv_distance"] = total_variation(batch.pooled_occupation, exact);
  report["counting_error"] = {{"sub_poissonian", err.sub_poissonian},
                              {"poissonian", err.poissonian}};
  artifacts.write("equilibrium_report.json", report.dump(2) + "\n");

  std::ostringstream csv;
  csv << csv_prelude(spec) << "m,p_sim,p_exact\n";
  const int hi = std::max(batch.pooled_occupation.support_max(),
                          exact.support_max());
  for (int m = 0; m <= hi; ++m)
    csv << m << ',' << format_double(batch.pooled_occupation.prob_at(m)) << ','
        << format_double(exact.prob_at(m)) << '\n';
  artifacts.write("occupation_histogram.csv", csv.str());
}

void run_closed_spectrum(const ExperimentSpec& spec, ArtifactSet& artifacts) {
  const double n = spec.n_atoms;
  std::ostringstream csv;
  csv << csv_prelude(spec) << "omega,S_dm,S_dq\n";
  const int points = 400;
  const double lo = n / 100.0, hi = 100.0 * n;
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  double w = lo;
  for (int i = 0; i < points; ++i) {
    csv << format_double(w) << ','
        << format_double(closed_quanta_spectrum(spec.n_atoms, w)) << ','
        << format_double(
               closed_detection_spectrum(spec.n_atoms, spec.loss_rate, w))
        << '\n';
    w *= ratio;
  }
  artifacts.write("closed_spectrum.csv", csv.str());

  json manifest = manifest_base(spec);
  manifest["quanta_variance"] = n / 4.0;  // integral of S_dm over domega/2pi
  manifest["shot_noise_floor"] = spec.loss_rate * n / 2.0;
  manifest["files"] = {"closed_spectrum.csv"};
  artifacts.write("closed_spectrum_manifest.json", manifest.dump(2) + "\n");
}

int default_k_max(const ExperimentSpec& spec) {
  // Cover the suppression region through a few times the loss rate.
  const double omega_hi = 6.0 * spec.loss_rate;
  return std::max(8, static_cast<int>(std::ceil(
                         omega_hi * spec.duration / (2.0 * std::numbers::pi))));
}

LaserBatch spectrum_batch(const ExperimentSpec& spec) {
  LaserBatchConfig config;
  config.params = laser_params(spec);
  config.runs = spec.runs;
  config.tau_m = spec.duration;
  config.burn_in = 10.0 / spec.loss_rate;
  config.seed = spec.seed;
  config.jobs = spec.jobs;
  config.k_max = default_k_max(spec);
  // Several cavity lifetimes per window, capped so 20 windows always fit.
  config.fano_window = std::min(10.0 / spec.loss_rate, spec.duration / 20.0);
  return run_laser_batch(config);
}

json laser_report(const ExperimentSpec& spec, const LaserBatch& batch) {
  const SteadyState target =
      steady_state(spec.n_atoms, spec.loss_rate, spec.pump_rate);
  double mean_m = 0.0, mean_n = 0.0;
  for (double v : batch.per_run_mean_m) mean_m += v;
  for (double v : batch.per_run_mean_n) mean_n += v;
  mean_m /= static_cast<double>(batch.per_run_mean_m.size());
  mean_n /= static_cast<double>(batch.per_run_mean_n.size());
  double fano = 0.0;
  for (double v : batch.per_run_fano) fano += v;
  if (!batch.per_run_fano.empty())
    fano /= static_cast<double>(batch.per_run_fano.size());

  json j;
  j["target"] = {{"mean_m", target.mean_m}, {"mean_n", target.mean_n}};
  j["measured"] = {{"mean_m", mean_m}, {"mean_n", mean_n}};
  j["detections"] = batch.detections;
  j["pump_events"] = batch.pump_events;
  j["blocked_pumps"] = batch.blocked_pumps;
  j["max_pump_detection_imbalance"] = batch.max_balance;
  j["mean_fano"] = fano;
  j["shot_noise"] = spec.loss_rate * target.mean_m;
  return j;
}

void write_theory_curves(const ExperimentSpec& spec, const Spectrum& grid,
                         ArtifactSet& artifacts, const std::string& laser_file,
                         const std::string& isolated_file) {
  const double mean_m = spec.pump_rate / spec.loss_rate;
  std::ostringstream laser, isolated;
  laser << csv_prelude(spec) << "omega,S\n";
  isolated << csv_prelude(spec) << "omega,S\n";
  for (double w : grid.omegas) {
    laser << format_double(w) << ','
          << format_double(laser_detection_spectrum(spec.n_atoms,
                                                    spec.loss_rate, mean_m, w))
          << '\n';
    isolated << format_double(w) << ','
             << format_double(closed_detection_spectrum(spec.n_atoms,
                                                        spec.loss_rate, w))
             << '\n';
  }
  artifacts.write(laser_file, laser.str());
  artifacts.write(isolated_file, isolated.str());
}

void run_laser_spectrum(const ExperimentSpec& spec, ArtifactSet& artifacts,
                        bool fig2_layout) {
  const LaserBatch batch = spectrum_batch(spec);
  const std::string stem = fig2_layout ? "fig2_sim" : "laser_spectrum";

  std::ostringstream csv;
  csv << csv_prelude(spec);
  {
    std::ostringstream body;
    write_spectrum_csv(batch.spectrum, body);
    csv << body.str();
  }
  artifacts.write(stem + ".csv", csv.str());
  json sidecar = json::parse(spectrum_sidecar_json(
      batch.spectrum, laser_params(spec), batch.seeds));
  sidecar["tool"] = "lasernoise";
  sidecar["version"] = kToolVersion;
  sidecar["config_hash"] = config_hash(spec);
  artifacts.write(stem + ".meta.json", sidecar.dump(2) + "\n");

  const std::string laser_file =
      fig2_layout ? "fig2_theory_laser.csv" : "laser_spectrum_theory.csv";
  const std::string isolated_file =
      fig2_layout ? "fig2_theory_isolated.csv" : "laser_spectrum_isolated.csv";
  write_theory_curves(spec, batch.spectrum, artifacts, laser_file,
                      isolated_file);

  json manifest = manifest_base(spec);
  manifest["report"] = laser_report(spec, batch);
  manifest["tau_m"] = spec.duration;
  manifest["k_max"] = batch.spectrum.omegas.size();
  manifest["relaxation_peak_omega"] = relaxation_peak_frequency(
      spec.n_atoms, spec.loss_rate, spec.pump_rate / spec.loss_rate);
  manifest["files"] = {stem + ".csv", stem + ".meta.json", laser_file,
                       isolated_file};
  artifacts.write(fig2_layout ? "fig2_manifest.json"
                              : "laser_spectrum_manifest.json",
                  manifest.dump(2) + "\n");
}

void run_fano_scan(const ExperimentSpec& spec, ArtifactSet& artifacts) {
  // Window sizes from one cavity lifetime up to duration/20 (the smallest
  // count that still yields 20 windows), log-spaced.
  const double t_min = 1.0 / spec.loss_rate;
  const double t_max = spec.duration / 20.0;
  if (t_max <= t_min)
    throw ConfigError("duration too short for a window scan: need > 20/alpha");
  const int n_windows = 8;
  std::vector<double> windows(n_windows);
  const double ratio = std::pow(t_max / t_min, 1.0 / (n_windows - 1));
  double t = t_min;
  for (int i = 0; i < n_windows; ++i) {
    windows[static_cast<std::size_t>(i)] = t;
    t *= ratio;
  }
  windows.back() = t_max;  // the multiplicative walk can overshoot by 1 ulp

  const double burn_in = 10.0 / spec.loss_rate;
  std::vector<std::vector<double>> mean_fano(2), se_fano(2);
  for (int which = 0; which < 2; ++which) {
    ModelParams params = laser_params(spec);
    params.pump =
        which == 0 ? PumpDiscipline::Quiet : PumpDiscipline::Poisson;
    std::vector<std::vector<double>> per_run(
        static_cast<std::size_t>(spec.runs));
    parallel_for(spec.runs, spec.jobs, [&](int i) {
      SimConfig sim;
      sim.params = params;
      sim.initial = {static_cast<int>(std::lround(
                         (spec.n_atoms + spec.loss_rate) / 2.0)),
                     std::llround(spec.pump_rate / spec.loss_rate), 0.0};
      sim.duration = spec.duration + burn_in;
      sim.seed = Rng::stream_seed(spec.seed + (which == 0 ? 0 : 0x51D5ULL),
                                  static_cast<std::uint64_t>(i));
      const SimResult result = simulate_laser(sim);
      const EventTrace measured = trim_burn_in(result.trace, burn_in);
      auto& row = per_run[static_cast<std::size_t>(i)];
      row.resize(windows.size());
      for (std::size_t wi = 0; wi < windows.size(); ++wi)
        row[wi] = counting_fano(measured, windows[wi]);
    });
    mean_fano[which].assign(windows.size(), 0.0);
    se_fano[which].assign(windows.size(), 0.0);
    for (const auto& row : per_run)
      for (std::size_t wi = 0; wi < windows.size(); ++wi)
        mean_fano[which][wi] += row[wi] / spec.runs;
    if (spec.runs > 1) {
      for (const auto& row : per_run)
        for (std::size_t wi = 0; wi < windows.size(); ++wi) {
          const double d = row[wi] - mean_fano[which][wi];
          se_fano[which][wi] += d * d;
        }
      for (std::size_t wi = 0; wi < windows.size(); ++wi)
        se_fano[which][wi] =
            std::sqrt(se_fano[which][wi] / (spec.runs - 1) / spec.runs);
    }
  }

  std::ostringstream csv;
  csv << csv_prelude(spec)
      << "window,fano_quiet,se_quiet,fano_poisson,se_poisson\n";
  for (std::size_t wi = 0; wi < windows.size(); ++wi)
    csv << format_double(windows[wi]) << ','
        << format_double(mean_fano[0][wi]) << ','
        << format_double(se_fano[0][wi]) << ','
        << format_double(mean_fano[1][wi]) << ','
        << format_double(se_fano[1][wi]) << '\n';
  artifacts.write("fano_scan.csv", csv.str());

  json manifest = manifest_base(spec);
  manifest["windows"] = windows;
  manifest["files"] = {"fano_scan.csv"};
  artifacts.write("fano_scan_manifest.json", manifest.dump(2) + "\n");
}

void run_entropy_table(const ExperimentSpec& spec, ArtifactSet& artifacts) {
  std::vector<int> energies;
  if (spec.total_energy >= 0) {
    energies.push_back(spec.total_energy);
  } else {
    for (int u : {spec.n_atoms, 3 * spec.n_atoms / 4, spec.n_atoms / 2,
                  spec.n_atoms / 4, spec.n_atoms / 8})
      if (energies.empty() || u != energies.back()) energies.push_back(u);
  }

  std::ostringstream csv;
  csv << csv_prelude(spec)
      << "N,U,s_system,s_matter_avg,s_field,identity_residual\n";
  for (int u : energies) {
    const EntropyReport rep = entropy_report(spec.n_atoms, u);
    csv << spec.n_atoms << ',' << u << ',' << format_double(rep.s_system)
        << ',' << format_double(rep.s_matter_avg) << ','
        << format_double(rep.s_field) << ','
        << format_double(rep.s_system - rep.s_matter_avg - rep.s_field)
        << '\n';
  }
  artifacts.write("entropy_table.csv", csv.str());
}

}  // namespace

void run_experiment(const ExperimentSpec& spec) {
  const auto diags = validate_config(spec);
  if (!diags.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& d : diags) msg += "\n  - " + d;
    throw ConfigError(msg);
  }

  ArtifactSet artifacts{fs::path(spec.out_dir)};
  try {
    switch (spec.name) {
      case ExperimentKind::Equilibrium:
        run_equilibrium(spec, artifacts);
        break;
      case ExperimentKind::ClosedSpectrum:
        run_closed_spectrum(spec, artifacts);
        break;
      case ExperimentKind::LaserSpectrum:
        run_laser_spectrum(spec, artifacts, false);
        break;
      case ExperimentKind::FanoScan:
        run_fano_scan(spec, artifacts);
        break;
      case ExperimentKind::EntropyTable:
        run_entropy_table(spec, artifacts);
        break;
      case ExperimentKind::Fig2:
        run_laser_spectrum(spec, artifacts, true);
        break;
    }
  } catch (...) {
    artifacts.discard_all();
    throw;
  }
}

}  // namespace lasernoise
