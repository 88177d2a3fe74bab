#include "lasernoise/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace lasernoise {

std::string format_double(double value) {
  char buf[40];
  // %.17g round-trips every double; prefer the shorter %.15g form when it
  // already reads back exactly.
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  if (std::strtod(buf, nullptr) != value)
    std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string pump_name(PumpDiscipline pump) {
  return pump == PumpDiscipline::Quiet ? "quiet" : "poisson";
}

PumpDiscipline pump_from_name(const std::string& name) {
  if (name == "quiet") return PumpDiscipline::Quiet;
  if (name == "poisson") return PumpDiscipline::Poisson;
  throw DomainError("unknown pump discipline '" + name + "'");
}

void write_trace_csv(const EventTrace& trace, std::ostream& out) {
  out << "# lasernoise trace v1\n";
  out << "# seed=" << trace.seed << "\n";
  out << "# n_atoms=" << trace.params.n_atoms << "\n";
  out << "# loss_rate=" << format_double(trace.params.loss_rate) << "\n";
  out << "# pump_rate=" << format_double(trace.params.pump_rate) << "\n";
  out << "# pump=" << pump_name(trace.params.pump) << "\n";
  out << "# duration=" << format_double(trace.duration) << "\n";
  out << "t,kind\n";
  for (const auto& ev : trace.events)
    out << format_double(ev.t) << ',' << event_code(ev.kind) << '\n';
}

EventTrace read_trace_csv(std::istream& in) {
  EventTrace trace;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "seed") trace.seed = std::stoull(value);
      else if (key == "n_atoms") trace.params.n_atoms = std::stoi(value);
      else if (key == "loss_rate") trace.params.loss_rate = std::stod(value);
      else if (key == "pump_rate") trace.params.pump_rate = std::stod(value);
      else if (key == "pump") trace.params.pump = pump_from_name(value);
      else if (key == "duration") trace.duration = std::stod(value);
      continue;
    }
    if (!saw_header) {
      if (line != "t,kind")
        throw DomainError("expected 't,kind' column header, got '" + line + "'");
      saw_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma + 1 >= line.size())
      throw DomainError("malformed trace row '" + line + "'");
    trace.events.push_back(
        {std::stod(line.substr(0, comma)), event_from_code(line[comma + 1])});
  }
  if (!saw_header) throw DomainError("trace CSV missing column header");
  return trace;
}

void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out,
                        const std::vector<std::string>& header_lines) {
  for (const auto& h : header_lines) out << "# " << h << "\n";
  out << "omega,S,stderr,flagged\n";
  for (std::size_t i = 0; i < spectrum.omegas.size(); ++i)
    out << format_double(spectrum.omegas[i]) << ','
        << format_double(spectrum.values[i]) << ','
        << format_double(spectrum.stderrs[i]) << ','
        << static_cast<int>(spectrum.flagged[i]) << '\n';
}

std::string spectrum_sidecar_json(const Spectrum& spectrum,
                                  const ModelParams& params,
                                  const std::vector<std::uint64_t>& seeds) {
  nlohmann::json j;
  j["n_runs"] = spectrum.n_runs;
  j["tau_m"] = spectrum.tau_m;
  j["k_max"] = spectrum.omegas.size();
  j["params"] = {{"n_atoms", params.n_atoms},
                 {"loss_rate", params.loss_rate},
                 {"pump_rate", params.pump_rate},
                 {"pump", pump_name(params.pump)}};
  j["seeds"] = seeds;
  return j.dump(2) + "\n";
}

}  // namespace lasernoise
