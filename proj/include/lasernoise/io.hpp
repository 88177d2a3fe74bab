#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lasernoise/model.hpp"
#include "lasernoise/spectral.hpp"

namespace lasernoise {

// Shortest text form that round-trips a double exactly; locale-independent.
std::string format_double(double value);

std::string pump_name(PumpDiscipline pump);
PumpDiscipline pump_from_name(const std::string& name);

// Trace CSV: '#' header lines carrying seed and parameters, then a
// `t,kind` table with kind in {E, A, Q, P}.
void write_trace_csv(const EventTrace& trace, std::ostream& out);
EventTrace read_trace_csv(std::istream& in);

// Spectrum CSV: columns omega,S,stderr,flagged.  Metadata (n_runs, tau_m,
// params, seed list) travels in a JSON sidecar next to it.
void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out,
                        const std::vector<std::string>& header_lines = {});
std::string spectrum_sidecar_json(const Spectrum& spectrum,
                                  const ModelParams& params,
                                  const std::vector<std::uint64_t>& seeds);

}  // namespace lasernoise
