#pragma once

#include <cstdint>
#include <vector>

#include "lasernoise/errors.hpp"

namespace lasernoise {

enum class PumpDiscipline { Quiet, Poisson };

// Shared parameterization of the atom-field-detector system.
//
// n_atoms   N, number of two-level atoms in the cavity.
// loss_rate alpha, detection (linear loss) rate per quantum.
// pump_rate J, atoms raised to the upper state per unit time.
//
// The stimulated-rate proportionality constant is fixed at 1, which fixes
// the unit of time; alpha and J are expressed in those units.  A closed
// (isolated) cavity has loss_rate = 0 and pump_rate = 0.
struct ModelParams {
  int n_atoms = 1;
  double loss_rate = 0.0;
  double pump_rate = 0.0;
  PumpDiscipline pump = PumpDiscipline::Quiet;
};

void validate(const ModelParams& params);  // throws DomainError

// Full microstate of the jump process: n atoms in the upper state, m light
// quanta, and the clock.  In a closed system n_upper + m_quanta is conserved.
struct SystemState {
  int n_upper = 0;
  long long m_quanta = 0;
  double t = 0.0;
};

void validate(const SystemState& state, const ModelParams& params);

enum class EventKind : std::uint8_t { Emission, Absorption, Detection, Pump };

// Jump table:
//   Emission    (n,m) -> (n-1, m+1)
//   Absorption  (n,m) -> (n+1, m-1)
//   Detection   (n,m) -> (n,   m-1)
//   Pump        (n,m) -> (n+1, m)
struct TimedEvent {
  double t = 0.0;
  EventKind kind = EventKind::Emission;
};

// Ordered record of one run.  Event times are strictly increasing and lie
// within [0, duration].
struct EventTrace {
  std::vector<TimedEvent> events;
  double duration = 0.0;
  ModelParams params;
  std::uint64_t seed = 0;
};

// Stimulated emission rate E(n,m) = n (m+1); the +1 is the spontaneous term.
double emission_rate(const SystemState& state);

// Stimulated absorption rate A(n,m) = (N-n) m; zero at m = 0, so the quantum
// count can never go negative.
double absorption_rate(const SystemState& state, const ModelParams& params);

// Detection rate Q = alpha m.
double detection_rate(const SystemState& state, const ModelParams& params);

// Applies one jump, leaving the clock to the caller.  Throws BoundsViolation
// if the jump would produce n < 0, n > N or m < 0 (a simulator bug, or a
// pump arriving while all atoms are excited).
SystemState apply_event(SystemState state, EventKind kind,
                        const ModelParams& params);

// One-letter codes used by the trace CSV format: E, A, Q, P.
char event_code(EventKind kind);
EventKind event_from_code(char code);

// Drops events before t_burn and rebases the clock so the trace starts at 0.
// Stationary statistics and the spectral estimator operate on rebased traces.
EventTrace trim_burn_in(const EventTrace& trace, double t_burn);

long long count_events(const EventTrace& trace, EventKind kind);

}  // namespace lasernoise
