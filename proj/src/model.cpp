#include "lasernoise/model.hpp"

#include <string>

namespace lasernoise {

void validate(const ModelParams& params) {
  if (params.n_atoms < 1)
    throw DomainError("n_atoms must be >= 1, got " +
                      std::to_string(params.n_atoms));
  if (params.loss_rate < 0.0)
    throw DomainError("loss_rate must be >= 0");
  if (params.pump_rate < 0.0)
    throw DomainError("pump_rate must be >= 0");
}

void validate(const SystemState& state, const ModelParams& params) {
  if (state.n_upper < 0 || state.n_upper > params.n_atoms)
    throw DomainError("n_upper out of [0, N]");
  if (state.m_quanta < 0)
    throw DomainError("m_quanta must be >= 0");
  if (state.t < 0.0)
    throw DomainError("time must be >= 0");
}

double emission_rate(const SystemState& state) {
  return static_cast<double>(state.n_upper) *
         (static_cast<double>(state.m_quanta) + 1.0);
}

double absorption_rate(const SystemState& state, const ModelParams& params) {
  return static_cast<double>(params.n_atoms - state.n_upper) *
         static_cast<double>(state.m_quanta);
}

double detection_rate(const SystemState& state, const ModelParams& params) {
  return params.loss_rate * static_cast<double>(state.m_quanta);
}

SystemState apply_event(SystemState state, EventKind kind,
                        const ModelParams& params) {
  switch (kind) {
    case EventKind::Emission:
      state.n_upper -= 1;
      state.m_quanta += 1;
      break;
    case EventKind::Absorption:
      state.n_upper += 1;
      state.m_quanta -= 1;
      break;
    case EventKind::Detection:
      state.m_quanta -= 1;
      break;
    case EventKind::Pump:
      state.n_upper += 1;
      break;
  }
  if (state.n_upper < 0 || state.n_upper > params.n_atoms ||
      state.m_quanta < 0)
    throw BoundsViolation("jump leaves the state space: n=" +
                          std::to_string(state.n_upper) +
                          " m=" + std::to_string(state.m_quanta));
  return state;
}

char event_code(EventKind kind) {
  switch (kind) {
    case EventKind::Emission: return 'E';
    case EventKind::Absorption: return 'A';
    case EventKind::Detection: return 'Q';
    case EventKind::Pump: return 'P';
  }
  throw DomainError("unknown event kind");
}

EventKind event_from_code(char code) {
  switch (code) {
    case 'E': return EventKind::Emission;
    case 'A': return EventKind::Absorption;
    case 'Q': return EventKind::Detection;
    case 'P': return EventKind::Pump;
  }
  throw DomainError(std::string("unknown event code '") + code + "'");
}

EventTrace trim_burn_in(const EventTrace& trace, double t_burn) {
  if (t_burn < 0.0 || t_burn >= trace.duration)
    throw DomainError("burn-in must lie in [0, duration)");
  EventTrace out;
  out.duration = trace.duration - t_burn;
  out.params = trace.params;
  out.seed = trace.seed;
  for (const auto& ev : trace.events)
    if (ev.t >= t_burn) out.events.push_back({ev.t - t_burn, ev.kind});
  return out;
}

long long count_events(const EventTrace& trace, EventKind kind) {
  long long n = 0;
  for (const auto& ev : trace.events)
    if (ev.kind == kind) ++n;
  return n;
}

}  // namespace lasernoise
