#include "lasernoise/io.hpp"

#include <sstream>

#include "doctest.h"
#include "lasernoise/rng.hpp"
#include "support/oracles.hpp"

using namespace lasernoise;

TEST_CASE("format_double round-trips exactly") {
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const double x = (rng.uniform01() - 0.5) * std::pow(10.0, i % 40 - 20.0);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(20.0) == "20");
}

TEST_CASE("trace CSV round-trips, random traces") {
  Rng rng(5);
  for (int it = 0; it < 25; ++it) {
    EventTrace trace;
    trace.duration = 1.0 + rng.uniform01() * 10.0;
    trace.seed = rng.next_u64();
    trace.params = {static_cast<int>(1 + rng.next_u64() % 100),
                    rng.uniform01() * 30.0, rng.uniform01() * 500.0,
                    (rng.next_u64() & 1) ? PumpDiscipline::Quiet
                                         : PumpDiscipline::Poisson};
    double t = 0.0;
    const int n_events = static_cast<int>(rng.next_u64() % 50);
    for (int e = 0; e < n_events; ++e) {
      t += rng.exponential(10.0 / trace.duration);
      if (t > trace.duration) break;
      const auto kind = static_cast<EventKind>(rng.next_u64() % 4);
      trace.events.push_back({t, kind});
    }

    std::stringstream buffer;
    write_trace_csv(trace, buffer);
    const EventTrace back = read_trace_csv(buffer);

    CHECK(back.duration == trace.duration);
    CHECK(back.seed == trace.seed);
    CHECK(back.params.n_atoms == trace.params.n_atoms);
    CHECK(back.params.loss_rate == trace.params.loss_rate);
    CHECK(back.params.pump_rate == trace.params.pump_rate);
    CHECK(back.params.pump == trace.params.pump);
    REQUIRE(back.events.size() == trace.events.size());
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      CHECK(back.events[i].t == trace.events[i].t);
      CHECK(back.events[i].kind == trace.events[i].kind);
    }
  }
}

TEST_CASE("trace CSV layout") {
  EventTrace trace;
  trace.duration = 2.0;
  trace.seed = 7;
  trace.params = {3, 1.5, 0.0, PumpDiscipline::Quiet};
  trace.events = {{0.25, EventKind::Emission}, {0.5, EventKind::Detection}};
  std::stringstream buffer;
  write_trace_csv(trace, buffer);
  const std::string text = buffer.str();
  CHECK(text.find("# seed=7\n") != std::string::npos);
  CHECK(text.find("t,kind\n") != std::string::npos);
  CHECK(text.find("0.25,E\n") != std::string::npos);
  CHECK(text.find("0.5,Q\n") != std::string::npos);
}

TEST_CASE("malformed trace CSV is rejected") {
  std::stringstream missing_header("0.5,E\n");
  CHECK_THROWS_AS(read_trace_csv(missing_header), DomainError);
  std::stringstream bad_kind("t,kind\n0.5,Z\n");
  CHECK_THROWS_AS(read_trace_csv(bad_kind), DomainError);
}

TEST_CASE("spectrum CSV and sidecar") {
  Spectrum spec;
  spec.tau_m = 4.0;
  spec.n_runs = 3;
  spec.omegas = {1.5707963267948966, 3.141592653589793};
  spec.values = {10.0, 20.5};
  spec.stderrs = {0.5, 0.75};
  spec.flagged = {0, 1};

  std::stringstream buffer;
  write_spectrum_csv(spec, buffer, {"tool test"});
  const std::string text = buffer.str();
  CHECK(text.find("# tool test\n") == 0);
  CHECK(text.find("omega,S,stderr,flagged\n") != std::string::npos);
  CHECK(text.find(",20.5,0.75,1\n") != std::string::npos);

  const std::string sidecar = spectrum_sidecar_json(
      spec, {100, 20.0, 1000.0, PumpDiscipline::Quiet}, {11, 12, 13});
  CHECK(sidecar.find("\"n_runs\": 3") != std::string::npos);
  CHECK(sidecar.find("\"tau_m\": 4.0") != std::string::npos);
  CHECK(sidecar.find("\"pump\": \"quiet\"") != std::string::npos);
  CHECK(sidecar.find("11") != std::string::npos);
}

TEST_CASE("pump names") {
  CHECK(pump_name(PumpDiscipline::Quiet) == "quiet");
  CHECK(pump_from_name("poisson") == PumpDiscipline::Poisson);
  CHECK_THROWS_AS(pump_from_name("steady"), DomainError);
}
