#pragma once

#include <cstdint>
#include <stdexcept>

#include "batchq/arrival.hpp"
#include "batchq/discipline.hpp"
#include "batchq/params.hpp"
#include "batchq/rng.hpp"
#include "batchq/sim/path.hpp"

namespace batchq::sim {

/// Aggregated: with i customers in service the next potential departure is
/// drawn as Exp(i*mu) and the completing position as uniform on {1..i} --
/// one draw pair per event, no per-customer state. PerCustomer: every
/// customer carries its own Exp(mu) clock, resampled each inter-event
/// interval; same law by memorylessness, O(i) per event. PerCustomer exists
/// as a fidelity oracle for the aggregated engine.
enum class Engine { Aggregated, PerCustomer };

/// Exactly one of the two stop conditions is active.
struct StopRule {
  double horizon = 0.0;
  std::uint64_t max_events = 0;

  static StopRule at_time(double horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("StopRule: horizon must be > 0");
    StopRule s;
    s.horizon = horizon;
    return s;
  }
  static StopRule after_events(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("StopRule: event count must be >= 1");
    StopRule s;
    s.max_events = n;
    return s;
  }
  bool by_time() const { return horizon > 0.0; }
};

/// Run one realization of the batch-departure G/M/infinity queue.
///
/// If a departure clock and the next arrival land on the same float instant
/// the departure is processed first. Paths are bit-reproducible per
/// (seed, stream_id). Set keep_events = false to drop the event log (the
/// step function is always recorded); departure_records needs the log.
QueuePath simulate(const ModelParams& params, const ArrivalModel& arrival,
                   const Discipline& discipline, Engine engine, const StopRule& stop, int q0,
                   RngStream& rng, bool keep_events = true);

}  // namespace batchq::sim
