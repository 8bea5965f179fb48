#pragma once

#include <vector>

#include "batchq/sim/path.hpp"

namespace batchq::sim {

/// Durations of completed busy periods: from an arrival into the empty
/// system until the system next empties. A leading partial period (q0 > 0)
/// and the trailing incomplete one are discarded.
std::vector<double> busy_periods(const QueuePath& path);

/// Occupation-time fractions of states 0..k_max over (burn_in, horizon].
std::vector<double> time_average_pmf(const QueuePath& path, double burn_in, int k_max);

/// Per inter-arrival period containing at least one departure: the period
/// index, the queue size at its start and end, the last departure instant
/// inside it, and whether the departure instant was unique.
struct DepartureRecord {
  long ordinal = 0;       // 1-based among departure-bearing periods
  long period_index = 0;  // 1-based inter-arrival period index
  int start_level = 0;
  int end_level = 0;
  double last_departure = 0.0;
  bool single = false;
};

/// Requires the event log; the trailing incomplete period is discarded.
std::vector<DepartureRecord> departure_records(const QueuePath& path);

}  // namespace batchq::sim
