#include "batchq/sim/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace batchq::sim {

std::vector<double> busy_periods(const QueuePath& path) {
  std::vector<double> durations;
  int prev = path.q0;
  double start = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < path.step_times.size(); ++i) {
    const int q = path.step_sizes[i];
    const double t = path.step_times[i];
    if (prev == 0 && q == 1) {
      start = t;
    } else if (q == 0 && !std::isnan(start)) {
      durations.push_back(t - start);
      start = std::numeric_limits<double>::quiet_NaN();
    }
    prev = q;
  }
  return durations;
}

std::vector<double> time_average_pmf(const QueuePath& path, double burn_in, int k_max) {
  if (!(path.horizon > burn_in))
    throw std::invalid_argument("time_average_pmf: horizon must exceed burn_in");
  if (k_max < 0) throw std::invalid_argument("time_average_pmf: k_max must be >= 0");
  std::vector<double> occupancy(static_cast<std::size_t>(k_max) + 1, 0.0);
  const double window = path.horizon - burn_in;

  int level = path.q0;
  double seg_start = 0.0;
  auto account = [&](double seg_end) {
    const double overlap = std::min(seg_end, path.horizon) - std::max(seg_start, burn_in);
    if (overlap > 0.0 && level <= k_max) occupancy[static_cast<std::size_t>(level)] += overlap;
  };
  for (std::size_t i = 0; i < path.step_times.size(); ++i) {
    account(path.step_times[i]);
    seg_start = path.step_times[i];
    level = path.step_sizes[i];
  }
  account(path.horizon);

  for (double& v : occupancy) v /= window;
  return occupancy;
}

std::vector<DepartureRecord> departure_records(const QueuePath& path) {
  if (!path.has_events)
    throw std::logic_error("departure_records: path was simulated without an event log");
  std::vector<DepartureRecord> records;
  long period = 1;  // inter-arrival period (S_{n-1}, S_n), 1-based
  int level = path.q0;
  int start_level = path.q0;
  int departures_in_period = 0;
  double last_departure = 0.0;
  for (const EventRecord& ev : path.events) {
    if (ev.kind == EventKind::Arrival) {
      if (departures_in_period > 0) {
        DepartureRecord r;
        r.ordinal = static_cast<long>(records.size()) + 1;
        r.period_index = period;
        r.start_level = start_level;
        r.end_level = level;
        r.last_departure = last_departure;
        r.single = departures_in_period == 1;
        records.push_back(r);
      }
      ++period;
      level += 1;
      start_level = level;
      departures_in_period = 0;
    } else {
      level -= ev.batch_size;
      ++departures_in_period;
      last_departure = ev.t;
    }
  }
  return records;
}

}  // namespace batchq::sim
