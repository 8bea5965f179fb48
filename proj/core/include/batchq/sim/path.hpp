#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace batchq::sim {

enum class EventKind : std::uint8_t { Arrival, DepartureBatch };

struct EventRecord {
  double t = 0.0;
  EventKind kind = EventKind::Arrival;
  int batch_size = 0;          // number of customers leaving; 0 for arrivals
  int completer_position = 0;  // queue position (1-based) whose service completed; 0 for arrivals
};

/// Right-continuous step function of the queue size plus an optional event
/// log. Steps record the size right after each event; the size before the
/// first event is q0. The observation window is [0, horizon].
struct QueuePath {
  int q0 = 0;
  double horizon = 0.0;
  std::vector<double> step_times;
  std::vector<int> step_sizes;
  bool has_events = false;
  std::vector<EventRecord> events;

  std::size_t num_steps() const { return step_times.size(); }

  /// Queue size at time t, right-continuous.
  int size_at(double t) const;
};

/// Line-oriented export `t,kind,q_after,batch_size`, floats at 17
/// significant digits so that replays diff cleanly.
void write_path_csv(std::ostream& out, const QueuePath& path);

}  // namespace batchq::sim
