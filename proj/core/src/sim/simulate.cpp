#include "batchq/sim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace batchq::sim {

namespace {

struct Departure {
  int survivors;
  int batch;
  int completer;
};

Departure apply_departure(const Discipline& discipline, int size, RngStream& rng) {
  const int completer = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(size)));
  if (std::holds_alternative<FifoBatch>(discipline)) {
    return Departure{size - completer, completer, completer};
  }
  if (std::holds_alternative<LifoBatch>(discipline)) {
    return Departure{completer - 1, size - completer + 1, completer};
  }
  const auto& gf = std::get<GeneralFraction>(discipline);
  const double fraction = gf.cut.sample(rng);
  int survivors = static_cast<int>(std::floor(fraction * size));
  survivors = std::clamp(survivors, 0, size - 1);
  return Departure{survivors, size - survivors, completer};
}

}  // namespace

QueuePath simulate(const ModelParams& params, const ArrivalModel& arrival,
                   const Discipline& discipline, Engine engine, const StopRule& stop, int q0,
                   RngStream& rng, bool keep_events) {
  if (q0 < 0) throw std::invalid_argument("simulate: q0 must be >= 0");
  if (!stop.by_time() && stop.max_events == 0)
    throw std::invalid_argument("simulate: stop rule is empty");

  QueuePath path;
  path.q0 = q0;
  path.has_events = keep_events;

  const double mu = params.mu;
  double t = 0.0;
  int q = q0;
  double next_arrival = arrival.sample(rng);
  std::uint64_t events = 0;

  const bool by_time = stop.by_time();
  if (!by_time) {
    path.step_times.reserve(stop.max_events);
    path.step_sizes.reserve(stop.max_events);
  }

  for (;;) {
    double departure = std::numeric_limits<double>::infinity();
    int completer_hint = 0;
    if (q > 0) {
      if (engine == Engine::Aggregated) {
        departure = t + rng.exponential(static_cast<double>(q) * mu);
      } else {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 1; j <= q; ++j) {
          const double clock = rng.exponential(mu);
          if (clock < best) {
            best = clock;
            completer_hint = j;
          }
        }
        departure = t + best;
      }
    }

    const bool is_departure = departure <= next_arrival;
    const double event_time = is_departure ? departure : next_arrival;
    if (by_time && event_time > stop.horizon) {
      path.horizon = stop.horizon;
      return path;
    }

    t = event_time;
    EventRecord record;
    record.t = t;
    if (is_departure) {
      Departure dep;
      if (engine == Engine::Aggregated) {
        dep = apply_departure(discipline, q, rng);
      } else {
        // completer already determined by the winning clock
        if (std::holds_alternative<FifoBatch>(discipline)) {
          dep = Departure{q - completer_hint, completer_hint, completer_hint};
        } else if (std::holds_alternative<LifoBatch>(discipline)) {
          dep = Departure{completer_hint - 1, q - completer_hint + 1, completer_hint};
        } else {
          const auto& gf = std::get<GeneralFraction>(discipline);
          const double fraction = gf.cut.sample(rng);
          int survivors = static_cast<int>(std::floor(fraction * q));
          survivors = std::clamp(survivors, 0, q - 1);
          dep = Departure{survivors, q - survivors, completer_hint};
        }
      }
      q = dep.survivors;
      record.kind = EventKind::DepartureBatch;
      record.batch_size = dep.batch;
      record.completer_position = dep.completer;
    } else {
      q += 1;
      record.kind = EventKind::Arrival;
      next_arrival = t + arrival.sample(rng);
    }

    path.step_times.push_back(t);
    path.step_sizes.push_back(q);
    if (keep_events) path.events.push_back(record);
    ++events;
    if (!by_time && events >= stop.max_events) {
      path.horizon = t;
      return path;
    }
  }
}

int QueuePath::size_at(double t) const {
  if (step_times.empty() || t < step_times.front()) return q0;
  const auto it = std::upper_bound(step_times.begin(), step_times.end(), t);
  const auto idx = static_cast<std::size_t>(it - step_times.begin());
  return step_sizes[idx - 1];
}

void write_path_csv(std::ostream& out, const QueuePath& path) {
  out << "t,kind,q_after,batch_size\n";
  char buf[40];
  int prev = path.q0;
  for (std::size_t i = 0; i < path.step_times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", path.step_times[i]);
    const int q = path.step_sizes[i];
    const int delta = q - prev;
    if (delta == 1) {
      out << buf << ",arrival," << q << ",0\n";
    } else {
      out << buf << ",departure," << q << ',' << -delta << '\n';
    }
    prev = q;
  }
}

}  // namespace batchq::sim
