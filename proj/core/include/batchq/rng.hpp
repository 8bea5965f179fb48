#pragma once

#include <cstdint>

namespace batchq {

/// Deterministic random stream, PCG XSL-RR 128/64 with stream selection.
///
/// A stream is addressed by a (seed, stream_id) pair. The same pair always
/// reproduces the same sample sequence, on any platform: the generator is
/// pure 128-bit integer arithmetic with a fixed multiplier, and every
/// distribution below is built on it by inverse transform or documented
/// rejection schemes (no libc rand, no std:: distributions, whose output is
/// implementation-defined).
///
/// Distinct stream_ids select distinct LCG increments and give independent
/// streams; parallel code takes disjoint stream_ids instead of sharing a
/// stream. A stream is single-owner mutable state and must not be shared
/// between concurrent tasks.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Next raw 64-bit output.
  std::uint64_t next_u64();

  /// Uniform on [0,1), 53-bit resolution.
  double next_double();

  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double next_open();

  /// Uniform on {0, 1, ..., n-1}; unbiased via rejection. n must be >= 1.
  std::uint64_t next_below(std::uint64_t n);

  /// Uniform on the open interval (lo, hi).
  double uniform(double lo, double hi);

  /// Exponential with the given rate; strictly positive.
  double exponential(double rate);

  /// Standard normal via Box-Muller (two uniforms per call).
  double normal();

  /// Gamma(shape, rate) via Marsaglia-Tsang; shape < 1 boosted through
  /// Gamma(shape+1) * U^(1/shape). Strictly positive.
  double gamma(double shape, double rate);

 private:
  using u128 = unsigned __int128;

  u128 state_;
  u128 inc_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

}  // namespace batchq
