#include "batchq/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace batchq {

namespace {

using u128 = unsigned __int128;

constexpr u128 make_u128(std::uint64_t hi, std::uint64_t lo) {
  return (u128(hi) << 64) | u128(lo);
}

// Default PCG 128-bit LCG multiplier.
constexpr u128 kMultiplier = make_u128(0x2360ed051fc65da4ULL, 0x4385df649fccf645ULL);

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : state_(0), inc_((u128(stream_id) << 1) | 1u), seed_(seed), stream_id_(stream_id) {
  state_ = state_ * kMultiplier + inc_;
  state_ += u128(seed);
  state_ = state_ * kMultiplier + inc_;
}

std::uint64_t RngStream::next_u64() {
  state_ = state_ * kMultiplier + inc_;
  const std::uint64_t xored =
      static_cast<std::uint64_t>(state_ >> 64) ^ static_cast<std::uint64_t>(state_);
  const unsigned rot = static_cast<unsigned>(state_ >> 122);
  return (xored >> rot) | (xored << ((64u - rot) & 63u));
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("RngStream::next_below: n must be >= 1");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_open();
}

double RngStream::exponential(double rate) {
  return -std::log(next_open()) / rate;
}

double RngStream::normal() {
  const double u1 = next_open();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::gamma(double shape, double rate) {
  if (shape <= 0.0 || rate <= 0.0)
    throw std::invalid_argument("RngStream::gamma: shape and rate must be positive");
  if (shape < 1.0) {
    const double boosted = gamma(shape + 1.0, 1.0);
    return boosted * std::pow(next_open(), 1.0 / shape) / rate;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

}  // namespace batchq
