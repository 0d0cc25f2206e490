#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace record {

using Rng = std::mt19937_64;

// Point on the unit identifier circle [0, 1). Construction reduces any
// finite real modulo 1, so arithmetic that wraps past 1 or dips below 0
// lands back on the circle. Equality is exact.
class RingId {
 public:
  constexpr RingId() = default;
  explicit RingId(double v) : v_(reduce(v)) {}

  double value() const { return v_; }

  friend bool operator==(RingId a, RingId b) { return a.v_ == b.v_; }
  friend bool operator!=(RingId a, RingId b) { return a.v_ != b.v_; }
  friend bool operator<(RingId a, RingId b) { return a.v_ < b.v_; }

 private:
  static double reduce(double v);
  double v_ = 0.0;
};

// Clockwise arc [lo, hi). lo == hi denotes the empty arc; a full circle is
// not representable.
struct Arc {
  RingId lo;
  RingId hi;
};

// Distance travelled clockwise from a to b: (b - a) mod 1, in [0, 1).
double clockwise_distance(RingId a, RingId b);

double arc_length(const Arc& arc);

// Half-open membership: x is in [lo, hi). The upper bound is exclusive.
bool in_arc(RingId x, const Arc& arc);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

// Uniform integer in [0, n), rejection-sampled so every value is equally
// likely. n must be positive.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

RingId sample_uniform_id(Rng& rng);

// Uniform draw inside a non-empty arc.
RingId sample_in_arc(const Arc& arc, Rng& rng);

// Deterministic, well-mixed placement of an external string key onto the
// circle (FNV-1a with a splitmix64 finalizer).
RingId hash_to_ring(const std::string& key);

}  // namespace record
