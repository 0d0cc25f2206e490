#include "record/ring.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace record {

double RingId::reduce(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("ring id must be finite");
  }
  double r = v - std::floor(v);
  // v slightly below an integer can round r up to exactly 1.0.
  if (r >= 1.0) r = 0.0;
  return r;
}

double clockwise_distance(RingId a, RingId b) {
  double d = b.value() - a.value();
  if (d < 0.0) d += 1.0;
  // A tiny negative difference can round to 1.0 after the wrap; keep the
  // result inside [0, 1) without collapsing a near-full circle to zero.
  if (d >= 1.0) d = std::nextafter(1.0, 0.0);
  return d;
}

double arc_length(const Arc& arc) { return clockwise_distance(arc.lo, arc.hi); }

bool in_arc(RingId x, const Arc& arc) {
  return clockwise_distance(arc.lo, x) < clockwise_distance(arc.lo, arc.hi);
}

double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

RingId sample_uniform_id(Rng& rng) { return RingId(uniform_unit(rng)); }

RingId sample_in_arc(const Arc& arc, Rng& rng) {
  const double len = arc_length(arc);
  if (len == 0.0) throw std::invalid_argument("cannot sample from empty arc");
  RingId x(arc.lo.value() + uniform_unit(rng) * len);
  // Rounding can nudge the draw onto the exclusive upper bound; snap back.
  if (!in_arc(x, arc)) x = arc.lo;
  return x;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RingId hash_to_ring(const std::string& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a offset basis
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;  // FNV prime
  }
  return RingId(static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53);
}

}  // namespace record
