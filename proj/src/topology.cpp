#include "record/topology.hpp"

#include <stdexcept>

namespace record {

namespace {

// k^e as a double; exact for the magnitudes level_count can produce.
double pow_int(int k, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= k;
  return r;
}

// s advanced clockwise by offset in [0, 1]. Offsets 0 and 1 return s
// exactly so slot boundaries close up bit-for-bit at the wrap.
RingId advance(RingId s, double offset) {
  if (offset == 0.0 || offset == 1.0) return s;
  double v = s.value() + offset;
  if (v >= 1.0) v -= 1.0;
  return RingId(v);
}

}  // namespace

int level_count(double n_est, int k) {
  if (k < 2) throw std::invalid_argument("level_count: k must be >= 2");
  if (!(n_est > 1.0)) {
    throw std::invalid_argument("level_count: n_est must exceed 1");
  }
  int c = 1;
  double p = k;
  while (p < n_est) {
    p *= k;
    ++c;
  }
  return c;
}

Interval interval_bounds(RingId s, double n_est, int k, int level, int slot) {
  const int c = level_count(n_est, k);
  if (level < 1 || level > c) {
    throw std::invalid_argument("interval_bounds: level out of range");
  }
  if (slot < 1 || slot > k) {
    throw std::invalid_argument("interval_bounds: slot out of range");
  }
  const double den = pow_int(k, level);
  Interval iv;
  iv.level = level;
  iv.slot = slot;
  iv.arc.lo = advance(s, (slot - 1) / den);
  iv.arc.hi = advance(s, slot / den);
  return iv;
}

std::vector<Interval> linked_intervals(RingId s, double n_est, int k) {
  const int c = level_count(n_est, k);
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(c - 1) * (k - 1) + k);
  for (int level = 1; level < c; ++level) {
    for (int slot = 2; slot <= k; ++slot) {
      out.push_back(interval_bounds(s, n_est, k, level, slot));
    }
  }
  for (int slot = 1; slot <= k; ++slot) {
    out.push_back(interval_bounds(s, n_est, k, c, slot));
  }
  return out;
}

NodeState& RingDirectory::at(RingId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no node with that id");
  return it->second;
}

const NodeState& RingDirectory::at(RingId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no node with that id");
  return it->second;
}

void RingDirectory::insert(const NodeState& node) {
  if (!nodes_.emplace(node.id, node).second) {
    throw std::invalid_argument("id collision: node already present");
  }
}

void RingDirectory::erase(RingId id) {
  if (nodes_.erase(id) == 0) throw std::out_of_range("no node with that id");
}

NodeState& RingDirectory::successor_of(RingId x) {
  if (nodes_.empty()) throw std::invalid_argument("empty directory");
  auto it = nodes_.lower_bound(x);
  if (it == nodes_.end()) it = nodes_.begin();
  return it->second;
}

const NodeState& RingDirectory::successor_of(RingId x) const {
  return const_cast<RingDirectory*>(this)->successor_of(x);
}

NodeState& RingDirectory::predecessor_of(RingId x) {
  if (nodes_.empty()) throw std::invalid_argument("empty directory");
  auto it = nodes_.lower_bound(x);
  if (it == nodes_.begin()) it = nodes_.end();
  --it;
  return it->second;
}

const NodeState& RingDirectory::predecessor_of(RingId x) const {
  return const_cast<RingDirectory*>(this)->predecessor_of(x);
}

std::vector<RingId> RingDirectory::ids() const {
  std::vector<RingId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, node] : nodes_) out.push_back(id);
  return out;
}

}  // namespace record
