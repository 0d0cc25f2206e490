#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "record/ring.hpp"

namespace record {

// One span of the recursive division relative to some node id. Level 1
// splits the whole circle into k slots of length 1/k; each deeper level
// splits the previous slot 1 again, down to level c with length 1/k^c.
struct Interval {
  int level = 0;
  int slot = 0;
  Arc arc;
};

// (level, slot) -> link target, for the slots a node actually filled.
using LinkKey = std::pair<int, int>;
using LinkTable = std::map<LinkKey, RingId>;

struct NodeState {
  RingId id;
  RingId succ;
  RingId pred;
  double n_est = 1.0;        // fresh network-size estimate
  double n_est_stale = 1.0;  // estimate in force when links were last built
  LinkTable links;
  int incoming_count = 0;
};

// Directed (source, target) edges currently marked as failed.
using FailedLinkSet = std::set<std::pair<RingId, RingId>>;

// Number of division levels: the smallest c >= 1 with k^c >= n_est.
int level_count(double n_est, int k);

// Arc of slot j at the given level, relative to node id s:
// [s + (j-1)/k^level, s + j/k^level) modulo 1.
Interval interval_bounds(RingId s, double n_est, int k, int level, int slot);

// The intervals a node keeps links into: slots 2..k at levels 1..c-1 and
// slots 1..k at level c. Their arcs tile [s, s+1) exactly.
std::vector<Interval> linked_intervals(RingId s, double n_est, int k);

// Ordered set of live nodes keyed by ring id. Insertion rejects duplicate
// ids (the no-collision invariant); queries reject an empty directory.
class RingDirectory {
 public:
  using Map = std::map<RingId, NodeState>;
  using iterator = Map::iterator;
  using const_iterator = Map::const_iterator;

  bool contains(RingId id) const { return nodes_.count(id) != 0; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  NodeState& at(RingId id);
  const NodeState& at(RingId id) const;

  void insert(const NodeState& node);
  void erase(RingId id);

  // The live node owning key x: minimal clockwise_distance(x, id), distance
  // zero allowed (a node owns its own id).
  NodeState& successor_of(RingId x);
  const NodeState& successor_of(RingId x) const;

  // The counter-clockwise neighbor: minimal strictly positive
  // clockwise_distance(id, x).
  NodeState& predecessor_of(RingId x);
  const NodeState& predecessor_of(RingId x) const;

  std::vector<RingId> ids() const;

  iterator begin() { return nodes_.begin(); }
  iterator end() { return nodes_.end(); }
  const_iterator begin() const { return nodes_.begin(); }
  const_iterator end() const { return nodes_.end(); }

 private:
  Map nodes_;
};

}  // namespace record
