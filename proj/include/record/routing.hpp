#pragma once

#include <vector>

#include "record/network.hpp"
#include "record/topology.hpp"

namespace record {

struct LookupResult {
  bool success = false;
  RingId owner;               // the key's owner; valid only on success
  std::vector<RingId> path;   // visited nodes, starting at the query origin
  int hops() const { return static_cast<int>(path.size()) - 1; }
};

// Greedy lookup: at each node, forward to the candidate (link-table targets
// plus the succ pointer, skipping failed edges) that minimizes the remaining
// clockwise distance to the key; the final hop goes to the owner once the
// current node's successor owns the key. Progress is strictly monotone, so
// no node is ever revisited. If no live candidate makes progress the lookup
// reports unreachable with the partial path.
LookupResult greedy_lookup(const RingDirectory& directory, RingId start,
                           RingId key, const FailedLinkSet& failed_links);

// Convenience overload using the network's own failed-link set.
LookupResult greedy_lookup(const NetworkState& net, RingId start, RingId key);

struct ResolveResult {
  RingId target;  // successor_of(directory, x)
  int hops = 0;   // hop count an equivalent greedy lookup incurs
};

// Oracle resolution of SUCC(x) plus the greedy hop cost of finding it from
// node u; used for message accounting during link construction.
ResolveResult resolve_interval_target(const RingDirectory& directory,
                                      RingId u, RingId x);

}  // namespace record
