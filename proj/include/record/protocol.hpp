#pragma once

#include <optional>

#include "record/network.hpp"

namespace record {

// Local size estimate from the pred -> succ span (the f=3 neighborhood
// covers two gaps): 2 / clockwise_distance(pred, succ). Directories of one
// or two nodes return the exact count. Does not mutate the node.
double estimate_network_size(const NodeState& node, const RingDirectory& dir);

// Cap on the incoming links one node accepts, ceil(2k * log_k(n_est)):
// roughly twice the expected out-degree, so it trims hot spots without
// starving construction.
int incoming_cap(double n_est, int k);

bool accept_incoming(const NodeState& target, int k);

// Retry budget per interval: ceil(sqrt(n_est * arc_length)), the square
// root of the interval's expected occupancy, never less than one.
int retry_budget(double n_est, double len);

struct JoinStats {
  int lookup_messages = 0;  // greedy hops spent placing + wiring the node
};

// Rebuilds node's entire link table (which must be empty on entry): for
// each linked interval, up to retry_budget draws of a uniform point in the
// arc, accepting the point's successor iff it lies within the interval
// (closed at the upper boundary) and has incoming capacity. Sets
// n_est_stale to the estimate used. Returns greedy message cost.
JoinStats build_links(NetworkState& net, RingId node_id);

// Drops every outgoing link of the node, decrementing the targets'
// incoming counts and forgetting failure marks on those edges.
void drop_links(NetworkState& net, RingId node_id);

// Single-slot repair: one draw-and-retry pass for (level, slot) under the
// geometry the table was built with (n_est_stale). The slot may stay empty.
void rebuild_slot(NetworkState& net, RingId holder_id, int level, int slot);

// Splices new_id into the ring, re-estimates the sizes of the new node and
// both neighbors, builds the new node's links, and lets each neighbor
// evaluate the relink criterion. entry, when given, is the live node the
// join enters through (contributes the placement lookup to message cost).
JoinStats join(NetworkState& net, RingId new_id,
               std::optional<RingId> entry = std::nullopt);

// Removes the node: re-splices the neighbors, snaps its outgoing links,
// lets every holder of a link to it re-draw that slot, then each neighbor
// re-estimates and evaluates the relink criterion.
void leave(NetworkState& net, RingId node_id);

// If the fresh estimate drifted from the stored one by the policy ratio
// (boundary inclusive), drop all links and rebuild. Returns whether a
// rebuild happened.
bool maybe_relink(NetworkState& net, RingId node_id);

}  // namespace record
