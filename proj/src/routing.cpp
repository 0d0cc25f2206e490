#include "record/routing.hpp"

namespace record {

namespace {

bool edge_failed(const FailedLinkSet& failed, RingId from, RingId to) {
  return !failed.empty() && failed.count({from, to}) != 0;
}

}  // namespace

LookupResult greedy_lookup(const RingDirectory& directory, RingId start,
                           RingId key, const FailedLinkSet& failed_links) {
  LookupResult result;
  result.path.push_back(start);

  const RingId owner = directory.successor_of(key).id;
  const NodeState* u = &directory.at(start);

  while (true) {
    if (u->id == owner) {
      result.success = true;
      result.owner = owner;
      return result;
    }

    const double du = clockwise_distance(u->id, key);
    const bool owner_adjacent = (u->succ == owner);
    bool live_edge_to_owner = false;
    const NodeState* best = nullptr;
    double best_d = du;

    auto consider = [&](RingId v) {
      if (v == u->id || edge_failed(failed_links, u->id, v)) return;
      if (owner_adjacent && v == owner) live_edge_to_owner = true;
      const double dv = clockwise_distance(v, key);
      if (dv < best_d) {
        best_d = dv;
        best = &directory.at(v);
      }
    };

    for (const auto& [slot, target] : u->links) consider(target);
    consider(u->succ);

    if (live_edge_to_owner) {
      // Final hop: the current node's successor owns the key.
      result.path.push_back(owner);
      result.success = true;
      result.owner = owner;
      return result;
    }
    if (best == nullptr) {
      return result;  // dead end: unreachable, partial path
    }
    result.path.push_back(best->id);
    u = best;
  }
}

LookupResult greedy_lookup(const NetworkState& net, RingId start, RingId key) {
  return greedy_lookup(net.directory, start, key, net.failed_links);
}

ResolveResult resolve_interval_target(const RingDirectory& directory,
                                      RingId u, RingId x) {
  ResolveResult r;
  r.target = directory.successor_of(x).id;
  static const FailedLinkSet kNoFailures;
  const LookupResult lr = greedy_lookup(directory, u, x, kNoFailures);
  r.hops = lr.hops();
  return r;
}

}  // namespace record
