#include "record/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "record/routing.hpp"

namespace record {

double estimate_network_size(const NodeState& node, const RingDirectory& dir) {
  const std::size_t n = dir.size();
  if (n <= 2) return static_cast<double>(n);
  return 2.0 / clockwise_distance(node.pred, node.succ);
}

int incoming_cap(double n_est, int k) {
  if (n_est <= 1.0) return 0;
  const double cap = 2.0 * k * std::log2(n_est) / std::log2(double(k));
  return static_cast<int>(std::ceil(cap - 1e-9));
}

bool accept_incoming(const NodeState& target, int k) {
  return target.incoming_count < incoming_cap(target.n_est, k);
}

int retry_budget(double n_est, double len) {
  const int q = static_cast<int>(std::ceil(std::sqrt(n_est * len)));
  return q < 1 ? 1 : q;
}

namespace {

// One draw-and-retry pass over an interval. Acceptance closes the upper arc
// boundary (cwd(lo, t) <= length) so a target sitting exactly on the
// boundary — every slot owner under ideal i/n spacing — still resolves.
bool try_fill_slot(NetworkState& net, NodeState& node, const Interval& iv,
                   double n_est, JoinStats* stats) {
  const double len = arc_length(iv.arc);
  const int q = retry_budget(n_est, len);
  for (int attempt = 0; attempt < q; ++attempt) {
    const RingId x = sample_in_arc(iv.arc, net.rng);
    if (stats != nullptr) {
      stats->lookup_messages +=
          resolve_interval_target(net.directory, node.id, x).hops;
    }
    const NodeState& t = net.directory.successor_of(x);
    if (t.id == node.id) continue;
    if (clockwise_distance(iv.arc.lo, t.id) > len) continue;
    if (!accept_incoming(t, net.k)) continue;
    node.links[{iv.level, iv.slot}] = t.id;
    net.directory.at(t.id).incoming_count += 1;
    return true;
  }
  return false;
}

void erase_failed_edges_touching(NetworkState& net, RingId id) {
  if (net.failed_links.empty()) return;
  for (auto it = net.failed_links.begin(); it != net.failed_links.end();) {
    if (it->first == id || it->second == id) {
      it = net.failed_links.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace

JoinStats build_links(NetworkState& net, RingId node_id) {
  NodeState& node = net.directory.at(node_id);
  if (!node.links.empty()) {
    throw std::logic_error("build_links requires an empty link table");
  }
  JoinStats stats;
  node.n_est_stale = node.n_est;
  if (node.n_est <= 1.0) return stats;  // alone: nothing to link
  for (const Interval& iv : linked_intervals(node.id, node.n_est, net.k)) {
    try_fill_slot(net, node, iv, node.n_est, &stats);
  }
  return stats;
}

void drop_links(NetworkState& net, RingId node_id) {
  NodeState& node = net.directory.at(node_id);
  for (const auto& [key, target] : node.links) {
    net.directory.at(target).incoming_count -= 1;
    if (!net.failed_links.empty()) net.failed_links.erase({node_id, target});
  }
  node.links.clear();
}

void rebuild_slot(NetworkState& net, RingId holder_id, int level, int slot) {
  NodeState& node = net.directory.at(holder_id);
  if (node.n_est_stale <= 1.0) return;
  const Interval iv =
      interval_bounds(node.id, node.n_est_stale, net.k, level, slot);
  try_fill_slot(net, node, iv, node.n_est_stale, nullptr);
}

JoinStats join(NetworkState& net, RingId new_id, std::optional<RingId> entry) {
  if (net.directory.contains(new_id)) {
    throw std::invalid_argument("join: id already present");
  }
  JoinStats stats;

  NodeState node;
  node.id = new_id;
  if (net.directory.empty()) {
    node.succ = new_id;
    node.pred = new_id;
    node.n_est = 1.0;
    node.n_est_stale = 1.0;
    net.directory.insert(node);
    return stats;
  }

  if (entry.has_value()) {
    stats.lookup_messages +=
        resolve_interval_target(net.directory, *entry, new_id).hops;
  }

  const RingId succ_id = net.directory.successor_of(new_id).id;
  const RingId pred_id = net.directory.predecessor_of(new_id).id;
  node.succ = succ_id;
  node.pred = pred_id;
  net.directory.insert(node);
  net.directory.at(pred_id).succ = new_id;
  net.directory.at(succ_id).pred = new_id;

  for (RingId id : {new_id, pred_id, succ_id}) {
    NodeState& n = net.directory.at(id);
    n.n_est = estimate_network_size(n, net.directory);
  }

  stats.lookup_messages += build_links(net, new_id).lookup_messages;

  maybe_relink(net, pred_id);
  if (succ_id != pred_id) maybe_relink(net, succ_id);
  return stats;
}

void leave(NetworkState& net, RingId node_id) {
  const NodeState departed = net.directory.at(node_id);  // copy; throws if absent

  drop_links(net, node_id);
  erase_failed_edges_touching(net, node_id);

  if (net.directory.size() == 1) {
    net.directory.erase(node_id);
    return;
  }

  net.directory.at(departed.pred).succ = departed.succ;
  net.directory.at(departed.succ).pred = departed.pred;
  net.directory.erase(node_id);

  // Every holder of a link to the departed node re-draws that slot.
  std::vector<std::pair<RingId, LinkKey>> broken;
  for (const auto& [id, holder] : net.directory) {
    for (const auto& [key, target] : holder.links) {
      if (target == node_id) broken.emplace_back(id, key);
    }
  }
  for (const auto& [holder_id, key] : broken) {
    net.directory.at(holder_id).links.erase(key);
    rebuild_slot(net, holder_id, key.first, key.second);
  }

  for (RingId id : {departed.pred, departed.succ}) {
    if (id == node_id || !net.directory.contains(id)) continue;
    NodeState& n = net.directory.at(id);
    n.n_est = estimate_network_size(n, net.directory);
    maybe_relink(net, id);
    if (departed.pred == departed.succ) break;  // two-node ring collapsed
  }
}

bool maybe_relink(NetworkState& net, RingId node_id) {
  NodeState& node = net.directory.at(node_id);
  const double ratio = node.n_est / node.n_est_stale;
  const double upper = net.policy.relink_ratio;
  if (ratio < upper && ratio > 1.0 / upper) return false;
  drop_links(net, node_id);
  build_links(net, node_id);
  return true;
}

}  // namespace record
