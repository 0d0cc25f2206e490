#include "record/simulator.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "record/protocol.hpp"
#include "record/ring.hpp"

namespace record {

Regime regime_from_string(const std::string& name) {
  if (name == "static") return Regime::kStatic;
  if (name == "expanding") return Regime::kExpanding;
  if (name == "shrinking") return Regime::kShrinking;
  if (name == "stable") return Regime::kStable;
  throw std::invalid_argument("unknown regime: " + name);
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kStatic: return "static";
    case Regime::kExpanding: return "expanding";
    case Regime::kShrinking: return "shrinking";
    case Regime::kStable: return "stable";
  }
  throw std::logic_error("unhandled regime");
}

void ChurnConfig::validate() const {
  if (k < 2) throw std::invalid_argument("arity k must be >= 2");
  if (n_initial < 1)
    throw std::invalid_argument("n_initial must be >= 1");
  if (lookups_per_tick < 0)
    throw std::invalid_argument("lookups_per_tick must be >= 0");
  if (!(join_rate >= 0.0) || !(leave_rate >= 0.0) ||
      !std::isfinite(join_rate) || !std::isfinite(leave_rate))
    throw std::invalid_argument("rates must be finite and >= 0");
  switch (regime) {
    case Regime::kStatic:
      if (join_rate != 0.0 || leave_rate != 0.0)
        throw std::invalid_argument("static regime requires zero rates");
      break;
    case Regime::kExpanding:
      if (!(join_rate > leave_rate))
        throw std::invalid_argument(
            "expanding regime requires join_rate > leave_rate");
      break;
    case Regime::kShrinking:
      if (!(join_rate < leave_rate))
        throw std::invalid_argument(
            "shrinking regime requires join_rate < leave_rate");
      break;
    case Regime::kStable:
      if (join_rate != leave_rate)
        throw std::invalid_argument(
            "stable regime requires join_rate == leave_rate");
      break;
  }
}

std::uint64_t poisson_draw(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson mean must be finite and >= 0");
  std::uint64_t total = 0;
  // Split large means so exp(-mean) stays well away from underflow;
  // Poisson(a + b) is the sum of independent Poisson(a) and Poisson(b).
  while (mean > 30.0) {
    total += poisson_draw(rng, 30.0);
    mean -= 30.0;
  }
  if (mean == 0.0) return total;
  const double threshold = std::exp(-mean);
  double product = 1.0;
  std::uint64_t count = 0;
  do {
    product *= uniform_unit(rng);
    count += 1;
  } while (product > threshold);
  return total + count - 1;
}

namespace {

RingId fresh_id(const RingDirectory& directory, Rng& rng) {
  while (true) {
    const RingId id = sample_uniform_id(rng);
    if (!directory.contains(id)) return id;
  }
}

RingId random_member(const RingDirectory& directory, Rng& rng) {
  const std::vector<RingId> ids = directory.ids();
  return ids[uniform_index(rng, ids.size())];
}

}  // namespace

std::pair<NetworkState, MetricsRecord> run_static(const StaticConfig& config) {
  if (config.n < 1) throw std::invalid_argument("n must be >= 1");
  if (config.k < 2) throw std::invalid_argument("arity k must be >= 2");
  if (config.lookup_samples < 0)
    throw std::invalid_argument("lookup_samples must be >= 0");

  NetworkState net;
  net.k = config.k;
  net.rng.seed(config.seed);

  const auto n = config.n;
  for (std::uint64_t i = 0; i < n; ++i) {
    NodeState node;
    node.id = config.ideal
                  ? RingId(static_cast<double>(i) / static_cast<double>(n))
                  : fresh_id(net.directory, net.rng);
    node.n_est = static_cast<double>(n);
    node.n_est_stale = node.n_est;
    net.directory.insert(node);
  }

  // The directory iterates in ring order; wire the successor cycle.
  const std::vector<RingId> ids = net.directory.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    NodeState& node = net.directory.at(ids[i]);
    node.succ = ids[(i + 1) % ids.size()];
    node.pred = ids[(i + ids.size() - 1) % ids.size()];
  }
  for (const RingId& id : ids) build_links(net, id);

  const MetricsRecord rec = measure(net, config.lookup_samples, net.rng);
  return {std::move(net), rec};
}

std::pair<NetworkState, std::vector<MetricsRecord>> run_churn(
    const ChurnConfig& config) {
  config.validate();

  NetworkState net;
  net.k = config.k;
  net.rng.seed(config.seed);

  for (std::uint64_t i = 0; i < config.n_initial; ++i) {
    const RingId id = fresh_id(net.directory, net.rng);
    if (net.directory.empty()) {
      join(net, id);
    } else {
      join(net, id, random_member(net.directory, net.rng));
    }
  }

  std::vector<MetricsRecord> series;
  series.reserve(config.ticks);
  for (std::uint64_t t = 1; t <= config.ticks; ++t) {
    net.tick = t;
    const std::uint64_t joins = poisson_draw(net.rng, config.join_rate);
    const std::uint64_t leaves = poisson_draw(net.rng, config.leave_rate);
    for (std::uint64_t j = 0; j < joins; ++j) {
      const RingId id = fresh_id(net.directory, net.rng);
      if (net.directory.empty()) {
        join(net, id);
      } else {
        join(net, id, random_member(net.directory, net.rng));
      }
    }
    for (std::uint64_t l = 0; l < leaves && !net.directory.empty(); ++l) {
      leave(net, random_member(net.directory, net.rng));
    }
    if (net.directory.empty()) break;  // extinction: truncate the series
    series.push_back(measure(net, config.lookups_per_tick, net.rng));
  }
  return {std::move(net), std::move(series)};
}

NetworkState inject_link_failures(const NetworkState& net, double p, Rng& rng,
                                  bool spare_successor_links) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("failure probability must be in [0, 1]");

  NetworkState out = net;
  for (const auto& [id, node] : out.directory) {
    std::set<RingId> targets;
    for (const auto& [slot, target] : node.links) targets.insert(target);
    if (!spare_successor_links) targets.insert(node.succ);
    for (const RingId& v : targets) {
      if (v == id) continue;
      if (spare_successor_links && v == node.succ) continue;
      if (uniform_unit(rng) < p) out.failed_links.insert({id, v});
    }
  }
  return out;
}

}  // namespace record
