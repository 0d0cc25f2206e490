#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "record/metrics.hpp"
#include "record/network.hpp"

namespace record {

enum class Regime { kStatic, kExpanding, kShrinking, kStable };

Regime regime_from_string(const std::string& name);
std::string to_string(Regime regime);

// Driver parameters for a churned run. Rates are per-tick Poisson means.
struct ChurnConfig {
  Regime regime = Regime::kStable;
  double join_rate = 0.0;
  double leave_rate = 0.0;
  std::uint64_t ticks = 0;
  std::uint64_t n_initial = 0;
  int k = 2;
  std::uint64_t seed = 0;
  int lookups_per_tick = 0;

  // Throws if the rates contradict the declared regime or a field is
  // out of range.
  void validate() const;
};

// Parameters for a one-shot (no churn) network build.
struct StaticConfig {
  std::uint64_t n = 0;
  int k = 2;
  std::uint64_t seed = 0;
  bool ideal = false;  // evenly spaced ids i/n instead of uniform draws
  int lookup_samples = 0;
};

// Sample from Poisson(mean). Exact inversion by product of uniforms;
// fine for the per-tick event counts used here.
std::uint64_t poisson_draw(Rng& rng, double mean);

// Build a network of config.n nodes in one shot: place ids, wire the
// successor cycle, give every node the exact size, then build link
// tables in ring order. Returns the network and one measurement.
std::pair<NetworkState, MetricsRecord> run_static(const StaticConfig& config);

// Bootstrap n_initial nodes through the join protocol, then run
// config.ticks ticks of Poisson join/leave events with one measurement
// per tick. If the network empties, the run truncates.
std::pair<NetworkState, std::vector<MetricsRecord>> run_churn(
    const ChurnConfig& config);

// Copy the network and mark each outgoing link failed independently
// with probability p. Successor edges are included unless
// spare_successor_links is set; failed links are never repaired.
NetworkState inject_link_failures(const NetworkState& net, double p, Rng& rng,
                                  bool spare_successor_links = false);

}  // namespace record
