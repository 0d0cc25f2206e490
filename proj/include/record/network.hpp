#pragma once

#include <cstdint>

#include "record/topology.hpp"

namespace record {

// Knobs for link construction and maintenance. The relink thresholds are a
// single ratio so that upper = 1/lower holds by construction.
struct LinkPolicy {
  double relink_ratio = 2.0;  // rebuild when n_est/n_est_stale >= this or <= 1/this
};

// Everything one simulated overlay carries between events. Copyable so
// fault injection can work on an independent snapshot.
struct NetworkState {
  RingDirectory directory;
  FailedLinkSet failed_links;  // directed (source, target) pairs
  std::uint64_t tick = 0;
  Rng rng;
  int k = 2;
  LinkPolicy policy;
};

}  // namespace record
