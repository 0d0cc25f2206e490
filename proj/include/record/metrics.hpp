#pragma once

#include <array>
#include <cstdint>

#include "record/network.hpp"

namespace record {

// One aggregated observation of a network. Hop statistics cover completed
// lookups only; failures are reported via unreachable_fraction. The
// histogram buckets |log2(estimate) - log2(n)| into unit-wide bins, the
// last bin open-ended.
struct MetricsRecord {
  std::uint64_t tick = 0;
  std::uint64_t n_actual = 0;
  double mean_log_estimate = 0.0;  // mean over nodes of log2(n_est)
  double mean_out_degree = 0.0;
  double mean_in_degree = 0.0;
  double mean_hops = 0.0;
  double p50_hops = 0.0;
  double p99_hops = 0.0;
  double unreachable_fraction = 0.0;
  std::array<std::uint64_t, 9> estimation_error_hist{};

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

// Expected out-degree (k-1) * log_k(n).
double theoretical_degree(double n, int k);

// Expected lookup path length 2(k-1)/k * log_k(n).
double theoretical_latency(double n, int k);

// Expected absorption time of the routing phase chain started at phase m:
// E[T_0] = 0, E[T_m] = 1 + sum_{i=1}^{m-1} Pr[i] E[T_i] with
// Pr[i] = (k-1)/k^(m-i) and the residual mass k^-(m-1) on phase 0.
double phase_chain_expected_time(int m, int k);

// Degree and estimation stats over all nodes plus hop stats over
// lookup_sample_size random (start, key) pairs. Pure in (snapshot, rng
// state): identical inputs give identical records.
MetricsRecord measure(const NetworkState& net, int lookup_sample_size,
                      Rng& rng);

}  // namespace record
