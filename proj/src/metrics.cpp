#include "record/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "record/ring.hpp"
#include "record/routing.hpp"

namespace record {

namespace {

double log_base(double n, int k) { return std::log2(n) / std::log2(double(k)); }

// Nearest-rank percentile of an ascending-sorted sample.
double percentile(const std::vector<int>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  if (rank < 1) rank = 1;
  if (rank > sorted.size()) rank = sorted.size();
  return static_cast<double>(sorted[rank - 1]);
}

}  // namespace

double theoretical_degree(double n, int k) {
  if (k < 2) throw std::invalid_argument("degree model needs k >= 2");
  if (n < 1.0) throw std::invalid_argument("degree model needs n >= 1");
  return (k - 1) * log_base(n, k);
}

double theoretical_latency(double n, int k) {
  if (k < 2) throw std::invalid_argument("latency model needs k >= 2");
  if (n < 1.0) throw std::invalid_argument("latency model needs n >= 1");
  return 2.0 * (k - 1) / double(k) * log_base(n, k);
}

double phase_chain_expected_time(int m, int k) {
  if (m < 0) throw std::invalid_argument("phase index must be >= 0");
  if (k < 2) throw std::invalid_argument("phase chain needs k >= 2");
  std::vector<double> expected(static_cast<std::size_t>(m) + 1, 0.0);
  for (int p = 1; p <= m; ++p) {
    double acc = 1.0;  // the hop itself
    double mass = 1.0 / double(k);  // Pr[land in phase p-1] = (k-1)/k^1
    for (int i = p - 1; i >= 1; --i) {
      acc += (k - 1) * mass * expected[static_cast<std::size_t>(i)];
      mass /= double(k);
    }
    expected[static_cast<std::size_t>(p)] = acc;
  }
  return expected[static_cast<std::size_t>(m)];
}

MetricsRecord measure(const NetworkState& net, int lookup_sample_size,
                      Rng& rng) {
  if (net.directory.empty())
    throw std::invalid_argument("cannot measure an empty network");
  if (lookup_sample_size < 0)
    throw std::invalid_argument("lookup sample size must be >= 0");

  MetricsRecord rec;
  rec.tick = net.tick;
  rec.n_actual = net.directory.size();

  const double log_n = std::log2(static_cast<double>(rec.n_actual));
  double sum_log_est = 0.0;
  double sum_out = 0.0;
  double sum_in = 0.0;
  for (const auto& [id, node] : net.directory) {
    const double log_est = std::log2(node.n_est);
    sum_log_est += log_est;
    sum_out += static_cast<double>(node.links.size());
    sum_in += static_cast<double>(node.incoming_count);
    const double err = std::fabs(log_est - log_n);
    auto bucket = static_cast<std::size_t>(err);
    if (bucket >= rec.estimation_error_hist.size())
      bucket = rec.estimation_error_hist.size() - 1;
    rec.estimation_error_hist[bucket] += 1;
  }
  const auto n = static_cast<double>(rec.n_actual);
  rec.mean_log_estimate = sum_log_est / n;
  rec.mean_out_degree = sum_out / n;
  rec.mean_in_degree = sum_in / n;

  if (lookup_sample_size == 0) return rec;

  const std::vector<RingId> ids = net.directory.ids();
  std::vector<int> hops;
  hops.reserve(static_cast<std::size_t>(lookup_sample_size));
  int failed = 0;
  for (int s = 0; s < lookup_sample_size; ++s) {
    const RingId start = ids[uniform_index(rng, ids.size())];
    const RingId key = sample_uniform_id(rng);
    const LookupResult res =
        greedy_lookup(net.directory, start, key, net.failed_links);
    if (res.success)
      hops.push_back(res.hops());
    else
      failed += 1;
  }
  std::sort(hops.begin(), hops.end());
  if (!hops.empty()) {
    double total = 0.0;
    for (int h : hops) total += h;
    rec.mean_hops = total / static_cast<double>(hops.size());
    rec.p50_hops = percentile(hops, 0.50);
    rec.p99_hops = percentile(hops, 0.99);
  }
  rec.unreachable_fraction =
      static_cast<double>(failed) / static_cast<double>(lookup_sample_size);
  return rec;
}

}  // namespace record
