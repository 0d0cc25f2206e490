#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "record/simulator.hpp"

namespace record {

// Everything a command-line invocation can specify. Trial t runs with
// effective seed = seed + t, so a multi-trial experiment is reproducible
// from one base seed.
struct ExperimentSpec {
  Regime regime = Regime::kStable;
  double join_rate = 0.0;
  double leave_rate = 0.0;
  std::uint64_t ticks = 0;
  std::uint64_t n_initial = 0;
  int k = 2;
  std::uint64_t seed = 0;
  int lookups_per_tick = 0;
  int trials = 1;
  bool ideal = false;
  bool spare_successor_links = false;
  std::vector<int> k_list;
  std::vector<double> p_list;
  std::string output = "record_out.csv";

  ChurnConfig churn_config(std::uint64_t effective_seed) const;
  ChurnConfig churn_config(std::uint64_t effective_seed, int k_override) const;

  // The "key=value ..." form embedded in CSV comment headers.
  std::string describe(const std::string& command) const;
};

// Shortest round-trip decimal form of a double (CSV cell format).
std::string format_double(double v);

// Write CSV text to path via a temp file and atomic rename.
void write_file_atomic(const std::string& path, const std::string& text);

std::string run_static_csv(const ExperimentSpec& spec);
std::string run_churn_csv(const ExperimentSpec& spec);
std::string run_sweep_k_csv(const ExperimentSpec& spec);
std::string run_fault_csv(const ExperimentSpec& spec);
std::string run_theory_csv(const ExperimentSpec& spec);

// Full command-line entry point (argument parsing, dispatch, file
// output). Returns the process exit code: 0 only on success.
int run_cli(int argc, const char* const* argv);

}  // namespace record
