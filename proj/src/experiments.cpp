#include "record/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <system_error>

#include "CLI11.hpp"
#include "record/metrics.hpp"
#include "record/topology.hpp"

namespace record {

namespace {

template <typename T>
std::string join_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ";";
    if constexpr (std::is_floating_point_v<T>)
      out += format_double(values[i]);
    else
      out += std::to_string(values[i]);
  }
  return out;
}

std::string record_header() {
  std::string h =
      "tick,n,log2_n,mean_log_estimate,mean_out_degree,mean_in_degree,"
      "mean_hops,p50_hops,p99_hops,unreachable_fraction";
  for (std::size_t i = 0; i < 9; ++i) h += ",err_hist_" + std::to_string(i);
  return h;
}

std::string record_row(const MetricsRecord& r) {
  std::string s = std::to_string(r.tick);
  s += "," + std::to_string(r.n_actual);
  s += "," + format_double(std::log2(static_cast<double>(r.n_actual)));
  s += "," + format_double(r.mean_log_estimate);
  s += "," + format_double(r.mean_out_degree);
  s += "," + format_double(r.mean_in_degree);
  s += "," + format_double(r.mean_hops);
  s += "," + format_double(r.p50_hops);
  s += "," + format_double(r.p99_hops);
  s += "," + format_double(r.unreachable_fraction);
  for (std::uint64_t b : r.estimation_error_hist) s += "," + std::to_string(b);
  return s;
}

}  // namespace

ChurnConfig ExperimentSpec::churn_config(std::uint64_t effective_seed) const {
  return churn_config(effective_seed, k);
}

ChurnConfig ExperimentSpec::churn_config(std::uint64_t effective_seed,
                                         int k_override) const {
  ChurnConfig c;
  c.regime = regime;
  c.join_rate = join_rate;
  c.leave_rate = leave_rate;
  c.ticks = ticks;
  c.n_initial = n_initial;
  c.k = k_override;
  c.seed = effective_seed;
  c.lookups_per_tick = lookups_per_tick;
  return c;
}

std::string ExperimentSpec::describe(const std::string& command) const {
  std::string s = "record-sim " + command;
  s += " regime=" + to_string(regime);
  s += " join_rate=" + format_double(join_rate);
  s += " leave_rate=" + format_double(leave_rate);
  s += " ticks=" + std::to_string(ticks);
  s += " n_initial=" + std::to_string(n_initial);
  s += " k=" + std::to_string(k);
  s += " seed=" + std::to_string(seed);
  s += " lookups_per_tick=" + std::to_string(lookups_per_tick);
  s += " trials=" + std::to_string(trials);
  s += " ideal=" + std::to_string(ideal ? 1 : 0);
  s += " spare_successor_links=" + std::to_string(spare_successor_links ? 1 : 0);
  s += " k_list=" + join_list(k_list);
  s += " p_list=" + join_list(p_list);
  s += " output=" + output;
  return s;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (!target.parent_path().empty())
    std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string run_static_csv(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::string csv = "# " + spec.describe("static") + "\n";
  csv += "trial,seed,k,ideal," + record_header() + "\n";
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(t);
    StaticConfig cfg;
    cfg.n = spec.n_initial;
    cfg.k = spec.k;
    cfg.seed = seed;
    cfg.ideal = spec.ideal;
    cfg.lookup_samples = spec.lookups_per_tick;
    const auto [net, rec] = run_static(cfg);
    csv += std::to_string(t) + "," + std::to_string(seed) + "," +
           std::to_string(spec.k) + "," + std::to_string(spec.ideal ? 1 : 0) +
           "," + record_row(rec) + "\n";
  }
  return csv;
}

std::string run_churn_csv(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::string csv = "# " + spec.describe("churn") + "\n";
  csv += "trial,seed,k," + record_header() + "\n";
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(t);
    const auto [net, series] = run_churn(spec.churn_config(seed));
    for (const MetricsRecord& rec : series) {
      csv += std::to_string(t) + "," + std::to_string(seed) + "," +
             std::to_string(spec.k) + "," + record_row(rec) + "\n";
    }
  }
  return csv;
}

std::string run_sweep_k_csv(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (spec.k_list.empty())
    throw std::invalid_argument("sweep-k requires a non-empty k list");
  if (spec.ticks < 1 || spec.lookups_per_tick < 1)
    throw std::invalid_argument(
        "sweep-k requires ticks >= 1 and lookups >= 1");
  std::string csv = "# " + spec.describe("sweep-k") + "\n";
  csv +=
      "trial,seed,k,n,mean_out_degree,mean_hops,"
      "theoretical_degree,theoretical_latency\n";
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(t);
    for (int k : spec.k_list) {
      const auto [net, series] = run_churn(spec.churn_config(seed, k));
      if (series.empty())
        throw std::runtime_error("sweep-k run produced no measurements");
      const MetricsRecord& rec = series.back();
      const auto n = static_cast<double>(rec.n_actual);
      csv += std::to_string(t) + "," + std::to_string(seed) + "," +
             std::to_string(k) + "," + std::to_string(rec.n_actual) + "," +
             format_double(rec.mean_out_degree) + "," +
             format_double(rec.mean_hops) + "," +
             format_double(theoretical_degree(n, k)) + "," +
             format_double(theoretical_latency(n, k)) + "\n";
    }
  }
  return csv;
}

std::string run_fault_csv(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (spec.p_list.empty())
    throw std::invalid_argument("fault requires a non-empty p list");
  if (spec.lookups_per_tick < 1)
    throw std::invalid_argument("fault requires lookups >= 1");
  std::string csv = "# " + spec.describe("fault") + "\n";
  csv += "trial,seed,k,p,n,mean_hops,unreachable_fraction\n";
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(t);
    const auto [net, series] = run_churn(spec.churn_config(seed));
    Rng fault_rng;
    fault_rng.seed(seed ^ 0x9e3779b97f4a7c15ULL);
    for (double p : spec.p_list) {
      NetworkState damaged =
          inject_link_failures(net, p, fault_rng, spec.spare_successor_links);
      const MetricsRecord rec =
          measure(damaged, spec.lookups_per_tick, fault_rng);
      csv += std::to_string(t) + "," + std::to_string(seed) + "," +
             std::to_string(spec.k) + "," + format_double(p) + "," +
             std::to_string(rec.n_actual) + "," + format_double(rec.mean_hops) +
             "," + format_double(rec.unreachable_fraction) + "\n";
    }
  }
  return csv;
}

std::string run_theory_csv(const ExperimentSpec& spec) {
  if (spec.n_initial < 2)
    throw std::invalid_argument("theory requires n_initial >= 2");
  std::vector<int> ks = spec.k_list;
  if (ks.empty()) ks.push_back(spec.k);
  std::string csv = "# " + spec.describe("theory") + "\n";
  csv +=
      "k,n,levels,theoretical_degree,theoretical_latency,"
      "expected_phase_hops\n";
  const auto n = static_cast<double>(spec.n_initial);
  for (int k : ks) {
    const int m = level_count(n, k);
    csv += std::to_string(k) + "," + std::to_string(spec.n_initial) + "," +
           std::to_string(m) + "," + format_double(theoretical_degree(n, k)) +
           "," + format_double(theoretical_latency(n, k)) + "," +
           format_double(phase_chain_expected_time(m, k)) + "\n";
  }
  return csv;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Normalizes a key or long-flag name so config keys may use underscores
// where flags use hyphens.
std::string flag_name(const std::string& raw) {
  std::string name = raw;
  std::replace(name.begin(), name.end(), '_', '-');
  return name;
}

// Reads a flat key=value config file. Blank lines and lines starting with
// '#' or ';' are skipped; a repeated key keeps its last value.
std::map<std::string, std::string> read_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::map<std::string, std::string> pairs;
  std::string line;
  while (std::getline(in, line)) {
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("config line is not key=value: " + entry);
    }
    const std::string key = flag_name(trim(entry.substr(0, eq)));
    if (key == "config") {
      throw std::invalid_argument("config file cannot set config");
    }
    pairs.insert_or_assign(key, trim(entry.substr(eq + 1)));
  }
  return pairs;
}

// Pulls --config FILE out of the raw arguments and expands the file into
// --key=value tokens for any option not already given explicitly, so file
// values fill gaps and command-line flags always win.
std::vector<std::string> expand_config_args(int argc,
                                            const char* const* argv) {
  std::vector<std::string> tokens;
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config") {
      if (i + 1 >= argc) {
        throw std::invalid_argument("--config requires a file path");
      }
      config_path = argv[++i];
    } else if (arg.rfind("--config=", 0) == 0) {
      config_path = arg.substr(9);
    } else {
      tokens.push_back(arg);
    }
  }
  if (config_path.empty()) return tokens;

  std::set<std::string> given;
  for (const std::string& t : tokens) {
    if (t.rfind("--", 0) != 0) continue;
    given.insert(flag_name(t.substr(2, t.find('=') - 2)));
  }
  for (const auto& [key, value] : read_flat_config(config_path)) {
    if (given.count(key)) continue;
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"record-sim: simulator for a recursive-interval DHT",
               "record-sim"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string regime_name = "stable";
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", spec.k, "interval arity (>= 2)");
    sub->add_option("--seed", spec.seed, "base RNG seed; trial t uses seed+t");
    sub->add_option("--trials", spec.trials, "independent trials");
    sub->add_option("--lookups", spec.lookups_per_tick,
                    "lookup samples per measurement");
    sub->add_option("--output", spec.output, "CSV output path");
    // Consumed before parsing by expand_config_args; listed here so it
    // shows up in --help.
    sub->add_option("--config", config_path,
                    "flat key=value config file; command-line flags win");
  };
  auto add_churn = [&](CLI::App* sub) {
    sub->add_option("--regime", regime_name, "static|expanding|shrinking|stable")
        ->check(CLI::IsMember({"static", "expanding", "shrinking", "stable"}));
    sub->add_option("--join-rate", spec.join_rate, "mean joins per tick");
    sub->add_option("--leave-rate", spec.leave_rate, "mean leaves per tick");
    sub->add_option("--ticks", spec.ticks, "tick count");
    sub->add_option("--n-initial", spec.n_initial, "bootstrap size");
  };

  CLI::App* cmd_static = app.add_subcommand(
      "static", "build a fixed network once and measure it");
  cmd_static->add_option("--n", spec.n_initial, "network size");
  cmd_static->add_flag("--ideal", spec.ideal, "evenly spaced ids i/n");
  add_common(cmd_static);

  CLI::App* cmd_churn =
      app.add_subcommand("churn", "run join/leave churn and measure per tick");
  add_churn(cmd_churn);
  add_common(cmd_churn);

  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep-k", "run one churn experiment per arity and compare");
  add_churn(cmd_sweep);
  cmd_sweep->add_option("--k-list", spec.k_list, "arities to sweep")
      ->delimiter(';');
  add_common(cmd_sweep);

  CLI::App* cmd_fault = app.add_subcommand(
      "fault", "measure lookups under random link failures");
  add_churn(cmd_fault);
  cmd_fault->add_option("--p-list", spec.p_list, "failure probabilities")
      ->delimiter(';');
  cmd_fault->add_flag("--spare-succ", spec.spare_successor_links,
                      "never fail successor edges");
  add_common(cmd_fault);

  CLI::App* cmd_theory = app.add_subcommand(
      "theory", "print model predictions instead of simulating");
  cmd_theory->add_option("--n", spec.n_initial, "network size");
  cmd_theory->add_option("--k-list", spec.k_list, "arities to tabulate")
      ->delimiter(';');
  add_common(cmd_theory);

  std::vector<std::string> tokens;
  try {
    tokens = expand_config_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "record-sim: " << e.what() << "\n";
    return 1;
  }
  try {
    std::reverse(tokens.begin(), tokens.end());  // parse(vector) wants reversed
    app.parse(std::move(tokens));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    spec.regime = regime_from_string(regime_name);
    std::string csv;
    if (cmd_static->parsed())
      csv = run_static_csv(spec);
    else if (cmd_churn->parsed())
      csv = run_churn_csv(spec);
    else if (cmd_sweep->parsed())
      csv = run_sweep_k_csv(spec);
    else if (cmd_fault->parsed())
      csv = run_fault_csv(spec);
    else
      csv = run_theory_csv(spec);
    write_file_atomic(spec.output, csv);
  } catch (const std::exception& e) {
    std::cerr << "record-sim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace record
