#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifbc/rate_functions.hpp"

namespace ifbc {

enum class Scheme { Dif, Rdif, Zf, Rzf, Zfdp, Dpc, DifReal };

std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::size_t k = 2;
  std::size_t m = 2;
  std::vector<double> snr_db_list;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes = all_schemes();
  int restarts = 8;
  bool real_integers = false;  // dif/rdif use A with real entries (K = 2)
  unsigned threads = 1;
  bool record_timing = true;   // wall_ms is written as 0 when off

  /// Throws ConfigError when K > M, K == 0, trials == 0 or the SNR list is empty.
  void validate() const;
};

struct TrialRecord {
  Scheme scheme = Scheme::Dif;
  double snr_db = 0.0;
  std::size_t trial = 0;
  double rho = 0.0;  // NaN when K != 2
  double sum_rate = 0.0;
  double gap = 0.0;
  double wall_ms = 0.0;
};

struct AggregateRow {
  Scheme scheme = Scheme::Dif;
  double snr_db = 0.0;
  double mean_sum_rate = 0.0;
  double mean_gap = 0.0;
  double stderr_gap = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted by (scheme, snr, trial)
  std::vector<AggregateRow> aggregate;
  std::vector<std::string> diagnostics;
};

/// Independent generator for one trial, keyed by (seed, trial).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// K x M channel with i.i.d. CN(0, 1) entries (g1 + j g2) / sqrt(2).
ChannelMatrix draw_channel(std::mt19937_64& rng, std::size_t k, std::size_t m, double snr = 1.0);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::vector<AggregateRow> aggregate_records(const std::vector<TrialRecord>& records);

/// asymptotic_gap on a uniform grid of `resolution` points over [0, 0.999].
std::vector<std::pair<double, double>> gap_curve(std::size_t resolution, bool real_constraint);

/// "a,b,c" or "start:step:stop" (stop included when hit up to rounding).
std::vector<double> parse_snr_list(std::string_view text);

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, std::size_t k);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);
void write_gap_curve_csv(std::ostream& os, std::size_t resolution);

}  // namespace ifbc
