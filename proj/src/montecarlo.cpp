#include "ifbc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "ifbc/baseline_precoders.hpp"
#include "ifbc/dif_designer.hpp"

namespace ifbc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("bad SNR value '" + std::string(s) + "'");
  return v;
}

struct SchemeOutcome {
  double sum_rate;
  double rho;
};

SchemeOutcome run_scheme(Scheme s, const ChannelMatrix& h, const ExperimentConfig& cfg, std::uint64_t trial,
                         double capacity) {
  const bool two = h.users() == 2;
  const GeneralKOptions opts{.restarts = cfg.restarts, .seed = splitmix(cfg.seed ^ splitmix(trial))};
  auto dif = [&](bool regularized, bool real) {
    if (two) return design_dif_2user(h, regularized, real);
    if (real) throw std::invalid_argument("real-integer designs require K = 2");
    return design_dif_generalK(h, regularized, opts);
  };
  const double plain_rho = two ? rho_of_channel(h, false) : kNaN;
  switch (s) {
    case Scheme::Dif: {
      const auto d = dif(false, cfg.real_integers);
      return {d.rates.sum_rate, d.rho};
    }
    case Scheme::Rdif: {
      const auto d = dif(true, cfg.real_integers);
      return {d.rates.sum_rate, d.rho};
    }
    case Scheme::DifReal: {
      const auto d = dif(false, true);
      return {d.rates.sum_rate, d.rho};
    }
    case Scheme::Zf:
      return {design_zf(h).rates.sum_rate, plain_rho};
    case Scheme::Rzf:
      return {design_rzf(h).rates.sum_rate, plain_rho};
    case Scheme::Zfdp:
      return {design_zfdp(h).sum_rate, plain_rho};
    case Scheme::Dpc:
      return {capacity, plain_rho};
  }
  return {kNaN, kNaN};
}

struct TrialOutput {
  std::vector<TrialRecord> records;
  std::vector<std::string> diagnostics;
};

TrialOutput run_trial(const ExperimentConfig& cfg, std::size_t trial) {
  TrialOutput out;
  std::mt19937_64 rng = trial_rng(cfg.seed, trial);
  const ChannelMatrix base = draw_channel(rng, cfg.k, cfg.m);
  for (double snr_db : cfg.snr_db_list) {
    const ChannelMatrix h = base.with_snr(db_to_linear(snr_db));
    const double capacity = dpc_sum_capacity(h);
    for (Scheme s : cfg.schemes) {
      TrialRecord rec{s, snr_db, trial, kNaN, kNaN, kNaN, 0.0};
      const auto start = std::chrono::steady_clock::now();
      try {
        const SchemeOutcome o = run_scheme(s, h, cfg, trial, capacity);
        rec.sum_rate = o.sum_rate;
        rec.rho = o.rho;
        rec.gap = capacity - o.sum_rate;
      } catch (const std::exception& e) {
        out.diagnostics.push_back(std::string(scheme_name(s)) + " snr_db=" + fmt(snr_db) +
                                  " trial=" + std::to_string(trial) + ": " + e.what());
      }
      if (cfg.record_timing)
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      out.records.push_back(rec);
    }
  }
  return out;
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Dif: return "dif";
    case Scheme::Rdif: return "rdif";
    case Scheme::Zf: return "zf";
    case Scheme::Rzf: return "rzf";
    case Scheme::Zfdp: return "zfdp";
    case Scheme::Dpc: return "dpc";
    case Scheme::DifReal: return "dif_real";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : all_schemes())
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> v{Scheme::Dif, Scheme::Rdif, Scheme::Zf,     Scheme::Rzf,
                                     Scheme::Zfdp, Scheme::Dpc,  Scheme::DifReal};
  return v;
}

void ExperimentConfig::validate() const {
  if (k == 0) throw ConfigError("K must be at least 1");
  if (k > m) throw ConfigError("K must not exceed M");
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (snr_db_list.empty()) throw ConfigError("SNR list is empty");
  if (schemes.empty()) throw ConfigError("no schemes selected");
  if (restarts < 0) throw ConfigError("restarts must be nonnegative");
  if (real_integers && k != 2) throw ConfigError("--real-integers requires K = 2");
  for (double s : snr_db_list)
    if (!std::isfinite(s)) throw ConfigError("SNR values must be finite");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix(seed)), static_cast<std::uint32_t>(splitmix(seed) >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

ChannelMatrix draw_channel(std::mt19937_64& rng, std::size_t k, std::size_t m, double snr) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix h(k, m);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      h(i, j) = cplx{re * s, im * s};
    }
  return ChannelMatrix(std::move(h), snr);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TrialOutput> per_trial(cfg.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < cfg.trials; t = next++) per_trial[t] = run_trial(cfg, t);
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  ExperimentResult res;
  for (auto& t : per_trial) {
    res.records.insert(res.records.end(), t.records.begin(), t.records.end());
    res.diagnostics.insert(res.diagnostics.end(), t.diagnostics.begin(), t.diagnostics.end());
  }
  std::stable_sort(res.records.begin(), res.records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
    return a.trial < b.trial;
  });
  res.aggregate = aggregate_records(res.records);
  return res;
}

std::vector<AggregateRow> aggregate_records(const std::vector<TrialRecord>& records) {
  std::vector<AggregateRow> rows;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    double sum_rate = 0.0, sum_gap = 0.0;
    std::size_t n = 0;
    while (j < records.size() && records[j].scheme == records[i].scheme && records[j].snr_db == records[i].snr_db) {
      if (std::isfinite(records[j].sum_rate)) {
        sum_rate += records[j].sum_rate;
        sum_gap += records[j].gap;
        ++n;
      }
      ++j;
    }
    AggregateRow row{records[i].scheme, records[i].snr_db, kNaN, kNaN, kNaN};
    if (n > 0) {
      row.mean_sum_rate = sum_rate / static_cast<double>(n);
      row.mean_gap = sum_gap / static_cast<double>(n);
      double ss = 0.0;
      for (std::size_t t = i; t < j; ++t)
        if (std::isfinite(records[t].sum_rate)) ss += std::pow(records[t].gap - row.mean_gap, 2);
      row.stderr_gap = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    }
    rows.push_back(row);
    i = j;
  }
  return rows;
}

std::vector<std::pair<double, double>> gap_curve(std::size_t resolution, bool real_constraint) {
  if (resolution < 2) throw std::invalid_argument("gap_curve: resolution must be at least 2");
  std::vector<std::pair<double, double>> out(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double rho = 0.999 * static_cast<double>(i) / static_cast<double>(resolution - 1);
    out[i] = {rho, asymptotic_gap(rho, real_constraint)};
  }
  return out;
}

std::vector<double> parse_snr_list(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos) throw ConfigError("range must be start:step:stop");
    const double start = parse_number(text.substr(0, a));
    const double step = parse_number(text.substr(a + 1, b - a - 1));
    const double stop = parse_number(text.substr(b + 1));
    if (!(step > 0.0) || stop < start) throw ConfigError("range needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse_number(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, std::size_t k) {
  os << "scheme,snr_db,trial,rho,sum_rate_bits,gap_bits,wall_ms\n";
  for (const auto& r : records) {
    os << scheme_name(r.scheme) << ',' << fmt(r.snr_db) << ',' << r.trial << ',' << (k == 2 ? fmt(r.rho) : "")
       << ',' << fmt(r.sum_rate) << ',' << fmt(r.gap) << ',' << fmt(r.wall_ms) << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "scheme,snr_db,mean_sum_rate_bits,mean_gap_bits,stderr_gap_bits\n";
  for (const auto& r : rows) {
    os << scheme_name(r.scheme) << ',' << fmt(r.snr_db) << ',' << fmt(r.mean_sum_rate) << ',' << fmt(r.mean_gap)
       << ',' << fmt(r.stderr_gap) << '\n';
  }
}

void write_gap_curve_csv(std::ostream& os, std::size_t resolution) {
  const auto complex_curve = gap_curve(resolution, false);
  const auto real_curve = gap_curve(resolution, true);
  os << "rho,gap_complex_bits,gap_real_bits\n";
  for (std::size_t i = 0; i < resolution; ++i)
    os << fmt(complex_curve[i].first) << ',' << fmt(complex_curve[i].second) << ',' << fmt(real_curve[i].second)
       << '\n';
}

}  // namespace ifbc
