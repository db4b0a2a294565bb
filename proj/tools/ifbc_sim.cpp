// Monte-Carlo driver: draws Rayleigh channels, runs the selected precoders
// and writes trials.csv / aggregate.csv (or gap_curve.csv) into --out.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ifbc/montecarlo.hpp"

namespace {

std::vector<ifbc::Scheme> parse_schemes(const std::string& text) {
  std::vector<ifbc::Scheme> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto s = ifbc::parse_scheme(item);
    if (!s) throw ifbc::ConfigError("unknown scheme '" + item + "'");
    if (std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer-forcing broadcast precoding Monte-Carlo simulator"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  std::size_t k = 2, m = 2;
  std::string snr = "-10:2.5:40";
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::string schemes = "dif,rdif,zf,rzf,zfdp,dpc";
  int restarts = 8;
  std::string out_dir = ".";
  std::size_t gap_res = 0;
  bool real_integers = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool no_timing = false;

  app.add_option("--k", k, "number of users");
  app.add_option("--m", m, "number of transmit antennas");
  app.add_option("--snr-db", snr, "comma list or start:step:stop (dB)");
  app.add_option("--trials", trials, "channel realizations (default 1000 for K = 2, 200 otherwise)");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--schemes", schemes, "subset of dif,rdif,zf,rzf,zfdp,dpc,dif_real");
  app.add_option("--restarts", restarts, "random restarts of the general-K search");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--gap-curve", gap_res, "write gap_curve.csv with this many rho points and exit");
  app.add_flag("--real-integers", real_integers, "restrict dif/rdif to real integer matrices (K = 2)");
  app.add_option("--threads", threads, "worker threads");
  app.add_flag("--no-timing", no_timing, "write wall_ms as 0 for byte-reproducible trials.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    if (app.count("--gap-curve") > 0) {
      if (gap_res < 2) throw ifbc::ConfigError("--gap-curve needs at least 2 points");
      auto f = open_out(dir / "gap_curve.csv");
      ifbc::write_gap_curve_csv(f, gap_res);
      return 0;
    }

    ifbc::ExperimentConfig cfg;
    cfg.k = k;
    cfg.m = m;
    cfg.snr_db_list = ifbc::parse_snr_list(snr);
    cfg.trials = trials > 0 ? trials : (k == 2 ? 1000 : 200);
    if (app.count("--trials") > 0 && trials == 0) throw ifbc::ConfigError("trials must be at least 1");
    cfg.seed = seed;
    cfg.schemes = parse_schemes(schemes);
    cfg.restarts = restarts;
    cfg.real_integers = real_integers;
    cfg.threads = threads;
    cfg.record_timing = !no_timing;
    cfg.validate();

    const ifbc::ExperimentResult res = ifbc::run_experiment(cfg);
    for (const auto& d : res.diagnostics) std::cerr << "warning: " << d << '\n';
    auto trials_csv = open_out(dir / "trials.csv");
    ifbc::write_trials_csv(trials_csv, res.records, cfg.k);
    auto agg_csv = open_out(dir / "aggregate.csv");
    ifbc::write_aggregate_csv(agg_csv, res.aggregate);
  } catch (const ifbc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
