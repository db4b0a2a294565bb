#include "ifbc/dif_designer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "ifbc/lattice_reduction.hpp"

namespace ifbc {

namespace {

constexpr double kRhoCeiling = 1.0 - 1e-9;

void require_two_users(const ChannelMatrix& h, const char* what) {
  if (h.users() != 2) throw std::invalid_argument(std::string(what) + ": requires exactly K = 2 users");
}

double clamp_rho(double rho) { return std::min(rho, kRhoCeiling); }

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
}

double norm_objective(std::int64_t n, double rho) {
  const auto x = static_cast<double>(n);
  return std::sqrt(x + 1.0) - rho * std::sqrt(x);
}

double real_objective(std::int64_t k, double rho) {
  const auto x = static_cast<double>(k);
  return std::sqrt(x * x + 1.0) - rho * x;
}

// K x K generator B with B^H B = M, from H' = [H, sqrt(K/snr) I] = L Q, B = L^-1.
CMatrix design_generator(const ChannelMatrix& h, bool regularized) {
  const std::size_t k = h.users();
  const std::size_t extra = regularized ? k : 0;
  CMatrix aug(k, h.antennas() + extra);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < h.antennas(); ++j) aug(i, j) = h.h(i, j);
  const double s = regularized ? std::sqrt(static_cast<double>(k) / h.snr) : 0.0;
  for (std::size_t i = 0; i < extra; ++i) aug(i, h.antennas() + i) = s;
  return inverse(lq_decompose(aug).l);
}

// SplitMix64 finalizer; used to derive independent per-restart streams.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

DiagonalScale DiagonalScale::from_log_polar(std::vector<double> beta, const std::vector<double>& theta) {
  if (beta.size() != theta.size() || beta.empty()) throw DimensionError("from_log_polar: length mismatch");
  double mean = 0.0;
  for (double b : beta) mean += b;
  mean /= static_cast<double>(beta.size());
  DiagonalScale s;
  s.d.resize(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) s.d[i] = std::polar(std::exp(beta[i] - mean), theta[i]);
  return s;
}

DiagonalScale DiagonalScale::identity(std::size_t k) {
  DiagonalScale s;
  s.d.assign(k, cplx{1.0, 0.0});
  return s;
}

std::vector<cplx> DiagonalScale::scaled() const {
  std::vector<cplx> out = d;
  if (unit_det)
    for (auto& x : out) x *= c;
  return out;
}

CMatrix design_precision(const ChannelMatrix& h, bool regularized) {
  CMatrix g = gram(h.h);
  if (regularized) {
    const double reg = static_cast<double>(h.users()) / h.snr;
    for (std::size_t i = 0; i < h.users(); ++i) g(i, i) += reg;
  }
  return inverse(g);
}

double rho_of_channel(const ChannelMatrix& h, bool regularized) {
  require_two_users(h, "rho_of_channel");
  if (!regularized) {
    const auto h1 = h.h.row_vector(0);
    const auto h2 = h.h.row_vector(1);
    return clamp_rho(std::abs(inner(h1, h2)) / std::sqrt(norm_sq(h1) * norm_sq(h2)));
  }
  const CMatrix m = design_precision(h, true);
  return clamp_rho(std::abs(m(0, 1)) / std::sqrt(m(0, 0).real() * m(1, 1).real()));
}

double f_of_A(const IntegerCoeffMatrix& a, double rho) {
  if (a.size() != 2) throw DimensionError("f_of_A: requires a 2 x 2 integer matrix");
  const auto a1 = a.row(0);
  const auto a2 = a.row(1);
  const double n1 = std::sqrt(static_cast<double>(gi_vec_norm_sq(a1)));
  const double n2 = std::sqrt(static_cast<double>(gi_vec_norm_sq(a2)));
  const double cross = std::sqrt(static_cast<double>(gi_norm_sq(gi_vec_inner(a2, a1))));
  return n1 * n2 - rho * cross;
}

NormSetValue optimal_N(double rho) {
  check_rho(rho);
  const double x = rho * rho / (1.0 - rho * rho);
  const NormSetValue lo = floor_norm_set(x);
  const NormSetValue hi = ceil_norm_set(x);
  const double f_lo = norm_objective(lo.value(), rho);
  const double f_hi = norm_objective(hi.value(), rho);
  // Ties (to rounding) go to the smaller N.
  const double tie = 8.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(hi.value()) + 1.0);
  return f_hi < f_lo - tie ? hi : lo;
}

double transition_rho(NormSetValue n) {
  if (n.value() == 0) return 0.0;
  const auto big = static_cast<double>(n.value());
  const auto prev = static_cast<double>(floor_norm_set(big - 1.0).value());
  return (std::sqrt(big + 1.0) - std::sqrt(prev + 1.0)) / (std::sqrt(big) - std::sqrt(prev));
}

IntegerCoeffMatrix optimal_A_2user(double rho) {
  const GaussInt a21 = two_square_decomp(optimal_N(rho));
  return IntegerCoeffMatrix{{GaussInt{1}, GaussInt{0}}, {a21, GaussInt{1}}};
}

std::int64_t optimal_k_real(double rho) {
  check_rho(rho);
  const double u = rho / std::sqrt(1.0 - rho * rho);
  const auto lo = static_cast<std::int64_t>(std::floor(u));
  const auto hi = static_cast<std::int64_t>(std::ceil(u));
  const double tie = 8.0 * std::numeric_limits<double>::epsilon() * (static_cast<double>(hi) + 1.0);
  return real_objective(hi, rho) < real_objective(lo, rho) - tie ? hi : lo;
}

IntegerCoeffMatrix optimal_A_2user_real(double rho) {
  const std::int64_t k = optimal_k_real(rho);
  return IntegerCoeffMatrix{{GaussInt{1}, GaussInt{0}}, {GaussInt{k}, GaussInt{1}}};
}

double transition_u_real(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("transition_u_real: k must be nonnegative");
  if (k == 0) return 0.0;
  const auto x = static_cast<double>(k);
  // u / sqrt(1 + u^2) = s  <=>  u = s / sqrt(1 - s^2), with
  // s = sqrt(k^2+1) - sqrt((k-1)^2+1) evaluated without cancellation
  const double a = std::sqrt(x * x + 1.0);
  const double b = std::sqrt((x - 1.0) * (x - 1.0) + 1.0);
  const double sum = a + b;
  const double s = (2.0 * x - 1.0) / sum;
  const double one_minus_s = (1.0 / (a + x) + 1.0 / (b + x - 1.0)) / sum;
  return s / std::sqrt(one_minus_s * (1.0 + s));
}

DiagonalScale optimal_D0_2user(const ChannelMatrix& h, const IntegerCoeffMatrix& a, bool regularized) {
  require_two_users(h, "optimal_D0_2user");
  if (a.size() != 2 || !a.full_rank()) throw std::invalid_argument("optimal_D0_2user: A must be a full-rank 2 x 2 matrix");
  const CMatrix w = design_precision(h, regularized);
  const auto a1 = a.row(0);
  const auto a2 = a.row(1);
  const double n1 = std::sqrt(static_cast<double>(gi_vec_norm_sq(a1)));
  const double n2 = std::sqrt(static_cast<double>(gi_vec_norm_sq(a2)));
  const double w11 = w(0, 0).real();
  const double w22 = w(1, 1).real();
  const double d1 = std::sqrt(n2 * std::sqrt(w22) / (n1 * std::sqrt(w11)));
  const cplx coupling = -gi_vec_inner(a2, a1).to_complex() * w(0, 1);
  const double phase = coupling == cplx{0.0, 0.0} ? 0.0 : -std::arg(coupling);
  DiagonalScale s;
  s.d = {cplx{d1, 0.0}, std::polar(1.0 / d1, phase)};
  return s;
}

double precoder_trace(const ChannelMatrix& h, const IntegerCoeffMatrix& a, const DiagonalScale& d0,
                      bool regularized) {
  const CMatrix t0 = matmul(matmul(matmul(hermitian(h.h), design_precision(h, regularized)), d0.matrix()),
                            a.to_cmatrix());
  return frob_norm_sq(t0);
}

double design_objective(const ChannelMatrix& h, const IntegerCoeffMatrix& a, const DiagonalScale& d0,
                        bool regularized) {
  const CMatrix ad = matmul(d0.matrix(), a.to_cmatrix());
  return trace(matmul(matmul(hermitian(ad), design_precision(h, regularized)), ad)).real();
}

PrecoderDesign build_precoder(const ChannelMatrix& h, const IntegerCoeffMatrix& a, const DiagonalScale& d0,
                              bool regularized) {
  const std::size_t k = h.users();
  if (a.size() != k || d0.d.size() != k) throw DimensionError("build_precoder: A and D0 must match K");
  if (!a.full_rank()) throw std::invalid_argument("build_precoder: A is rank deficient");
  double det_mag = 1.0;
  for (const auto& x : d0.d) det_mag *= std::abs(x);
  if (std::abs(det_mag - 1.0) > 1e-9) throw std::invalid_argument("build_precoder: D0 must have |det| = 1");

  const CMatrix t0 =
      matmul(matmul(matmul(hermitian(h.h), design_precision(h, regularized)), d0.matrix()), a.to_cmatrix());
  const double tr = frob_norm_sq(t0);
  PrecoderDesign out;
  out.a = a;
  out.d0 = d0;
  out.d0.unit_det = true;
  out.c = 1.0 / std::sqrt(tr);
  out.d0.c = out.c;
  out.t = out.c * t0;
  out.rates = if_sum_rate(h, out.t, a);
  out.rates.scheme = regularized ? "rdif" : "dif";
  out.hi_snr_sum_rate = static_cast<double>(k) * std::log2(out.c * out.c * h.snr);
  out.regularized = regularized;
  out.rho = k == 2 ? rho_of_channel(h, regularized) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

PrecoderDesign design_dif_2user(const ChannelMatrix& h, bool regularized, bool real_integers) {
  require_two_users(h, "design_dif_2user");
  const double rho = rho_of_channel(h, regularized);
  const IntegerCoeffMatrix a = real_integers ? optimal_A_2user_real(rho) : optimal_A_2user(rho);
  PrecoderDesign d = build_precoder(h, a, optimal_D0_2user(h, a, regularized), regularized);
  d.rho = rho;
  if (real_integers) d.rates.scheme += "_real";
  return d;
}

double asymptotic_gap(double rho, bool real_constraint) {
  check_rho(rho);
  const double f = real_constraint ? real_objective(optimal_k_real(rho), rho)
                                   : norm_objective(optimal_N(rho).value(), rho);
  return 2.0 * std::log2(f / std::sqrt(1.0 - rho * rho));
}

PrecoderDesign design_dif_generalK(const ChannelMatrix& h, bool regularized, const GeneralKOptions& opts) {
  const std::size_t k = h.users();
  if (k < 2) throw std::invalid_argument("design_dif_generalK: requires K >= 2");
  if (opts.restarts < 0) throw std::invalid_argument("design_dif_generalK: restarts must be nonnegative");

  const CMatrix hm = design_generator(h, regularized);  // K x K
  const std::size_t free = k - 1;
  // Coordinates: beta_2..beta_K then theta_2..theta_K; beta_1 = -sum, theta_1 = 0.
  auto to_scale = [&](const std::vector<double>& x) {
    std::vector<double> beta(k, 0.0);
    std::vector<double> theta(k, 0.0);
    for (std::size_t i = 0; i < free; ++i) {
      beta[i + 1] = x[i];
      theta[i + 1] = x[free + i];
      beta[0] -= x[i];
    }
    return DiagonalScale::from_log_polar(beta, theta);
  };
  struct Eval {
    double objective;
    IntegerCoeffMatrix a;
  };
  auto evaluate = [&](const std::vector<double>& x) {
    const DiagonalScale d0 = to_scale(x);
    CMatrix g0 = hm;
    for (std::size_t i = 0; i < g0.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j) g0(i, j) *= d0.d[j];
    const GeneratorMatrix gen{g0};
    IntegerCoeffMatrix a = shortest_independent_columns(gen, opts.delta);
    return Eval{lattice_objective(gen, a), std::move(a)};
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto local_search = [&](std::vector<double> x) {
    double best = evaluate(x).objective;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      const double before = best;
      for (std::size_t c = 0; c < 2 * free; ++c) {
        const double half = c < free ? 1.0 : std::numbers::pi;
        double lo = x[c] - half;
        double hi = x[c] + half;
        auto f = [&](double v) {
          std::vector<double> y = x;
          y[c] = v;
          return evaluate(y).objective;
        };
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = f(x1);
        double f2 = f(x2);
        while (hi - lo > opts.tolerance) {
          if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
          }
        }
        const double cand = f1 <= f2 ? x1 : x2;
        const double fc = std::min(f1, f2);
        if (fc < best) {
          best = fc;
          x[c] = cand;
        }
      }
      if (before - best <= opts.tolerance * std::max(1.0, best)) break;
    }
    return x;
  };

  PrecoderDesign best_design;
  bool have = false;
  auto consider = [&](PrecoderDesign cand) {
    if (!have || cand.rates.sum_rate > best_design.rates.sum_rate + 1e-12) {
      best_design = std::move(cand);
      have = true;
    }
  };

  // Start 0 is D0 = I; the rest are uniform random starts.
  for (int r = 0; r <= opts.restarts; ++r) {
    std::vector<double> x(2 * free, 0.0);
    if (r > 0) {
      std::mt19937_64 rng(mix64(opts.seed ^ mix64(static_cast<std::uint64_t>(r))));
      std::uniform_real_distribution<double> beta_dist(-1.5, 1.5);
      std::uniform_real_distribution<double> theta_dist(0.0, 2.0 * std::numbers::pi);
      for (std::size_t i = 0; i < free; ++i) x[i] = beta_dist(rng);
      for (std::size_t i = 0; i < free; ++i) x[free + i] = theta_dist(rng);
    }
    x = local_search(std::move(x));
    const DiagonalScale d0 = to_scale(x);
    consider(build_precoder(h, evaluate(x).a, d0, regularized));
  }
  if (k == 2) consider(design_dif_2user(h, regularized));
  return best_design;
}

}  // namespace ifbc
