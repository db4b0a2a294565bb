#include "ifbc/rate_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ifbc {

namespace {

constexpr double kPowerSlack = 1e-9;

std::vector<cplx> row_times(const CMatrix& h, std::size_t i, const CMatrix& t) {
  std::vector<cplx> out(t.cols());
  for (std::size_t k = 0; k < h.cols(); ++k) {
    const cplx hk = h(i, k);
    for (std::size_t j = 0; j < t.cols(); ++j) out[j] += hk * t(k, j);
  }
  return out;
}

double int_norm_sq(std::span<const GaussInt> a) {
  double s = 0.0;
  for (const auto& x : a) s += static_cast<double>(gi_norm_sq(x));
  return s;
}

// h' a^H
cplx cross(std::span<const cplx> h_eff, std::span<const GaussInt> a) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < h_eff.size(); ++k) s += h_eff[k] * std::conj(a[k].to_complex());
  return s;
}

void check_lengths(std::span<const cplx> h_eff, std::span<const GaussInt> a) {
  if (h_eff.size() != a.size()) throw DimensionError("effective channel and coefficient vector differ in length");
}

// Euclidean projection onto {q >= 0, sum q <= 1}.
std::vector<double> project_capped_simplex(std::vector<double> v) {
  std::vector<double> clipped(v.size());
  std::transform(v.begin(), v.end(), clipped.begin(), [](double x) { return std::max(0.0, x); });
  if (std::accumulate(clipped.begin(), clipped.end(), 0.0) <= 1.0) return clipped;
  std::vector<double> s = v;
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    cum += s[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (s[k] - t > 0.0) tau = t;
  }
  for (auto& x : v) x = std::max(0.0, x - tau);
  return v;
}

// I_M + snr H^H Q H
CMatrix dual_mac_covariance(const ChannelMatrix& h, std::span<const double> q) {
  const std::size_t m = h.antennas();
  CMatrix s = CMatrix::identity(m);
  for (std::size_t i = 0; i < h.users(); ++i) {
    const double w = h.snr * q[i];
    if (w == 0.0) continue;
    for (std::size_t r = 0; r < m; ++r) {
      const cplx hr = std::conj(h.h(i, r)) * w;
      for (std::size_t c = 0; c < m; ++c) s(r, c) += hr * h.h(i, c);
    }
  }
  return s;
}

std::vector<double> dual_mac_gradient(const ChannelMatrix& h, std::span<const double> q) {
  const CMatrix s_inv = inverse(dual_mac_covariance(h, q));
  std::vector<double> g(h.users());
  for (std::size_t i = 0; i < h.users(); ++i) {
    const CMatrix hi = h.h.row(i);
    g[i] = h.snr * matmul(matmul(hi, s_inv), hermitian(hi))(0, 0).real() / std::log(2.0);
  }
  return g;
}

// Upper bound on (optimum - current) for a concave objective over the capped simplex.
double frank_wolfe_gap(std::span<const double> g, std::span<const double> q) {
  const double best_vertex = std::max(0.0, *std::max_element(g.begin(), g.end()));
  double gq = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) gq += g[i] * q[i];
  return std::max(0.0, best_vertex - gq);
}

SumCapacitySolution solve_two_user(const ChannelMatrix& h) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double q1) {
    const double q[2] = {q1, 1.0 - q1};
    return dual_mac_objective(h, q);
  };
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (hi - lo > 1e-12 && it < 200) {
    ++it;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  SumCapacitySolution sol;
  sol.iterations = it;
  double best_q = 0.5 * (lo + hi);
  double best_f = f(best_q);
  for (double edge : {0.0, 1.0}) {
    const double fe = f(edge);
    if (fe > best_f) {
      best_f = fe;
      best_q = edge;
    }
  }
  sol.q = {best_q, 1.0 - best_q};
  sol.capacity = best_f;
  sol.certified_gap = frank_wolfe_gap(dual_mac_gradient(h, sol.q), sol.q);
  return sol;
}

SumCapacitySolution solve_general(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  std::vector<double> q(k, 1.0 / static_cast<double>(k));
  double fq = dual_mac_objective(h, q);
  double step = 1.0;
  SumCapacitySolution sol;
  double gap = 0.0;
  int it = 0;
  for (; it < 100000; ++it) {
    const std::vector<double> g = dual_mac_gradient(h, q);
    gap = frank_wolfe_gap(g, q);
    if (gap < 1e-10) break;
    if (it == 0) step = 1.0 / std::max(1e-12, *std::max_element(g.begin(), g.end()));
    // Armijo backtracking with step halving; a successful step doubles the next trial step.
    double t = 2.0 * step;
    bool moved = false;
    std::vector<double> candidate;
    double fc = fq;
    while (t > 1e-30) {
      std::vector<double> v(k);
      for (std::size_t i = 0; i < k; ++i) v[i] = q[i] + t * g[i];
      candidate = project_capped_simplex(std::move(v));
      double lin = 0.0;
      for (std::size_t i = 0; i < k; ++i) lin += g[i] * (candidate[i] - q[i]);
      fc = dual_mac_objective(h, candidate);
      if (fc >= fq + 1e-4 * lin && lin > 0.0) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    const double improvement = fc - fq;
    q = std::move(candidate);
    fq = fc;
    step = t;
    if (improvement < 1e-14 && gap < 1e-8) break;
  }
  sol.q = q;
  sol.capacity = fq;
  sol.certified_gap = frank_wolfe_gap(dual_mac_gradient(h, q), q);
  sol.iterations = it;
  return sol;
}

}  // namespace

ChannelMatrix::ChannelMatrix(CMatrix h_in, double snr_in) : h(std::move(h_in)), snr(snr_in) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw std::invalid_argument("SNR must be positive and finite");
  if (h.rows() == 0 || h.rows() > h.cols()) {
    throw std::invalid_argument("channel must have 1 <= K <= M (got K=" + std::to_string(h.rows()) +
                                ", M=" + std::to_string(h.cols()) + ")");
  }
  for (const auto& z : h.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw std::invalid_argument("non-finite channel gain");
  }
}

RateReport make_report(std::string scheme, std::vector<double> per_user_rates) {
  RateReport r{std::move(scheme), std::move(per_user_rates), 0.0};
  r.sum_rate = std::accumulate(r.per_user_rates.begin(), r.per_user_rates.end(), 0.0);
  return r;
}

double log2_plus(double x) { return x > 1.0 ? std::log2(x) : 0.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

cplx optimal_alpha(std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr) {
  check_lengths(h_eff, a);
  return snr * std::conj(cross(h_eff, a)) / (1.0 + snr * norm_sq(h_eff));
}

double effective_noise_var(cplx alpha, std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr) {
  check_lengths(h_eff, a);
  double mismatch = 0.0;
  for (std::size_t k = 0; k < h_eff.size(); ++k) mismatch += std::norm(alpha * h_eff[k] - a[k].to_complex());
  return snr * mismatch + std::norm(alpha);
}

double comp_rate(std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr) {
  check_lengths(h_eff, a);
  const double a2 = int_norm_sq(a);
  if (a2 == 0.0) throw std::invalid_argument("comp_rate: zero coefficient vector");
  // ||a||^2 ||h'||^2 - |h' a^H|^2 via Lagrange's identity, so it cannot go negative.
  double misalign = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      misalign += std::norm(a[i].to_complex() * h_eff[j] - a[j].to_complex() * h_eff[i]);
    }
  }
  const double num = 1.0 + snr * norm_sq(h_eff);
  const double den = a2 + misalign * snr;
  return log2_plus(num / den);
}

double comp_rate_quadratic_form(std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr) {
  check_lengths(h_eff, a);
  if (int_norm_sq(a) == 0.0) throw std::invalid_argument("comp_rate: zero coefficient vector");
  const std::size_t n = a.size();
  const double w = snr / (snr * norm_sq(h_eff) + 1.0);
  // a (I - w h'^H h') a^H
  CMatrix mid = CMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) mid(r, c) -= w * std::conj(h_eff[r]) * h_eff[c];
  cplx q = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) q += a[r].to_complex() * mid(r, c) * std::conj(a[c].to_complex());
  return log2_plus(1.0 / q.real());
}

RateReport if_sum_rate(const ChannelMatrix& h, const CMatrix& t, const IntegerCoeffMatrix& a) {
  const std::size_t k = h.users();
  if (t.rows() != h.antennas() || t.cols() != k) throw DimensionError("if_sum_rate: precoder must be M x K");
  if (a.size() != k) throw DimensionError("if_sum_rate: integer matrix must be K x K");
  const double power = frob_norm_sq(t);
  if (power > 1.0 + kPowerSlack) {
    throw PowerConstraintError("precoder violates trace(T^H T) <= 1 (got " + std::to_string(power) + ")");
  }
  if (!a.full_rank()) throw std::invalid_argument("if_sum_rate: integer matrix is rank deficient");
  std::vector<double> rates(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto h_eff = row_times(h.h, i, t);
    const auto ai = a.row(i);
    rates[i] = comp_rate(h_eff, ai, h.snr);
  }
  return make_report("if", std::move(rates));
}

RateReport dif_rate(const IntegerCoeffMatrix& a, std::span<const cplx> d, double snr) {
  if (d.size() != a.size()) throw DimensionError("dif_rate: diagonal length must equal size of A");
  std::vector<double> rates(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (d[i] == cplx{0.0, 0.0}) throw std::invalid_argument("dif_rate: zero diagonal entry");
    const double a2 = static_cast<double>(gi_vec_norm_sq(a.row(i)));
    rates[i] = log2_plus(1.0 / a2 + std::norm(d[i]) * snr);
  }
  return make_report("dif", std::move(rates));
}

double dual_mac_objective(const ChannelMatrix& h, std::span<const double> q) {
  if (q.size() != h.users()) throw DimensionError("dual_mac_objective: need one power per user");
  const std::size_t k = h.users();
  // Sylvester: det(I_M + snr H^H Q H) = det(I_K + snr Q^{1/2} H H^H Q^{1/2}).
  const CMatrix g = gram(h.h);
  CMatrix s = CMatrix::identity(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s(i, j) += h.snr * std::sqrt(q[i] * q[j]) * g(i, j);
  return std::log2(std::abs(det(s)));
}

SumCapacitySolution solve_dpc_sum_capacity(const ChannelMatrix& h) {
  if (h.users() == 1) {
    SumCapacitySolution sol;
    sol.q = {1.0};
    sol.capacity = std::log2(1.0 + h.snr * norm_sq(h.h.row_vector(0)));
    return sol;
  }
  if (h.users() == 2) return solve_two_user(h);
  return solve_general(h);
}

double dpc_sum_capacity(const ChannelMatrix& h) { return solve_dpc_sum_capacity(h).capacity; }

double hi_snr_sum_capacity(const ChannelMatrix& h) {
  const auto k = static_cast<double>(h.users());
  return k * std::log2(h.snr / k) + std::log2(std::abs(det(gram(h.h))));
}

double gap_to_capacity(const RateReport& report, const ChannelMatrix& h) {
  return dpc_sum_capacity(h) - report.sum_rate;
}

}  // namespace ifbc
