#include "ifbc/baseline_precoders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ifbc {

std::vector<double> water_fill(const std::vector<double>& weights, const std::vector<double>& noise, double total) {
  const std::size_t n = weights.size();
  if (noise.size() != n || n == 0) throw DimensionError("water_fill: length mismatch");
  if (!(total > 0.0)) throw std::invalid_argument("water_fill: total must be positive");
  // With level mu, p_i = max(0, mu / w_i - n_i) and sum w_i p_i = sum max(0, mu - w_i n_i).
  auto used = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::max(0.0, mu - weights[i] * noise[i]);
    return s;
  };
  double lo = 0.0;
  double hi = total;
  for (std::size_t i = 0; i < n; ++i) hi = std::max(hi, total + weights[i] * noise[i]);
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (used(mid) < total ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  std::vector<double> p(n);
  double spent = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::max(0.0, mu / weights[i] - noise[i]);
    spent += weights[i] * p[i];
  }
  for (auto& x : p) x *= total / spent;
  return p;
}

namespace {

PrecoderDesign zf_with_loading(const ChannelMatrix& h, const std::vector<double>& power) {
  const std::size_t k = h.users();
  const CMatrix m = design_precision(h, false);
  PrecoderDesign out;
  out.a = IntegerCoeffMatrix::identity(k);
  out.d0.unit_det = false;
  out.d0.d.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.d0.d[i] = std::sqrt(power[i]);
  out.t = matmul(matmul(hermitian(h.h), m), out.d0.matrix());
  out.rates = if_sum_rate(h, out.t, out.a);
  out.rates.scheme = "zf";
  out.hi_snr_sum_rate = out.rates.sum_rate;
  out.rho = k == 2 ? rho_of_channel(h, false) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace

PrecoderDesign design_zf(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  const CMatrix m = design_precision(h, false);
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = m(i, i).real();
  return zf_with_loading(h, water_fill(w, std::vector<double>(k, 1.0 / h.snr), 1.0));
}

PrecoderDesign design_zf_uniform(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  PrecoderDesign out = build_precoder(h, IntegerCoeffMatrix::identity(k), DiagonalScale::identity(k), false);
  out.rates.scheme = "zf";
  return out;
}

PrecoderDesign design_rzf(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  PrecoderDesign out = build_precoder(h, IntegerCoeffMatrix::identity(k), DiagonalScale::identity(k), true);
  out.rates.scheme = "rzf";
  return out;
}

RateReport design_zfdp(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  const LQFactors lq = lq_decompose(h.h);
  std::vector<double> gain(k);
  std::vector<double> noise(k);
  for (std::size_t i = 0; i < k; ++i) {
    gain[i] = std::norm(lq.l(i, i));
    noise[i] = 1.0 / gain[i];
  }
  const std::vector<double> p = water_fill(std::vector<double>(k, 1.0), noise, h.snr);
  std::vector<double> rates(k);
  for (std::size_t i = 0; i < k; ++i) rates[i] = std::log2(1.0 + gain[i] * p[i]);
  return make_report("zfdp", std::move(rates));
}

}  // namespace ifbc
