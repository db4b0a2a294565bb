#pragma once

#include <span>
#include <string>
#include <vector>

#include "ifbc/complex_linalg.hpp"
#include "ifbc/gaussian_integers.hpp"

namespace ifbc {

class PowerConstraintError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// K x M channel (rows h_i, one per single-antenna receiver) with the linear
/// SNR of the total-power constraint; noise has unit variance.
struct ChannelMatrix {
  CMatrix h;
  double snr = 1.0;

  ChannelMatrix() = default;
  /// Throws std::invalid_argument for snr <= 0, K > M or non-finite entries.
  ChannelMatrix(CMatrix h, double snr);

  [[nodiscard]] std::size_t users() const noexcept { return h.rows(); }
  [[nodiscard]] std::size_t antennas() const noexcept { return h.cols(); }
  [[nodiscard]] ChannelMatrix with_snr(double s) const { return {h, s}; }
};

struct RateReport {
  std::string scheme;
  std::vector<double> per_user_rates;  // bits per channel use
  double sum_rate = 0.0;
};

RateReport make_report(std::string scheme, std::vector<double> per_user_rates);

/// max{0, log2 x}
double log2_plus(double x);

double db_to_linear(double db);

/// Scalar receiver coefficient minimizing the effective-noise variance.
cplx optimal_alpha(std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr);

/// snr * ||alpha h' - a||^2 + |alpha|^2
double effective_noise_var(cplx alpha, std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr);

/// Computation rate in the ratio form
/// log2+ (1 + snr ||h'||^2) / (||a||^2 + (||a||^2 ||h'||^2 - |h' a^H|^2) snr).
/// Throws std::invalid_argument for an all-zero coefficient vector.
double comp_rate(std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr);

/// The same rate evaluated as log2+ 1 / (a (I - snr/(snr ||h'||^2 + 1) h'^H h') a^H).
double comp_rate_quadratic_form(std::span<const cplx> h_eff, std::span<const GaussInt> a, double snr);

/// Per-user computation rates with h'_i = h_i T. T is M x K with trace(T^H T) <= 1.
RateReport if_sum_rate(const ChannelMatrix& h, const CMatrix& t, const IntegerCoeffMatrix& a);

/// Closed form sum_i log2+(1/||a_i||^2 + |d_i|^2 snr) valid when H T = D A.
RateReport dif_rate(const IntegerCoeffMatrix& a, std::span<const cplx> d, double snr);

/// Sum capacity of the broadcast channel via the dual-MAC program over
/// diagonal Q >= 0 with trace(Q) <= 1.
double dpc_sum_capacity(const ChannelMatrix& h);

/// Result of the sum-capacity solver, including the optimal user powers and
/// a certified upper bound on the suboptimality (bits).
struct SumCapacitySolution {
  double capacity = 0.0;
  std::vector<double> q;
  double certified_gap = 0.0;
  int iterations = 0;
};
SumCapacitySolution solve_dpc_sum_capacity(const ChannelMatrix& h);

/// log2 det(I + snr H^H Q H) for a diagonal Q given by its entries.
double dual_mac_objective(const ChannelMatrix& h, std::span<const double> q);

/// K log2(snr/K) + log2 det(H H^H)
double hi_snr_sum_capacity(const ChannelMatrix& h);

/// Sum capacity minus the report's sum rate.
double gap_to_capacity(const RateReport& report, const ChannelMatrix& h);

}  // namespace ifbc
