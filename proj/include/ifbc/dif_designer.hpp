#pragma once

#include <cstdint>
#include <vector>

#include "ifbc/complex_linalg.hpp"
#include "ifbc/gaussian_integers.hpp"
#include "ifbc/rate_functions.hpp"

namespace ifbc {

/// Diagonal scaling D = c * D0. With unit_det set, d holds D0 and
/// prod |d_i| = 1; otherwise d holds the final diagonal itself.
struct DiagonalScale {
  std::vector<cplx> d;
  bool unit_det = true;
  double c = 1.0;

  /// D0 = diag(exp(beta_i + j theta_i)); betas are shifted to sum to zero.
  static DiagonalScale from_log_polar(std::vector<double> beta, const std::vector<double>& theta);
  static DiagonalScale identity(std::size_t k);

  [[nodiscard]] CMatrix matrix() const { return CMatrix::diagonal(d); }
  /// The final c * D0 diagonal entries.
  [[nodiscard]] std::vector<cplx> scaled() const;
};

/// Everything a designer produces: integer matrix, scaling, precoder and rates.
struct PrecoderDesign {
  IntegerCoeffMatrix a;
  DiagonalScale d0;
  double c = 1.0;
  CMatrix t;                      // M x K, trace(T^H T) = 1
  RateReport rates;               // finite-SNR computation rates
  double hi_snr_sum_rate = 0.0;   // K log2(c^2 snr), the high-SNR surrogate
  bool regularized = false;
  double rho = 0.0;               // row correlation for K = 2, NaN otherwise
};

/// Precision-matrix used by the designers: (H H^H)^-1, or (K/snr I + H H^H)^-1
/// when regularized.
CMatrix design_precision(const ChannelMatrix& h, bool regularized);

/// |M12| / sqrt(M11 M22) for the (possibly regularized) precision matrix;
/// equals |h1 h2^H| / (||h1|| ||h2||) in the plain case. K = 2 only.
double rho_of_channel(const ChannelMatrix& h, bool regularized);

/// ||a1|| ||a2|| - rho |a2 a1^H|
double f_of_A(const IntegerCoeffMatrix& a, double rho);

/// Minimizer over sums of two squares N of sqrt(N+1) - rho sqrt(N); the
/// smaller N wins a tie.
NormSetValue optimal_N(double rho);

/// Lower end of the rho-interval on which N is optimal (0 for N = 0).
double transition_rho(NormSetValue n);

/// A = [[1, 0], [a21, 1]] with |a21|^2 = optimal_N(rho).
IntegerCoeffMatrix optimal_A_2user(double rho);

/// Best real k >= 0 for sqrt(k^2+1) - rho k (smaller k on ties).
std::int64_t optimal_k_real(double rho);
/// A = [[1, 0], [k, 1]] with k = optimal_k_real(rho).
IntegerCoeffMatrix optimal_A_2user_real(double rho);
/// Real-integer transition value u_k (in the u = rho / sqrt(1 - rho^2) scale).
double transition_u_real(std::int64_t k);

/// Unit-|det| D0 minimizing design_objective for fixed A (K = 2). Without
/// regularization this is the minimizer of trace(T0^H T0).
DiagonalScale optimal_D0_2user(const ChannelMatrix& h, const IntegerCoeffMatrix& a, bool regularized);

/// trace(T0^H T0) for T0 = H^H M D0 A.
double precoder_trace(const ChannelMatrix& h, const IntegerCoeffMatrix& a, const DiagonalScale& d0,
                      bool regularized);

/// trace(A^H D0^H M D0 A), the quantity the designers minimize. It equals
/// precoder_trace for the plain M; with the regularized M it is the
/// substituted objective rather than the exact trace.
double design_objective(const ChannelMatrix& h, const IntegerCoeffMatrix& a, const DiagonalScale& d0,
                        bool regularized);

/// T0 = H^H M D0 A, c = 1 / sqrt(trace(T0^H T0)), T = c T0.
PrecoderDesign build_precoder(const ChannelMatrix& h, const IntegerCoeffMatrix& a, const DiagonalScale& d0,
                              bool regularized);

/// Two-user analytic design: rho -> A (table lookup) -> D0 -> precoder.
/// With real_integers set, A is restricted to Z^{2x2}.
PrecoderDesign design_dif_2user(const ChannelMatrix& h, bool regularized, bool real_integers = false);

/// 2 log2(f(rho) / sqrt(1 - rho^2)), the high-SNR gap to sum capacity.
double asymptotic_gap(double rho, bool real_constraint = false);

struct GeneralKOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  int max_sweeps = 30;
  double delta = 0.75;  // LLL parameter
};

/// Search over D0 minimizing design_objective, with A from lattice reduction
/// of a generator G0 satisfying G0^H G0 = D0^H M D0; the best
/// design by finite-SNR sum rate is returned. Requires 2 <= K <= M.
PrecoderDesign design_dif_generalK(const ChannelMatrix& h, bool regularized, const GeneralKOptions& opts = {});

}  // namespace ifbc
