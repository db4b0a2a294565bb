#pragma once

#include <vector>

#include "ifbc/dif_designer.hpp"
#include "ifbc/rate_functions.hpp"

namespace ifbc {

/// Water-filling: maximizes sum log(1 + p_i / n_i) subject to
/// sum w_i p_i = total, p_i >= 0. The water level is found by bisection.
std::vector<double> water_fill(const std::vector<double>& weights, const std::vector<double>& noise, double total);

/// Zero forcing with water-filled per-user power, A = I.
/// d holds the final diagonal (unit_det is false).
PrecoderDesign design_zf(const ChannelMatrix& h);

/// Zero forcing with uniform loading D = c I.
PrecoderDesign design_zf_uniform(const ChannelMatrix& h);

/// Regularized zero forcing T = c H^H (K/snr I + H H^H)^-1 with uniform loading;
/// rates are the treat-interference-as-noise rates.
PrecoderDesign design_rzf(const ChannelMatrix& h);

/// Zero-forcing dirty-paper coding in natural user order over H = L Q.
RateReport design_zfdp(const ChannelMatrix& h);

}  // namespace ifbc
