// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include "irsperf/snrdist.hpp"

namespace irsperf {

/// High-SNR behaviour P_out ~ omega_op (gamma_th / gamma_bar)^g_d and
/// P_e ~ (g_c gamma_bar)^-g_d. log_omega_op is kept because omega_op
/// overflows a double for large N.
struct AsymptoticResult {
    double g_d = 0.0;
    double log_omega_op = 0.0;
    double omega_op = 0.0;
    double o_c = 0.0;
    double g_c = 0.0;
    double gamma_th = 1.0;

    double outage(double gamma_bar) const;
    double ser(double gamma_bar) const;
};

struct RateBounds {
    double lower = 0.0;
    double upper = 0.0;
};

enum class QuantizedVariant { exact, large_n };

/// Raised for m_g == m_h, where only the diversity order is available.
class EqualShapeError : public DomainError {
public:
    using DomainError::DomainError;
};

double outage_probability(double gamma_th, const SnrCdfParams& p);

/// g_d = m_v + min(m_g, m_h) N.
double diversity_order(const SystemConfig& cfg);

/// log of the leading small-argument coefficient of the outage.
double log_omega_op(const SystemConfig& cfg);

AsymptoticResult asymptotic_outage(const SystemConfig& cfg, double gamma_th);
AsymptoticResult asymptotic_ser(const SystemConfig& cfg);

/// Bounds from the second and fourth moments of the received envelope:
/// upper log2(1 + gamma_bar m2), lower log2(1 + gamma_bar m2^3 / m4).
RateBounds rate_bounds_from_moments(double m2, double m4, double gamma_bar);

RateBounds rate_bounds(const SystemConfig& cfg);
RateBounds rate_bounds(const LinkParams& v, const TruncatedNormal& tn, double gamma_bar);

/// Limit under transmit-power scaling p = E N^2, homogeneous elements.
double asymptotic_rate(const SystemConfig& cfg, double energy_scaled_snr);

RateBounds quantized_rate_bounds(const SystemConfig& cfg, int bits,
                                 QuantizedVariant variant = QuantizedVariant::exact);

struct SerBound {
    double value = 0.0;
    double theta_u = 0.0;
};

SerBound ser_upper_bound_detail(const SystemConfig& cfg);
double ser_upper_bound(const SystemConfig& cfg);

/// Outage for a half-normal direct link (m_v = 1/2) through Owen's T.
double one_sided_gaussian_outage(double gamma_th, const SnrCdfParams& p);

}  // namespace irsperf
