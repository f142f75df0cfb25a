// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include "irsperf/channel.hpp"

namespace irsperf {

/// Normal N(mu_bar, sigma2_bar) restricted to [0, inf) and renormalized
/// by xi = 1/Q(z_bar), z_bar = -mu_bar/sigma_bar.
struct TruncatedNormal {
    double mu_bar = 0.0;
    double sigma2_bar = 1.0;
    double z_bar = 0.0;
    double xi = 2.0;

    static TruncatedNormal from_moments(double mu_bar, double sigma2_bar);
    double sigma_bar() const { return std::sqrt(sigma2_bar); }
};

struct WMeanVar {
    double mu_w = 0.0;
    double sigma2_w = 0.0;
};

/// Statistics of the reflected sum under uniform phase error on
/// [-tau, tau). sum_mean_sq is sum_n mu_{R,n}^2, total_power is
/// sum_n eta_n^2 kappa_g kappa_h; together with the variances they
/// satisfy sigma2_R + sum_mean_sq + sigma2_I = total_power.
struct QuantizedWStats {
    TruncatedNormal real_part;
    TruncatedNormal imag_part;
    double tau = 0.0;
    int bits = 0;
    double sum_mean_sq = 0.0;
    double total_power = 0.0;
};

/// Gamma(a+i) Gamma(b+i) / (Gamma(a) Gamma(b)), through log-gamma.
double t_ratio(double a, double b, double i);

/// CLT fit of W = sum_n eta_n g_n h_n.
TruncatedNormal w_stats(const SystemConfig& cfg);

WMeanVar w_mean_var(const TruncatedNormal& tn);

/// E[W^alpha] for alpha in 1..4.
double w_moment(const TruncatedNormal& tn, int alpha);

/// E[v^alpha] of a Nakagami amplitude.
double nakagami_moment(const LinkParams& leg, double alpha);

QuantizedWStats quantized_w_stats(const SystemConfig& cfg, int bits);

}  // namespace irsperf
