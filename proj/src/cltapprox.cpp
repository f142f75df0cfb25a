// SPDX-License-Identifier: Apache-2.0

#include "irsperf/cltapprox.hpp"

#include "irsperf/specfun.hpp"

#include <numbers>

namespace irsperf {

TruncatedNormal TruncatedNormal::from_moments(double mu_bar, double sigma2_bar)
{
    if (!(sigma2_bar > 0.0)) throw DomainError("TruncatedNormal: variance must be positive");
    TruncatedNormal tn;
    tn.mu_bar = mu_bar;
    tn.sigma2_bar = sigma2_bar;
    tn.z_bar = -mu_bar / std::sqrt(sigma2_bar);
    tn.xi = 1.0 / specfun::gaussian_q(tn.z_bar);
    return tn;
}

double t_ratio(double a, double b, double i)
{
    return std::exp(std::lgamma(a + i) + std::lgamma(b + i) - std::lgamma(a) - std::lgamma(b));
}

TruncatedNormal w_stats(const SystemConfig& cfg)
{
    if (cfg.n_elements < 1) throw DomainError("w_stats: N must be at least 1");
    const double mg = cfg.g.m;
    const double mh = cfg.h.m;
    const double t = t_ratio(mg, mh, 0.5);
    const double spread = 1.0 - t * t / (mg * mh);
    double mu = 0.0;
    double s2 = 0.0;
    for (int n = 0; n < cfg.n_elements; ++n) {
        const double e = cfg.eta_n(n);
        const double kk = cfg.kappa_g(n) * cfg.kappa_h(n);
        mu += e * std::sqrt(kk / (mg * mh)) * t;
        s2 += e * e * kk * spread;
    }
    return TruncatedNormal::from_moments(mu, s2);
}

WMeanVar w_mean_var(const TruncatedNormal& tn)
{
    const double s = tn.sigma_bar();
    const double xp = tn.xi * specfun::normal_pdf(tn.z_bar);
    return {tn.mu_bar + s * xp, tn.sigma2_bar * (1.0 + tn.z_bar * xp - xp * xp)};
}

double w_moment(const TruncatedNormal& tn, int alpha)
{
    if (alpha < 1 || alpha > 4) throw DomainError("w_moment: alpha must lie in 1..4");
    const double s = std::sqrt(2.0 * tn.sigma2_bar);
    const double x = -tn.mu_bar / s;
    double sum = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= alpha; ++i) {
        sum += binom * std::pow(s, i) * std::pow(tn.mu_bar, alpha - i) * specfun::cal_i(i, x);
        binom = binom * (alpha - i) / (i + 1);
    }
    return tn.xi * std::numbers::inv_sqrtpi * sum;
}

double nakagami_moment(const LinkParams& leg, double alpha)
{
    return std::exp(std::lgamma(leg.m + alpha / 2.0) - std::lgamma(leg.m)) *
           std::pow(leg.kappa() / leg.m, alpha / 2.0);
}

QuantizedWStats quantized_w_stats(const SystemConfig& cfg, int bits)
{
    if (bits < 1) throw DomainError("quantized_w_stats: bits must be at least 1");
    if (cfg.n_elements < 1) throw DomainError("quantized_w_stats: N must be at least 1");
    const double tau = std::numbers::pi / std::ldexp(1.0, bits);
    const double sinc = std::sin(tau) / tau;
    const double s2t = std::sin(2.0 * tau) / (4.0 * tau);
    const double mg = cfg.g.m;
    const double mh = cfg.h.m;
    const double t = t_ratio(mg, mh, 0.5);

    double mu_r = 0.0;
    double sum_mean_sq = 0.0;
    double power = 0.0;
    for (int n = 0; n < cfg.n_elements; ++n) {
        const double e = cfg.eta_n(n);
        const double kk = cfg.kappa_g(n) * cfg.kappa_h(n);
        const double mean_n = e * std::sqrt(kk / (mg * mh)) * t * sinc;
        mu_r += mean_n;
        sum_mean_sq += mean_n * mean_n;
        power += e * e * kk;
    }
    QuantizedWStats q;
    q.tau = tau;
    q.bits = bits;
    q.sum_mean_sq = sum_mean_sq;
    q.total_power = power;
    q.real_part = TruncatedNormal::from_moments(mu_r, (s2t + 0.5) * power - sum_mean_sq);
    TruncatedNormal im;
    im.mu_bar = 0.0;
    // 1/2 - sin(2 tau)/(4 tau), series form once the difference cancels.
    const double x = 2.0 * tau;
    const double imag_frac = x < 1e-2 ? x * x / 12.0 - x * x * x * x / 240.0 : 0.5 - s2t;
    im.sigma2_bar = imag_frac * power;
    im.z_bar = 0.0;
    im.xi = 2.0;
    q.imag_part = im;
    return q;
}

}  // namespace irsperf
