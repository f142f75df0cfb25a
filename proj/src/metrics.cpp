// SPDX-License-Identifier: Apache-2.0

#include "irsperf/metrics.hpp"

#include "irsperf/specfun.hpp"

#include <boost/math/special_functions/owens_t.hpp>

#include <algorithm>
#include <numbers>

namespace irsperf {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double envelope_moment(const LinkParams& v, const double w[5], int order)
{
    // E[(v + W)^order] for independent v, W; w[i] = E[W^i].
    double sum = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= order; ++i) {
        sum += binom * nakagami_moment(v, i) * w[order - i];
        binom = binom * (order - i) / (i + 1);
    }
    return sum;
}

void check_not_equal_shapes(const SystemConfig& cfg)
{
    if (cfg.g.m == cfg.h.m) {
        throw EqualShapeError("coefficient of the outage asymptote needs m_g != m_h; diversity order is " +
                              std::to_string(diversity_order(cfg)) +
                              ", estimate the offset from a Monte-Carlo slope fit instead");
    }
}

}  // namespace

double AsymptoticResult::outage(double gamma_bar) const
{
    return std::exp(log_omega_op + g_d * std::log(gamma_th / gamma_bar));
}

double AsymptoticResult::ser(double gamma_bar) const
{
    return std::exp(-g_d * std::log(g_c * gamma_bar));
}

double outage_probability(double gamma_th, const SnrCdfParams& p)
{
    if (!(gamma_th > 0.0)) throw DomainError("outage_probability: threshold must be positive");
    return snr_cdf(gamma_th, p);
}

double diversity_order(const SystemConfig& cfg)
{
    return cfg.v.m + std::min(cfg.g.m, cfg.h.m) * cfg.n_elements;
}

double log_omega_op(const SystemConfig& cfg)
{
    check_not_equal_shapes(cfg);
    const double mv = cfg.v.m;
    const double kv = cfg.v.kappa();
    const bool g_is_a = cfg.g.m < cfg.h.m;
    const double ma = std::min(cfg.g.m, cfg.h.m);
    const double mb = std::max(cfg.g.m, cfg.h.m);
    const double mc = 0.5 * (ma + mb);
    const double gd = diversity_order(cfg);

    double log_om = std::log(2.0) + mv * std::log(mv) + std::lgamma(2.0 * mv) - std::lgamma(mv) - mv * std::log(kv);
    for (int n = 0; n < cfg.n_elements; ++n) {
        const double ka = g_is_a ? cfg.kappa_g(n) : cfg.kappa_h(n);
        const double kb = g_is_a ? cfg.kappa_h(n) : cfg.kappa_g(n);
        const double e = cfg.eta_n(n);
        const double kk = e * e * ka * kb;
        const double log_psi =
            std::log(4.0) + mc * std::log(ma * mb) - mc * std::log(kk) - std::lgamma(ma) - std::lgamma(mb);
        const double log_tau = std::log(2.0) + 0.5 * std::log(ma * mb / kk);
        log_om += log_psi + std::lgamma(2.0 * ma) + std::lgamma(mb - ma) + (mb - ma - 1.0) * kLn2 +
                  (ma - mb) * log_tau;
    }
    return log_om - std::lgamma(2.0 * gd + 1.0);
}

AsymptoticResult asymptotic_outage(const SystemConfig& cfg, double gamma_th)
{
    if (!(gamma_th > 0.0)) throw DomainError("asymptotic_outage: threshold must be positive");
    AsymptoticResult r;
    r.g_d = diversity_order(cfg);
    r.log_omega_op = log_omega_op(cfg);
    r.omega_op = std::exp(r.log_omega_op);
    r.gamma_th = gamma_th;
    r.o_c = std::exp(-std::log(gamma_th) - r.log_omega_op / r.g_d);
    const double a = cfg.modulation.alpha;
    const double b = cfg.modulation.beta;
    r.g_c = b * std::exp(-(std::log(a) + (r.g_d - 1.0) * kLn2 + r.log_omega_op + std::lgamma(r.g_d + 0.5) -
                           0.5 * std::log(std::numbers::pi)) /
                         r.g_d);
    return r;
}

AsymptoticResult asymptotic_ser(const SystemConfig& cfg)
{
    return asymptotic_outage(cfg, cfg.gamma_th());
}

RateBounds rate_bounds_from_moments(double m2, double m4, double gamma_bar)
{
    RateBounds rb;
    rb.upper = std::log2(1.0 + gamma_bar * m2);
    rb.lower = std::log2(1.0 + gamma_bar * m2 * m2 * m2 / m4);
    return rb;
}

RateBounds rate_bounds(const LinkParams& v, const TruncatedNormal& tn, double gamma_bar)
{
    const double w[5] = {1.0, w_moment(tn, 1), w_moment(tn, 2), w_moment(tn, 3), w_moment(tn, 4)};
    return rate_bounds_from_moments(envelope_moment(v, w, 2), envelope_moment(v, w, 4), gamma_bar);
}

RateBounds rate_bounds(const SystemConfig& cfg)
{
    return rate_bounds(cfg.v, w_stats(cfg), cfg.gamma_bar());
}

double asymptotic_rate(const SystemConfig& cfg, double energy_scaled_snr)
{
    if (!cfg.homogeneous()) throw DomainError("asymptotic_rate: needs homogeneous elements");
    const double t = t_ratio(cfg.g.m, cfg.h.m, 0.5);
    const double e = cfg.eta_n(0);
    const double mu2 = e * e * cfg.kappa_g(0) * cfg.kappa_h(0) * t * t / (cfg.g.m * cfg.h.m);
    return std::log2(1.0 + energy_scaled_snr * mu2);
}

RateBounds quantized_rate_bounds(const SystemConfig& cfg, int bits, QuantizedVariant variant)
{
    const auto q = quantized_w_stats(cfg, bits);
    const auto& re = q.real_part;
    double w[5];
    if (variant == QuantizedVariant::exact) {
        w[0] = 1.0;
        for (int i = 1; i <= 4; ++i) w[i] = w_moment(re, i);
    } else {
        // Plain normal moments: truncation ignored.
        const double m = re.mu_bar;
        const double s2 = re.sigma2_bar;
        w[0] = 1.0;
        w[1] = m;
        w[2] = m * m + s2;
        w[3] = m * m * m + 3.0 * m * s2;
        w[4] = m * m * m * m + 6.0 * m * m * s2 + 3.0 * s2 * s2;
    }
    const double r2 = envelope_moment(cfg.v, w, 2);
    const double r4 = envelope_moment(cfg.v, w, 4);
    const double si2 = q.imag_part.sigma2_bar;
    const double m2 = r2 + si2;
    const double m4 = r4 + 2.0 * r2 * si2 + 3.0 * si2 * si2;
    return rate_bounds_from_moments(m2, m4, cfg.gamma_bar());
}

SerBound ser_upper_bound_detail(const SystemConfig& cfg)
{
    const auto tn = w_stats(cfg);
    const double mu = tn.mu_bar;
    const double s2 = tn.sigma2_bar;
    const double s = std::sqrt(s2);
    const double mv = cfg.v.m;
    const double kv = cfg.v.kappa();
    const double a = cfg.modulation.alpha;
    const double bg = cfg.modulation.beta * cfg.gamma_bar();

    auto objective = [&](double th) {
        const double c2 = std::cos(th) * std::cos(th);
        const double sn2 = std::sin(th) * std::sin(th);
        const double u1 = mv / kv + bg / (2.0 * sn2);
        const double z1 = 1.0 / (2.0 * s2) + bg / (2.0 * c2);
        return -mu * mu / (2.0 * s2) + mu * mu / (2.0 * s2 + 2.0 * bg * s2 * s2 / c2) - mv * std::log(u1) -
               0.5 * std::log(z1) + specfun::log_gaussian_q(-mu / (s * std::sqrt(1.0 + bg * s2 / c2)));
    };

    constexpr int kGrid = 2048;
    const double half_pi = 0.5 * std::numbers::pi;
    const double step = half_pi / kGrid;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double v = objective((i + 0.5) * step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (!std::isfinite(best_val)) throw ConvergenceError("ser_upper_bound: objective not finite on the grid");

    // Golden-section refinement inside the neighbouring grid cells.
    double lo = std::max(best - 0.5, 0.0) * step + 1e-300;
    double hi = std::min(best + 1.5, static_cast<double>(kGrid)) * step;
    hi = std::min(hi, half_pi * (1.0 - 1e-16));
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    int iter = 0;
    while (hi - lo > 1e-10) {
        if (++iter > 200) throw ConvergenceError("ser_upper_bound: golden-section search did not converge");
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = objective(x1);
        }
    }
    double theta = 0.5 * (lo + hi);
    double val = objective(theta);
    if (best_val > val) {
        theta = (best + 0.5) * step;
        val = best_val;
    }
    const double log_pref = std::log(a) + mv * std::log(mv) + std::log(tn.xi) - mv * std::log(kv) -
                            std::log(2.0 * std::numbers::sqrt2) - std::log(s);
    return {std::exp(log_pref + val), theta};
}

double ser_upper_bound(const SystemConfig& cfg)
{
    return ser_upper_bound_detail(cfg).value;
}

double one_sided_gaussian_outage(double gamma_th, const SnrCdfParams& p)
{
    if (p.m_tilde_v != 0) throw DomainError("one_sided_gaussian_outage: needs m_v = 1/2");
    if (!(gamma_th > 0.0)) throw DomainError("one_sided_gaussian_outage: threshold must be positive");
    const double r = std::sqrt(gamma_th / p.gamma_bar);
    const double mu = p.tn.mu_bar;
    const double d = p.delta;
    const double sc = 2.0 * p.tn.sigma2_bar * std::sqrt(p.a);
    const double c = p.lambda * sc;
    const double owen_a = 1.0 / std::sqrt(d);
    // int_t^inf e^{-d u^2} Gamma(1/2, u^2) du
    auto j0 = [&](double t) {
        const double h = t * std::sqrt(2.0 * d);
        const double inner = h >= 0.0
                                 ? 0.5 * specfun::gaussian_q(h) - boost::math::owens_t(h, owen_a)
                                 : 0.5 - 0.5 * specfun::gaussian_q(-h) - boost::math::owens_t(-h, owen_a);
        return 2.0 * std::numbers::pi / std::sqrt(d) * inner;
    };
    double raw = 0.0;
    if (r <= mu) {
        raw = c * (j0((mu - r) / sc) - j0(mu / sc));
    } else {
        const double tr = (r - mu) / sc;
        raw = 1.0 - c * (2.0 * std::sqrt(std::numbers::pi) * specfun::gaussian_power_tail(0, tr, d) - j0(tr));
    }
    if (!std::isfinite(raw) || raw < -1e-6 || raw > 1.0 + 1e-6) {
        throw NumericalConsistencyError("one_sided_gaussian_outage: closed form returned " + std::to_string(raw));
    }
    return std::clamp(raw, 0.0, 1.0);
}

}  // namespace irsperf
