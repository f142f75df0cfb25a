// SPDX-License-Identifier: Apache-2.0

#include "irsperf/snrdist.hpp"

#include "irsperf/specfun.hpp"

#include <algorithm>
#include <complex>
#include <numbers>

namespace irsperf {

namespace {

using specfun::cal_i;
using specfun::cal_j;

double binomial(int n, int k)
{
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Relative cancellation beyond which the closed forms hand over to quadrature.
constexpr double kCancellation = 1e-7;

double log_direct_pdf(double x, const SnrCdfParams& p)
{
    const double m = p.m_v;
    return std::log(2.0) + m * std::log(m) + (2.0 * m - 1.0) * std::log(x) - m * x * x / p.kappa_v -
           std::lgamma(m) - m * std::log(p.kappa_v);
}

}  // namespace

SnrCdfParams SnrCdfParams::make(const LinkParams& v, const TruncatedNormal& tn, double gamma_bar)
{
    const double twice = 2.0 * v.m;
    if (std::abs(twice - std::round(twice)) > 1e-12 || v.m < 0.5) {
        throw UnsupportedShapeError("analytic SNR CDF needs m_v to be a positive multiple of 1/2 (0.5, 1, 1.5, ...); got " +
                                    std::to_string(v.m) + ", use the Monte-Carlo path instead");
    }
    if (!(gamma_bar > 0.0)) throw DomainError("SnrCdfParams: gamma_bar must be positive");
    SnrCdfParams p;
    p.m_tilde_v = static_cast<int>(std::lround(twice)) - 1;
    p.m_v = v.m;
    p.kappa_v = v.kappa();
    p.tn = tn;
    p.gamma_bar = gamma_bar;
    const double s2 = tn.sigma2_bar;
    p.a = v.m / p.kappa_v + 1.0 / (2.0 * s2);
    p.delta = 2.0 * s2 * v.m / p.kappa_v;
    const double m = v.m;
    p.lambda = std::exp(m * std::log(m) + std::log(tn.xi) - std::lgamma(m) - m * std::log(p.kappa_v) -
                        m * std::log(p.a) - 0.5 * std::log(2.0 * std::numbers::pi * s2));
    return p;
}

SnrCdfParams SnrCdfParams::make(const SystemConfig& cfg)
{
    return make(cfg.v, w_stats(cfg), cfg.gamma_bar());
}

ProductPdfParams ProductPdfParams::make(const LinkParams& a, const LinkParams& b, double eta)
{
    ProductPdfParams p;
    p.m_a = a.m;
    p.m_b = b.m;
    const double kk = eta * eta * a.kappa() * b.kappa();
    const double mc = 0.5 * (a.m + b.m);
    p.psi = std::exp(std::log(4.0) + mc * std::log(a.m * b.m) - mc * std::log(kk) - std::lgamma(a.m) -
                     std::lgamma(b.m));
    p.tau_n = 2.0 * std::sqrt(a.m * b.m / kk);
    return p;
}

std::vector<double> optimal_phases(double phi_v, const std::vector<double>& phi_g,
                                   const std::vector<double>& phi_h)
{
    if (phi_g.size() != phi_h.size()) throw DomainError("optimal_phases: length mismatch");
    std::vector<double> theta(phi_g.size());
    for (std::size_t n = 0; n < theta.size(); ++n) {
        double t = std::remainder(phi_v - phi_h[n] - phi_g[n], 2.0 * std::numbers::pi);
        if (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
        theta[n] = t;
    }
    return theta;
}

double optimal_snr(double v_amp, const std::vector<double>& g_amp, const std::vector<double>& h_amp,
                   const std::vector<double>& eta, double gamma_bar)
{
    if (g_amp.size() != h_amp.size() || g_amp.size() != eta.size()) {
        throw DomainError("optimal_snr: length mismatch");
    }
    double r = v_amp;
    for (std::size_t n = 0; n < g_amp.size(); ++n) r += eta[n] * g_amp[n] * h_amp[n];
    return gamma_bar * r * r;
}

double snr_with_phases(double v_amp, double phi_v, const std::vector<double>& g_amp,
                       const std::vector<double>& phi_g, const std::vector<double>& h_amp,
                       const std::vector<double>& phi_h, const std::vector<double>& eta,
                       const std::vector<double>& theta, double gamma_bar)
{
    const std::size_t n_el = g_amp.size();
    if (phi_g.size() != n_el || h_amp.size() != n_el || phi_h.size() != n_el || eta.size() != n_el ||
        theta.size() != n_el) {
        throw DomainError("snr_with_phases: length mismatch");
    }
    std::complex<double> r = std::polar(v_amp, phi_v);
    for (std::size_t n = 0; n < n_el; ++n) {
        r += std::polar(eta[n] * g_amp[n] * h_amp[n], theta[n] + phi_g[n] + phi_h[n]);
    }
    return gamma_bar * std::norm(r);
}

double envelope_pdf_quadrature(double r, const SnrCdfParams& p)
{
    if (r < 0.0) return 0.0;
    const double mu = p.tn.mu_bar;
    const double s = p.tn.sigma_bar();
    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double u = (r - x - mu) / s;
        return std::exp(log_direct_pdf(x, p) - 0.5 * u * u) / (s * std::sqrt(2.0 * std::numbers::pi));
    };
    const double L = std::sqrt(p.kappa_v / p.m_v);
    const double split = r - mu;
    double total = 0.0;
    if (split > 0.0) {
        total = specfun::integrate(f, 0.0, split) + specfun::integrate_to_infinity(f, split, std::min(L, s));
    } else {
        total = specfun::integrate_to_infinity(f, 0.0, L);
    }
    return p.tn.xi * total;
}

double envelope_pdf(double r, const SnrCdfParams& p)
{
    if (r < 0.0) return 0.0;
    const int mt = p.m_tilde_v;
    const double bt = (r - p.tn.mu_bar) / (2.0 * p.tn.sigma2_bar * std::sqrt(p.a));
    double sum = 0.0;
    double abs_sum = 0.0;
    for (int k = 0; k <= mt; ++k) {
        const double term = binomial(mt, k) * std::pow(bt, mt - k) * cal_i(k, -bt);
        sum += term;
        abs_sum += std::abs(term);
    }
    if (abs_sum > 0.0 && std::abs(sum) < kCancellation * abs_sum) return envelope_pdf_quadrature(r, p);
    return std::max(0.0, 2.0 * p.lambda * std::exp(-p.delta * bt * bt) * sum);
}

double envelope_cdf_quadrature(double r, const SnrCdfParams& p)
{
    if (r <= 0.0) return 0.0;
    const double mu = p.tn.mu_bar;
    const double s = p.tn.sigma_bar();
    // P(A < Z <= B) for a standard normal, without cancellation in either tail.
    auto band = [](double a, double b) {
        const double h = 0.5 * (b - a);
        const double m = 0.5 * (a + b);
        if (h * std::max(1.0, std::abs(m)) < 1e-3) {
            // phi(m) * int_{-h}^{h} e^{-m u - u^2/2} du, Taylor in h.
            return 2.0 * h * specfun::normal_pdf(m) * (1.0 + (m * m - 1.0) * h * h / 6.0);
        }
        if (b <= 0.0) {
            const double lb = specfun::log_gaussian_q(-b);
            return std::exp(lb) * -std::expm1(specfun::log_gaussian_q(-a) - lb);
        }
        if (a >= 0.0) {
            const double la = specfun::log_gaussian_q(a);
            return std::exp(la) * -std::expm1(specfun::log_gaussian_q(b) - la);
        }
        return 1.0 - specfun::gaussian_q(b) - specfun::gaussian_q(-a);
    };
    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double d = band((-x - mu) / s, (r - x - mu) / s);
        if (d <= 0.0) return 0.0;
        return std::exp(log_direct_pdf(x, p) + std::log(d));
    };
    const double L = std::sqrt(p.kappa_v / p.m_v);
    return p.tn.xi * (specfun::integrate(f, 0.0, r) + specfun::integrate_to_infinity(f, r, L));
}

double envelope_cdf(double r, const SnrCdfParams& p)
{
    if (r <= 0.0) return 0.0;
    const int mt = p.m_tilde_v;
    const double mu = p.tn.mu_bar;
    const double sc = 2.0 * p.tn.sigma2_bar * std::sqrt(p.a);
    const double c = p.lambda * sc;
    const auto jp = specfun::JParams::from_scale(mt, 1.0 + p.delta);

    if (r <= mu) {
        const double t0 = mu / sc;
        const double tr = (mu - r) / sc;
        double sum = 0.0;
        double abs_sum = 0.0;
        for (int k = 0; k <= mt; ++k) {
            const double jr = cal_j(k, tr, jp);
            const double j0 = cal_j(k, t0, jp);
            const double b = binomial(mt, k) * sign_pow(mt - k);
            sum += b * (jr - j0);
            abs_sum += std::abs(b) * (std::abs(jr) + std::abs(j0));
        }
        if (abs_sum > 0.0 && std::abs(sum) < kCancellation * abs_sum) return envelope_cdf_quadrature(r, p);
        return c * sum;
    }

    const double tr = (r - mu) / sc;
    double tail = 0.0;
    for (int k = 0; k <= mt; ++k) {
        double term = -sign_pow(k) * cal_j(k, tr, jp);
        if (k % 2 == 0) {
            term += 2.0 * std::tgamma(0.5 * (k + 1)) * specfun::gaussian_power_tail(mt - k, tr, p.delta);
        }
        tail += binomial(mt, k) * term;
    }
    return 1.0 - c * tail;
}

double snr_cdf(double y, const SnrCdfParams& p)
{
    if (y <= 0.0) return 0.0;
    const double raw = envelope_cdf(std::sqrt(y / p.gamma_bar), p);
    if (!std::isfinite(raw) || raw < -1e-6 || raw > 1.0 + 1e-6) {
        throw NumericalConsistencyError("snr_cdf: closed form returned " + std::to_string(raw));
    }
    return std::clamp(raw, 0.0, 1.0);
}

double snr_pdf(double y, const SnrCdfParams& p)
{
    if (y <= 0.0) return 0.0;
    return envelope_pdf(std::sqrt(y / p.gamma_bar), p) / (2.0 * std::sqrt(y * p.gamma_bar));
}

double product_pdf(double w, const ProductPdfParams& p)
{
    if (!(w > 0.0)) return 0.0;
    const double x = w * p.tau_n;
    const double k = specfun::bessel_k(p.m_a - p.m_b, x);
    if (k == 0.0) return 0.0;
    return std::exp(std::log(p.psi) + (p.m_a + p.m_b - 1.0) * std::log(w) + std::log(k));
}

}  // namespace irsperf
