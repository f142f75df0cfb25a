// SPDX-License-Identifier: Apache-2.0

#include "irsperf/montecarlo.hpp"

#include "irsperf/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

namespace irsperf {

namespace {

constexpr std::uint64_t kBlock = 4096;
constexpr double kZ95 = 1.959963984540054;

Estimate mean_estimate(const std::vector<double>& xs)
{
    if (xs.empty()) throw DomainError("estimator: empty sample");
    // Pairwise-free two-pass mean/variance; order is fixed so results are
    // reproducible.
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double se = xs.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return {mean, mean - kZ95 * se, mean + kZ95 * se};
}

}  // namespace

void parallel_blocks(std::uint64_t trials, int workers, const std::function<void(std::uint64_t, std::uint64_t)>& fn)
{
    const std::uint64_t n_blocks = (trials + kBlock - 1) / kBlock;
    int w = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    w = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(w), std::max<std::uint64_t>(n_blocks, 1)));
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next++; b < n_blocks; b = next++) {
            fn(b * kBlock, std::min(trials, (b + 1) * kBlock));
        }
    };
    if (w <= 1) {
        work();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

double simulate_gain(const SystemConfig& cfg, const SimPlan& plan, std::uint64_t trial,
                     const CorrelationMatrices* corr)
{
    RandomStream amp(plan.seed, trial, 0);
    const double v = nakagami_sample(cfg.v.m, cfg.v.zeta, amp);
    const int n_el = cfg.n_elements;

    if (corr != nullptr) {
        RandomStream ph(plan.seed, trial, 2);
        ChannelDraw d;
        d.v_amp = v;
        d.phi_v = std::numbers::pi * (2.0 * ph.uniform() - 1.0);
        d.g.resize(n_el);
        d.h.resize(n_el);
        for (int n = 0; n < n_el; ++n) {
            const double gn = nakagami_sample(cfg.g.m, cfg.kappa_g(n) / cfg.g.m, amp);
            const double hn = nakagami_sample(cfg.h.m, cfg.kappa_h(n) / cfg.h.m, amp);
            d.g(n) = std::polar(gn, std::numbers::pi * (2.0 * ph.uniform() - 1.0));
            d.h(n) = std::polar(hn, std::numbers::pi * (2.0 * ph.uniform() - 1.0));
        }
        return correlated_snr(d, *corr, plan.scheme, cfg.eta, 1.0);
    }

    if (plan.quantization_bits) {
        const double tau = std::numbers::pi / std::ldexp(1.0, *plan.quantization_bits);
        RandomStream qs(plan.seed, trial, 1);
        double re = v;
        double im = 0.0;
        for (int n = 0; n < n_el; ++n) {
            const double gn = nakagami_sample(cfg.g.m, cfg.kappa_g(n) / cfg.g.m, amp);
            const double hn = nakagami_sample(cfg.h.m, cfg.kappa_h(n) / cfg.h.m, amp);
            const double eps = tau * (2.0 * qs.uniform() - 1.0);
            const double a = cfg.eta_n(n) * gn * hn;
            re += a * std::cos(eps);
            im += a * std::sin(eps);
        }
        return re * re + im * im;
    }

    double r = v;
    for (int n = 0; n < n_el; ++n) {
        const double gn = nakagami_sample(cfg.g.m, cfg.kappa_g(n) / cfg.g.m, amp);
        const double hn = nakagami_sample(cfg.h.m, cfg.kappa_h(n) / cfg.h.m, amp);
        r += cfg.eta_n(n) * gn * hn;
    }
    return r * r;
}

std::vector<double> simulate_gain_samples(const SystemConfig& cfg, const SimPlan& plan)
{
    std::optional<CorrelationMatrices> corr;
    if (plan.correlation) {
        if (plan.correlation->n_elements() != cfg.n_elements) {
            throw DomainError("simulate_gain_samples: correlation grid does not match N");
        }
        corr = build_correlation(*plan.correlation);
    }
    std::vector<double> out(plan.trials);
    const CorrelationMatrices* cp = corr ? &*corr : nullptr;
    parallel_blocks(plan.trials, plan.workers, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) out[i] = simulate_gain(cfg, plan, i, cp);
    });
    return out;
}

std::vector<double> simulate_snr_samples(const SystemConfig& cfg, const SimPlan& plan)
{
    auto s = simulate_gain_samples(cfg, plan);
    const double gb = cfg.gamma_bar();
    for (auto& x : s) x *= gb;
    return s;
}

std::vector<std::vector<double>> simulate_gain_prefix(const SystemConfig& cfg, const SimPlan& plan,
                                                      const std::vector<int>& n_list)
{
    if (n_list.empty()) return {};
    if (!std::is_sorted(n_list.begin(), n_list.end()) || n_list.front() < 0) {
        throw DomainError("simulate_gain_prefix: element counts must be nondecreasing and nonnegative");
    }
    const int n_max = n_list.back();
    const SystemConfig full = with_elements(cfg, std::max(n_max, 1));
    std::vector<std::vector<double>> out(n_list.size(), std::vector<double>(plan.trials));
    parallel_blocks(plan.trials, plan.workers, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
            RandomStream amp(plan.seed, i, 0);
            double r = nakagami_sample(full.v.m, full.v.zeta, amp);
            std::size_t j = 0;
            for (int n = 0; n <= n_max; ++n) {
                while (j < n_list.size() && n_list[j] == n) out[j++][i] = r * r;
                if (n == n_max) break;
                const double gn = nakagami_sample(full.g.m, full.kappa_g(n) / full.g.m, amp);
                const double hn = nakagami_sample(full.h.m, full.kappa_h(n) / full.h.m, amp);
                r += full.eta_n(n) * gn * hn;
            }
        }
    });
    return out;
}

std::vector<double> simulate_w_samples(const SystemConfig& cfg, const SimPlan& plan)
{
    std::vector<double> out(plan.trials);
    parallel_blocks(plan.trials, plan.workers, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
            RandomStream amp(plan.seed, i, 0);
            (void)nakagami_sample(cfg.v.m, cfg.v.zeta, amp);
            double w = 0.0;
            for (int n = 0; n < cfg.n_elements; ++n) {
                const double gn = nakagami_sample(cfg.g.m, cfg.kappa_g(n) / cfg.g.m, amp);
                const double hn = nakagami_sample(cfg.h.m, cfg.kappa_h(n) / cfg.h.m, amp);
                w += cfg.eta_n(n) * gn * hn;
            }
            out[i] = w;
        }
    });
    return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    if (sorted_.empty()) throw DomainError("empirical_cdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const
{
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples)
{
    return EmpiricalCdf(std::move(samples));
}

Estimate wilson_interval(std::uint64_t k, std::uint64_t n)
{
    if (n == 0) throw DomainError("wilson_interval: empty sample");
    const double nd = static_cast<double>(n);
    const double p = static_cast<double>(k) / nd;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / nd;
    const double centre = (p + z2 / (2.0 * nd)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {p, std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

Estimate empirical_outage(const std::vector<double>& samples, double gamma_th)
{
    if (samples.empty()) throw DomainError("empirical_outage: empty sample");
    const auto k = std::count_if(samples.begin(), samples.end(), [&](double g) { return g <= gamma_th; });
    return wilson_interval(static_cast<std::uint64_t>(k), samples.size());
}

Estimate empirical_rate(const std::vector<double>& samples)
{
    std::vector<double> r(samples.size());
    std::transform(samples.begin(), samples.end(), r.begin(), [](double g) { return std::log2(1.0 + g); });
    return mean_estimate(r);
}

Estimate empirical_ber(const std::vector<double>& samples, double alpha, double beta)
{
    std::vector<double> r(samples.size());
    std::transform(samples.begin(), samples.end(), r.begin(),
                   [&](double g) { return alpha * specfun::gaussian_q(std::sqrt(beta * g)); });
    return mean_estimate(r);
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf,
                   std::size_t max_evals)
{
    if (sorted.empty()) throw DomainError("ks_distance: empty sample");
    const std::size_t n = sorted.size();
    const std::size_t evals = std::min(n, std::max<std::size_t>(max_evals, 2));
    const double nd = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t j = 0; j < evals; ++j) {
        const std::size_t i = evals == n ? j : static_cast<std::size_t>(std::llround(j * (nd - 1.0) / (evals - 1)));
        const double f = cdf(sorted[i]);
        d = std::max({d, std::abs((i + 1) / nd - f), std::abs(i / nd - f)});
    }
    return d;
}

double fit_loglog_slope(const CurveResult& curve, double x_lo, double x_hi)
{
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    int k = 0;
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        const double x = curve.x[i];
        if (x < x_lo || x > x_hi) continue;
        if (!(curve.y[i] > 0.0)) throw DomainError("fit_loglog_slope: values must be positive");
        const double xs = x / 10.0;
        const double ys = std::log10(curve.y[i]);
        sx += xs;
        sy += ys;
        sxx += xs * xs;
        sxy += xs * ys;
        ++k;
    }
    if (k < 3) throw DomainError("fit_loglog_slope: need at least 3 points in the window");
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace irsperf
