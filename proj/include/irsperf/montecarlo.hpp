// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include "irsperf/channel.hpp"
#include "irsperf/correlation.hpp"
#include "irsperf/random.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace irsperf {

/// Monte-Carlo plan. Results depend on (seed, trials) only: trial i always
/// draws from RandomStream(seed, i, substream), whatever the worker count.
///
/// Substreams: 0 amplitudes (v, then g_n, h_n in element order),
/// 1 quantization errors, 2 carrier phases of the correlated model.
struct SimPlan {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int workers = 0;  // 0: hardware concurrency
    std::optional<int> quantization_bits;
    std::optional<CorrelationConfig> correlation;
    int scheme = 2;
};

struct CurveResult {
    std::string x_unit;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> ci_low;
    std::vector<double> ci_high;
    std::string meta;
};

struct Estimate {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Runs fn(begin, end) over fixed-size trial blocks on `workers` threads.
void parallel_blocks(std::uint64_t trials, int workers,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn);

/// Normalized received power |v + sum ...|^2 of one trial (gamma_bar = 1).
double simulate_gain(const SystemConfig& cfg, const SimPlan& plan, std::uint64_t trial,
                     const CorrelationMatrices* corr = nullptr);

/// gamma_bar-free samples; multiply by gamma_bar for SNR samples.
std::vector<double> simulate_gain_samples(const SystemConfig& cfg, const SimPlan& plan);

/// Samples of the optimal SNR at cfg.gamma_bar().
std::vector<double> simulate_snr_samples(const SystemConfig& cfg, const SimPlan& plan);

/// Normalized gains for several surface sizes from the same draws:
/// out[j][i] is trial i truncated to the first n_list[j] elements.
/// Unquantized, uncorrelated model only.
std::vector<std::vector<double>> simulate_gain_prefix(const SystemConfig& cfg, const SimPlan& plan,
                                                      const std::vector<int>& n_list);

/// Samples of the reflected sum W = sum eta_n g_n h_n.
std::vector<double> simulate_w_samples(const SystemConfig& cfg, const SimPlan& plan);

class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);
    double operator()(double x) const;
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

/// Wilson 95% interval for k successes out of n.
Estimate wilson_interval(std::uint64_t k, std::uint64_t n);

/// Proportion of samples <= gamma_th, Wilson 95% interval.
Estimate empirical_outage(const std::vector<double>& samples, double gamma_th);

/// Mean of log2(1 + gamma); normal 95% interval.
Estimate empirical_rate(const std::vector<double>& samples);

/// Mean of alpha Q(sqrt(beta gamma)); normal 95% interval.
Estimate empirical_ber(const std::vector<double>& samples, double alpha, double beta);

/// sup |F_emp - F| over sorted samples. With more than max_evals samples
/// F is evaluated on evenly spaced order statistics only, which changes
/// the result by at most 1/max_evals.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf,
                   std::size_t max_evals = 20000);

/// Least-squares slope of log10(y) against x/10 over x in [x_lo, x_hi].
double fit_loglog_slope(const CurveResult& curve, double x_lo, double x_hi);

}  // namespace irsperf
