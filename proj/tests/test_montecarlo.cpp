// SPDX-License-Identifier: Apache-2.0

#include "irsperf/montecarlo.hpp"
#include "irsperf/cltapprox.hpp"
#include "irsperf/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace irsperf;
using doctest::Approx;

TEST_CASE("random streams are keyed by seed, trial and substream")
{
    RandomStream a(5, 17, 0), b(5, 17, 0), c(5, 18, 0), d(5, 17, 1), e(6, 17, 0);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
    CHECK(x != e());
    RandomStream u(1, 2, 3);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        sum += v;
    }
    CHECK(sum / 100000.0 == Approx(0.5).epsilon(0.01));
}

TEST_CASE("results do not depend on the worker count")
{
    auto cfg = make_geometry_config(24, 1.5, 2.0, 3.0);
    SimPlan plan;
    plan.trials = 20011;
    plan.seed = 42;
    plan.workers = 1;
    const auto ref = simulate_snr_samples(cfg, plan);
    for (int w : {2, 3, 8}) {
        plan.workers = w;
        CHECK(simulate_snr_samples(cfg, plan) == ref);
    }
    plan.quantization_bits = 2;
    plan.workers = 1;
    const auto q1 = simulate_snr_samples(cfg, plan);
    plan.workers = 5;
    CHECK(simulate_snr_samples(cfg, plan) == q1);
}

TEST_CASE("surface prefixes reproduce full simulations")
{
    auto cfg = make_geometry_config(40, 2.0, 3.0, 4.0);
    SimPlan plan;
    plan.trials = 5000;
    plan.seed = 9;
    const std::vector<int> ns{0, 1, 8, 40};
    const auto pre = simulate_gain_prefix(cfg, plan, ns);
    for (std::size_t j = 0; j < ns.size(); ++j) {
        if (ns[j] == 0) continue;
        CHECK(simulate_gain_samples(with_elements(cfg, ns[j]), plan) == pre[j]);
    }
    CHECK_THROWS_AS(simulate_gain_prefix(cfg, plan, {8, 4}), DomainError);
}

TEST_CASE("direct link only")
{
    auto cfg = make_geometry_config(8, 2.0, 1.0, 1.0);
    SimPlan plan;
    plan.trials = 200000;
    plan.seed = 4;
    const auto pre = simulate_gain_prefix(cfg, plan, {0});
    auto s = pre[0];
    for (auto& x : s) x *= cfg.gamma_bar();
    // gamma_bar v^2 ~ Gamma(m_v, gamma_bar zeta_v).
    const double scale = cfg.gamma_bar() * cfg.v.zeta;
    std::sort(s.begin(), s.end());
    const double ks = ks_distance(s, [&](double y) { return boost::math::gamma_p(cfg.v.m, y / scale); });
    CHECK(ks < 4e-3);
    const auto rate = empirical_rate(s);
    CHECK(rate.ci_low < rate.value);
    CHECK(rate.value < rate.ci_high);
}

TEST_CASE("quantization absent versus fine quantization")
{
    auto cfg = make_geometry_config(16, 1.0, 2.0, 2.0);
    SimPlan plan;
    plan.trials = 3000;
    plan.seed = 8;
    const auto plain = simulate_gain_samples(cfg, plan);
    CHECK(simulate_gain_prefix(cfg, plan, {16})[0] == plain);
    plan.quantization_bits = 40;
    const auto fine = simulate_gain_samples(cfg, plan);
    for (std::size_t i = 0; i < plain.size(); ++i) CHECK(fine[i] == Approx(plain[i]).epsilon(1e-20 + 1e-12));
    plan.quantization_bits = 1;
    const auto coarse = simulate_gain_samples(cfg, plan);
    for (std::size_t i = 0; i < plain.size(); ++i) CHECK(coarse[i] <= plain[i] * (1.0 + 1e-12));
}

TEST_CASE("reflected sum matches the truncated-normal mean")
{
    auto cfg = make_geometry_config(64, 1.0, 3.0, 4.0);
    SimPlan plan;
    plan.trials = 200000;
    plan.seed = 13;
    const auto w = simulate_w_samples(cfg, plan);
    double mean = 0.0;
    for (double x : w) mean += x;
    mean /= static_cast<double>(w.size());
    double ss = 0.0;
    for (double x : w) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (w.size() - 1.0) / w.size());
    const auto mv = w_mean_var(w_stats(cfg));
    CHECK(std::abs(mean - mv.mu_w) < 4.0 * se);

    // Same draws, seen through the envelope: sqrt(gain) - v.
    const auto g = simulate_gain_samples(cfg, plan);
    double env = 0.0;
    for (double x : g) env += std::sqrt(x);
    env /= static_cast<double>(g.size());
    CHECK(std::abs(env - nakagami_moment(cfg.v, 1.0) - mv.mu_w) < 6.0 * se + 1e-3 * mv.mu_w);
}

TEST_CASE("interval width shrinks with the trial count")
{
    auto cfg = make_geometry_config(16, 2.0, 3.0, 4.0);
    cfg.gamma_bar_db = 10.0;
    SimPlan plan;
    plan.seed = 2;
    plan.trials = 50000;
    const auto a = empirical_rate(simulate_snr_samples(cfg, plan));
    plan.trials = 100000;
    const auto b = empirical_rate(simulate_snr_samples(cfg, plan));
    const double ratio = (a.ci_high - a.ci_low) / (b.ci_high - b.ci_low);
    CHECK(ratio == Approx(std::sqrt(2.0)).epsilon(0.1));

    plan.trials = 50000;
    const auto s1 = simulate_snr_samples(cfg, plan);
    plan.trials = 100000;
    const auto s2 = simulate_snr_samples(cfg, plan);
    auto sorted = s1;
    std::sort(sorted.begin(), sorted.end());
    const double th = sorted[sorted.size() / 5];
    const auto o1 = empirical_outage(s1, th);
    const auto o2 = empirical_outage(s2, th);
    CHECK((o1.ci_high - o1.ci_low) / (o2.ci_high - o2.ci_low) == Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("estimators on degenerate samples")
{
    const std::vector<double> s(1000, 7.0);
    const auto r = empirical_rate(s);
    CHECK(r.value == Approx(3.0).epsilon(1e-15));
    CHECK(r.ci_low == Approx(3.0).epsilon(1e-15));
    CHECK(r.ci_high == Approx(3.0).epsilon(1e-15));
    const auto b = empirical_ber(s, 1.0, 2.0);
    CHECK(b.value == Approx(specfun::gaussian_q(std::sqrt(14.0))).epsilon(1e-14));
    CHECK(empirical_outage(s, 7.0).value == 1.0);
    CHECK(empirical_outage(s, 6.9).value == 0.0);
    CHECK(empirical_outage(s, 6.9).ci_low == 0.0);
    CHECK(empirical_outage(s, 6.9).ci_high > 0.0);
    const auto c = empirical_cdf({3.0, 1.0, 2.0});
    CHECK(c(0.5) == 0.0);
    CHECK(c(1.0) == Approx(1.0 / 3.0));
    CHECK(c(2.5) == Approx(2.0 / 3.0));
    CHECK(c(9.0) == 1.0);
    CHECK_THROWS_AS(empirical_rate({}), DomainError);
    CHECK_THROWS_AS(empirical_ber({}, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(empirical_outage({}, 1.0), DomainError);
    CHECK_THROWS_AS(empirical_cdf({}), DomainError);
}

TEST_CASE("outage interval contains the estimate")
{
    std::vector<double> s(997);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>(i);
    for (double th : {-1.0, 0.0, 10.0, 500.0, 996.0}) {
        const auto e = empirical_outage(s, th);
        CHECK(e.ci_low <= e.value);
        CHECK(e.value <= e.ci_high);
        CHECK(e.ci_low >= 0.0);
        CHECK(e.ci_high <= 1.0);
    }
}

TEST_CASE("log-log slope")
{
    CurveResult c;
    for (double x = 0.0; x <= 40.0; x += 2.5) {
        c.x.push_back(x);
        c.y.push_back(3.7 * std::pow(std::pow(10.0, x / 10.0), -5.0));
    }
    CHECK(fit_loglog_slope(c, 0.0, 40.0) == Approx(-5.0).epsilon(1e-9));
    CHECK(fit_loglog_slope(c, 20.0, 30.0) == Approx(-5.0).epsilon(1e-9));
    CHECK_THROWS_AS(fit_loglog_slope(c, 20.0, 22.0), DomainError);
    c.y[3] = 0.0;
    CHECK_THROWS_AS(fit_loglog_slope(c, 0.0, 40.0), DomainError);
}

TEST_CASE("KS distance with thinned evaluation")
{
    std::vector<double> s(100000);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = (i + 0.5) / s.size();
    auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_distance(s, uniform) <= 0.5 / s.size() + 1e-12);
    CHECK(ks_distance(s, [](double x) { return x * x; }) == Approx(0.25).epsilon(1e-3));
}
