// SPDX-License-Identifier: Apache-2.0

#include "irsperf/metrics.hpp"
#include "irsperf/montecarlo.hpp"
#include "irsperf/snrdist.hpp"
#include "irsperf/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

using namespace irsperf;
using doctest::Approx;

namespace {

SystemConfig fig5(int n)
{
    auto cfg = make_geometry_config(n, 2.0, 3.0, 4.0);
    cfg.gamma_bar_db = 20.0;
    return cfg;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

}  // namespace

TEST_CASE("CDF and PDF reference values")
{
    // Convolution integrals evaluated at 30 digits.
    const auto p = SnrCdfParams::make(fig5(32));
    CHECK(p.m_tilde_v == 3);
    CHECK(p.tn.mu_bar == Approx(0.878824845620247655).epsilon(1e-13));
    CHECK(p.tn.sigma2_bar == Approx(0.00377443957401245568).epsilon(1e-13));
    CHECK(p.delta == Approx(2.0 * p.tn.sigma2_bar * p.a - 1.0).epsilon(1e-12));
    CHECK(snr_cdf(db(17.0), p) == Approx(0.000235856552019503242).epsilon(1e-8));
    CHECK(snr_cdf(db(18.0), p) == Approx(0.0161273806334893472).epsilon(1e-9));
    CHECK(snr_cdf(db(19.0), p) == Approx(0.264987009488554010).epsilon(1e-9));
    CHECK(snr_cdf(db(20.5), p) == Approx(0.975899579827662186).epsilon(1e-9));
    CHECK(snr_pdf(db(17.0), p) == Approx(0.0000981455323660141155).epsilon(1e-8));
    CHECK(snr_pdf(db(18.0), p) == Approx(0.00397075222614068413).epsilon(1e-9));
    CHECK(snr_pdf(db(19.0), p) == Approx(0.0286119585615771219).epsilon(1e-9));
    CHECK(snr_pdf(db(20.5), p) == Approx(0.00412634543322253935).epsilon(1e-9));
}

TEST_CASE("envelope PDF normalization, sign and continuity")
{
    const auto p = SnrCdfParams::make(fig5(32));
    const double mu = p.tn.mu_bar;
    const double s = p.tn.sigma_bar();
    auto f = [&](double r) { return envelope_pdf(r, p); };
    const double mass = specfun::integrate(f, 0.0, mu) + specfun::integrate_to_infinity(f, mu, s);
    CHECK(mass == Approx(1.0).epsilon(1e-6));
    const double hi = mu + 12.0 * s + 6.0 * std::sqrt(p.kappa_v);
    for (int i = 0; i <= 10000; ++i) CHECK(envelope_pdf(hi * i / 10000.0, p) >= 0.0);
    CHECK(envelope_pdf(mu * (1.0 - 1e-14), p) == Approx(envelope_pdf(mu * (1.0 + 1e-14), p)).epsilon(1e-9));
    CHECK(envelope_cdf(mu * (1.0 - 1e-14), p) == Approx(envelope_cdf(mu * (1.0 + 1e-14), p)).epsilon(1e-9));
}

TEST_CASE("closed-form CDF equals the integrated PDF")
{
    for (int n : {8, 32, 256}) {
        auto cfg = fig5(n);
        cfg.v.m = 2.0;
        const auto p = SnrCdfParams::make(cfg);
        const double mu = p.tn.mu_bar;
        const double s = p.tn.sigma_bar();
        for (double r = std::max(mu - 6.0 * s, 0.05 * mu); r < mu + 6.0 * s; r += 0.5 * s) {
            const double ref = envelope_cdf_quadrature(r, p);
            INFO("N=" << n << " r=" << r);
            CHECK(std::abs(envelope_cdf(r, p) - ref) < 1e-6 * std::max(ref, 1e-3));
        }
    }
}

TEST_CASE("deep lower tail stays accurate")
{
    auto cfg = make_geometry_config(16, 2.0, 2.0, 3.0);
    const auto tn = w_stats(cfg);
    for (double gdb = 0.0; gdb <= 45.0; gdb += 5.0) {
        const auto p = SnrCdfParams::make(cfg.v, tn, db(gdb));
        const double r = std::sqrt(cfg.gamma_th() / p.gamma_bar);
        const double ref = envelope_cdf_quadrature(r, p);
        INFO("gamma_bar=" << gdb << " dB");
        CHECK(snr_cdf(cfg.gamma_th(), p) == Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("CDF limits, monotonicity and PDF consistency")
{
    for (auto [mv, mg, mh, n] : {std::tuple{2.0, 3.0, 4.0, 32}, std::tuple{1.0, 1.0, 2.0, 16},
                                 std::tuple{0.5, 2.0, 2.0, 8}, std::tuple{3.5, 1.0, 1.0, 64}}) {
        auto cfg = fig5(n);
        cfg.v.m = mv;
        cfg.g.m = mg;
        cfg.h.m = mh;
        apply_geometry(cfg);
        const auto p = SnrCdfParams::make(cfg);
        const double gb = p.gamma_bar;
        const double ymax = gb * std::pow(p.tn.mu_bar + 8.0 * p.tn.sigma_bar() + 6.0 * std::sqrt(p.kappa_v), 2);
        CHECK(snr_cdf(1e-30, p) < 1e-12);
        CHECK(snr_cdf(ymax, p) == Approx(1.0).epsilon(1e-9));
        double prev = 0.0;
        for (int i = 1; i <= 2000; ++i) {
            const double y = ymax * i / 2000.0;
            const double c = snr_cdf(y, p);
            CHECK(c >= prev - 1e-12);
            prev = c;
        }
        // Finite differences on interior points where the density is not tiny.
        for (int i = 1; i < 200; ++i) {
            const double y = ymax * i / 200.0;
            const double pdf = snr_pdf(y, p);
            if (pdf * y < 1e-4) continue;
            const double h = 1e-5 * y;
            const double fd = (snr_cdf(y + h, p) - snr_cdf(y - h, p)) / (2.0 * h);
            INFO("m=(" << mv << "," << mg << "," << mh << ") y=" << y);
            CHECK(fd == Approx(pdf).epsilon(1e-4));
        }
        // y = u^2 removes the 1/sqrt(y) behaviour at the origin
        auto f = [&](double u) { return 2.0 * u * snr_pdf(u * u, p); };
        const double umu = std::sqrt(gb) * p.tn.mu_bar;
        const double umax = std::sqrt(ymax);
        const double mass = specfun::integrate(f, 0.0, umu) + specfun::integrate(f, umu, umax) +
                            specfun::integrate_to_infinity(f, umax, umax);
        CHECK(mass == Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("vanishing reflected link recovers the direct Gamma CDF")
{
    auto cfg = make_unit_config(8, 2.0, 3.0, 4.0, 1.0, 1e-12, 1.0, 0.9);
    const auto p = SnrCdfParams::make(cfg.v, w_stats(cfg), 1.0);
    for (double y : {0.05, 0.3, 1.0, 2.0, 5.0}) {
        const double direct = boost::math::gamma_p(cfg.v.m, cfg.v.m * y / cfg.v.kappa());
        CHECK(std::abs(snr_cdf(y, p) - direct) < 1e-3);
    }
}

TEST_CASE("half-normal direct link matches the Owen's T form")
{
    for (int n : {4, 16, 64}) {
        auto cfg = make_geometry_config(n, 0.5, 2.0, 3.0);
        const auto tn = w_stats(cfg);
        for (double gdb : {0.0, 10.0, 20.0, 30.0}) {
            const auto p = SnrCdfParams::make(cfg.v, tn, db(gdb));
            for (double th_db : {-5.0, 5.0, 10.0, 15.0, 25.0}) {
                const double th = db(th_db);
                const double a = snr_cdf(th, p);
                const double b = one_sided_gaussian_outage(th, p);
                INFO("N=" << n << " gamma_bar=" << gdb << " th=" << th_db);
                CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, a) + 1e-8 * a);
            }
        }
    }
}

TEST_CASE("unsupported direct-link shape")
{
    auto cfg = fig5(16);
    cfg.v.m = 0.75;
    CHECK_THROWS_AS(SnrCdfParams::make(cfg), UnsupportedShapeError);
}

TEST_CASE("co-phasing")
{
    const auto th = optimal_phases(0.0, {std::numbers::pi / 3.0}, {std::numbers::pi / 6.0});
    CHECK(th[0] == Approx(-std::numbers::pi / 2.0).epsilon(1e-15));
    for (double t : optimal_phases(0.0, {0.0, 0.0}, {0.0, 0.0})) CHECK(t == 0.0);
    CHECK(optimal_phases(std::numbers::pi, {0.0}, {0.0})[0] == Approx(std::numbers::pi));
    CHECK_THROWS_AS(optimal_phases(0.0, {0.0}, {}), DomainError);
    CHECK(optimal_snr(1.0, {1.0}, {1.0}, {0.9}, 1.0) == Approx(3.61));
    CHECK(optimal_snr(1.5, {}, {}, {}, 2.0) == Approx(4.5));

    RandomStream rs(5, 0, 0);
    auto u = [&] { return std::numbers::pi * (2.0 * rs.uniform() - 1.0); };
    const int n = 8;
    std::vector<double> g(n), h(n), pg(n), ph(n), eta(n, 0.9);
    for (int i = 0; i < n; ++i) {
        g[i] = nakagami_sample(2.0, 1.0, rs);
        h[i] = nakagami_sample(3.0, 1.0, rs);
        pg[i] = u();
        ph[i] = u();
    }
    const double v = 0.4, pv = u();
    const auto opt = optimal_phases(pv, pg, ph);
    const double best = optimal_snr(v, g, h, eta, 2.0);
    CHECK(snr_with_phases(v, pv, g, pg, h, ph, eta, opt, 2.0) == Approx(best).epsilon(1e-12));
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> th_r(n);
        for (auto& t : th_r) t = u();
        CHECK(snr_with_phases(v, pv, g, pg, h, ph, eta, th_r, 2.0) <= best * (1.0 + 1e-12));
    }
}

TEST_CASE("single product density")
{
    const auto p = ProductPdfParams::make({1.0, 1.0}, {1.0, 1.0}, 1.0);
    CHECK(product_pdf(0.7, p) == Approx(4.0 * 0.7 * specfun::bessel_k(0.0, 1.4)).epsilon(1e-13));
    auto f = [&](double w) { return product_pdf(w, p); };
    auto wf = [&](double w) { return w * product_pdf(w, p); };
    CHECK(specfun::integrate_to_infinity(f, 0.0) == Approx(1.0).epsilon(1e-9));
    CHECK(specfun::integrate_to_infinity(wf, 0.0) == Approx(std::numbers::pi / 4.0).epsilon(1e-9));

    const LinkParams a{2.0, 0.7}, b{3.0, 1.3};
    const double eta = 0.8;
    const auto q = ProductPdfParams::make(a, b, eta);
    auto cfg = make_unit_config(1, 1.0, 2.0, 3.0, 1.0, 0.7, 1.3, eta);
    const auto tn = w_stats(cfg);
    auto f1 = [&](double w) { return w * product_pdf(w, q); };
    auto f2 = [&](double w) { return w * w * product_pdf(w, q); };
    const double m1 = specfun::integrate_to_infinity(f1, 0.0);
    const double m2 = specfun::integrate_to_infinity(f2, 0.0);
    CHECK(specfun::integrate_to_infinity([&](double w) { return product_pdf(w, q); }, 0.0) == Approx(1.0).epsilon(1e-9));
    CHECK(m1 == Approx(tn.mu_bar).epsilon(1e-9));
    CHECK(m2 - m1 * m1 == Approx(tn.sigma2_bar).epsilon(1e-8));
}
