// SPDX-License-Identifier: Apache-2.0

#include "irsperf/error.hpp"
#include "irsperf/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace irsperf;
using namespace irsperf::specfun;
using doctest::Approx;

TEST_CASE("incomplete gamma reference values")
{
    CHECK(gamma_upper(1.0, 1.0) == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(gamma_upper(0.5, 0.0) == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    // quadrature of int_{1.3}^inf t^1.5 e^-t dt
    CHECK(gamma_upper(2.5, 1.3) == Approx(1.01211360070320341).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_upper(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(gamma_lower(-1.0, 1.0), DomainError);
}

TEST_CASE("upper plus lower incomplete gamma is the complete gamma")
{
    for (double q = 0.25; q <= 50.0; q *= 1.37) {
        for (double z : {0.0, 1e-6, 0.1, 1.0, 3.0, 10.0, 40.0, 100.0, 200.0}) {
            const double full = std::tgamma(q);
            const double sum = gamma_upper(q, z) + gamma_lower(q, z);
            CHECK(std::abs(sum - full) <= 1e-12 * full);
        }
    }
}

TEST_CASE("log incomplete gamma survives underflow")
{
    CHECK(log_gamma_upper(3.0, 2.0) == Approx(std::log(gamma_upper(3.0, 2.0))).epsilon(1e-13));
    // Gamma(1, z) = e^-z exactly
    CHECK(log_gamma_upper(1.0, 900.0) == Approx(-900.0).epsilon(1e-13));
    const double lg = log_gamma_upper(2.5, 1000.0);
    CHECK(std::isfinite(lg));
    CHECK(lg == Approx(-1000.0 + 1.5 * std::log(1000.0) + std::log1p(1.5 / 1000.0 + 0.75 / 1e6)).epsilon(1e-9));
}

TEST_CASE("gaussian tail")
{
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(gaussian_q(-30.0) == Approx(1.0).epsilon(1e-16));
    CHECK(gaussian_q(1.6449) == Approx(0.0499952174683463).epsilon(1e-12));
    double prev = 1.0;
    for (double x = -7.0; x <= 8.0; x += 0.01) {
        const double q = gaussian_q(x);
        CHECK(q < prev);
        CHECK(q + gaussian_q(-x) == Approx(1.0).epsilon(1e-14));
        prev = q;
    }
    // log Q(x) at 30 digits
    CHECK(log_gaussian_q(40.0) == Approx(-804.608442013753788).epsilon(1e-14));
    CHECK(log_gaussian_q(31.0) == Approx(-484.853963627179289).epsilon(1e-14));
    CHECK(log_gaussian_q(29.0) == Approx(std::log(gaussian_q(29.0))).epsilon(1e-14));
}

TEST_CASE("modified Bessel K")
{
    CHECK(bessel_k(0.5, 2.0) == Approx(std::sqrt(std::numbers::pi / 4.0) * std::exp(-2.0)).epsilon(1e-13));
    CHECK(bessel_k(0.0, 1.0) == Approx(0.421024438240708333).epsilon(1e-13));
    for (double x : {0.1, 0.7, 2.0, 9.0}) CHECK(bessel_k(-1.5, x) == bessel_k(1.5, x));
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
    for (double nu : {0.0, 0.5, 2.0, 3.7}) {
        double prev_log = std::log(bessel_k(nu, 0.05));
        double prev_slope = -1e300;
        for (double x = 0.1; x < 20.0; x += 0.05) {
            const double lk = std::log(bessel_k(nu, x));
            CHECK(lk < prev_log);
            const double slope = (lk - prev_log) / 0.05;
            CHECK(slope >= prev_slope - 1e-9);
            prev_slope = slope;
            prev_log = lk;
        }
    }
}

TEST_CASE("cal_i branches")
{
    CHECK(cal_i(0, 0.0) == Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-14));
    CHECK(cal_i(1, 0.0) == Approx(0.5).epsilon(1e-14));
    CHECK(cal_i(2, -1.1) == Approx(0.669135675328225673).epsilon(1e-13));
    CHECK(cal_i(0, -12.0) == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    for (int k = 0; k <= 7; ++k) {
        CHECK(cal_i(k, -1e-12) == Approx(cal_i(k, 1e-12)).epsilon(1e-10));
        for (double x : {-2.3, -0.4, 0.3, 1.9}) {
            const double ref = integrate_to_infinity([&](double t) { return std::pow(t, k) * std::exp(-t * t); }, x);
            CHECK(cal_i(k, x) == Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("cal_j reference values")
{
    const auto p1 = JParams::from_scale(1, 2.0);
    CHECK(cal_j(0, 0.0, p1) == Approx(0.259569856795007888).epsilon(1e-9));
    const auto p3 = JParams::from_scale(3, 1.9);
    CHECK(cal_j(2, 0.7, p3) == Approx(0.142263361358698648).epsilon(1e-10));
    auto fast = cal_j_closed_form(2, 0.7, p3);
    REQUIRE(fast.has_value());
    CHECK(*fast == Approx(cal_j_quadrature(2, 0.7, p3)).epsilon(1e-8));
    const auto p3b = JParams::from_scale(3, 1.6);
    CHECK(cal_j(1, 0.4, p3b) == Approx(0.200607729310504185).epsilon(1e-10));
    CHECK_THROWS_AS(JParams::from_scale(1, 1.0), DomainError);
}

TEST_CASE("cal_j closed forms agree with quadrature wherever they activate")
{
    int activated = 0;
    for (int mt = 0; mt <= 9; ++mt) {
        for (double scale : {1.3, 1.8, 3.0, 6.0, 25.0, 300.0}) {
            const auto p = JParams::from_scale(mt, scale);
            for (int k = 0; k <= mt; ++k) {
                for (double z : {0.0, 0.05, 0.4, 1.0, 2.5}) {
                    auto fast = cal_j_closed_form(k, z, p);
                    if (!fast) continue;
                    ++activated;
                    const double ref = cal_j_quadrature(k, z, p);
                    INFO("mt=" << mt << " k=" << k << " z=" << z << " scale=" << scale);
                    CHECK(*fast == Approx(ref).epsilon(1e-8));
                }
            }
        }
    }
    CHECK(activated > 500);
}

TEST_CASE("cal_j tail vanishes")
{
    const auto p = JParams::from_scale(3, 1.5);
    const double z = 10.0 / std::sqrt(p.delta);
    const double v = cal_j(3, z, p);
    CHECK(v >= 0.0);
    CHECK(v <= std::exp(-p.delta * z * z) * std::tgamma(2.0) / (2.0 * p.delta * z * z) * 1.01);
}

TEST_CASE("gaussian power tail")
{
    for (int n = 0; n <= 5; ++n) {
        for (double c : {0.3, 1.0, 4.0}) {
            const double ref =
                integrate_to_infinity([&](double t) { return std::pow(t, n) * std::exp(-c * t * t); }, 0.35);
            CHECK(gaussian_power_tail(n, 0.35, c) == Approx(ref).epsilon(1e-10));
        }
    }
}
