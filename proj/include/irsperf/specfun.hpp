// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include <functional>
#include <optional>

namespace irsperf::specfun {

// Incomplete gamma functions, unregularized:
//   gamma_upper(q, z) = \int_z^\infty t^{q-1} e^{-t} dt
//   gamma_lower(q, z) = \int_0^z     t^{q-1} e^{-t} dt
// Both throw DomainError for q <= 0 or z < 0.
double gamma_upper(double q, double z);
double gamma_lower(double q, double z);

/// log Gamma(q, z); stays finite where gamma_upper underflows.
double log_gamma_upper(double q, double z);

/// Gaussian tail probability P(Z > x).
double gaussian_q(double x);

/// log Q(x), accurate for large positive x.
double log_gaussian_q(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
double bessel_k(double nu, double x);

/// \int_x^\infty t^k e^{-t^2} dt.
double cal_i(int k, double x);

/// Constants of the weighted incomplete-gamma integral J.
///
/// scale = 2 sigma^2 a, delta = scale - 1. The envelope CDF only ever
/// builds these from a > 1/(2 sigma^2), so delta > 0.
struct JParams {
    int m_tilde_v = 0;
    double delta = 0.0;
    double scale = 1.0;

    static JParams from_scale(int m_tilde_v, double scale);
};

/// J(k, z) = \int_z^\infty t^{m~-k} e^{-delta t^2} Gamma((k+1)/2, t^2) dt.
///
/// Uses the odd/even closed forms when their summation indices are
/// integers and falls back to quadrature otherwise. Never throws for
/// 0 <= k <= m~.
double cal_j(int k, double z, const JParams& p);

/// Reference path: adaptive quadrature of the defining integral.
double cal_j_quadrature(int k, double z, const JParams& p);

/// Fast path; std::nullopt when the closed form does not apply.
std::optional<double> cal_j_closed_form(int k, double z, const JParams& p);

/// \int_x^\infty t^n e^{-c t^2} dt for c > 0.
double gaussian_power_tail(int n, double x, double c);

// Adaptive Gauss-Kronrod quadrature (abs 1e-12, rel 1e-10).
double integrate(const std::function<double(double)>& f, double a, double b);

/// Semi-infinite range [a, inf) mapped through t = a + L u / (1 - u).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double length_scale = 1.0);

}  // namespace irsperf::specfun
