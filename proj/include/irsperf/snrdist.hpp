// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include "irsperf/cltapprox.hpp"

#include <vector>

namespace irsperf {

/// Constants of the envelope PDF/CDF of R = v + W.
///
/// The direct-link shape must be a multiple of 1/2 so that
/// m_tilde_v = 2 m_v - 1 is a nonnegative integer.
struct SnrCdfParams {
    int m_tilde_v = 0;
    double m_v = 1.0;
    double kappa_v = 1.0;
    double a = 1.0;
    double lambda = 1.0;
    double delta = 1.0;
    TruncatedNormal tn;
    double gamma_bar = 1.0;

    static SnrCdfParams make(const SystemConfig& cfg);
    static SnrCdfParams make(const LinkParams& v, const TruncatedNormal& tn, double gamma_bar);
};

/// Exact PDF of one eta * g * h product (modified-Bessel form).
struct ProductPdfParams {
    double psi = 0.0;
    double tau_n = 0.0;
    double m_a = 1.0;
    double m_b = 1.0;

    static ProductPdfParams make(const LinkParams& a, const LinkParams& b, double eta);
};

/// Co-phasing shifts theta_n = phi_v - phi_h_n - phi_g_n wrapped into (-pi, pi].
std::vector<double> optimal_phases(double phi_v, const std::vector<double>& phi_g,
                                   const std::vector<double>& phi_h);

/// gamma_bar (v + sum eta_n g_n h_n)^2.
double optimal_snr(double v_amp, const std::vector<double>& g_amp, const std::vector<double>& h_amp,
                   const std::vector<double>& eta, double gamma_bar);

/// SNR for arbitrary phase shifts:
///   gamma_bar |v e^{j phi_v} + sum eta_n g_n h_n e^{j(theta_n + phi_g_n + phi_h_n)}|^2.
double snr_with_phases(double v_amp, double phi_v, const std::vector<double>& g_amp,
                       const std::vector<double>& phi_g, const std::vector<double>& h_amp,
                       const std::vector<double>& phi_h, const std::vector<double>& eta,
                       const std::vector<double>& theta, double gamma_bar);

double envelope_pdf(double r, const SnrCdfParams& p);
double envelope_cdf(double r, const SnrCdfParams& p);

// Convolution-integral forms of the same densities; slower, used where the
// closed forms lose precision and as an independent check.
double envelope_pdf_quadrature(double r, const SnrCdfParams& p);
double envelope_cdf_quadrature(double r, const SnrCdfParams& p);

/// CDF of the optimal SNR. Raw values outside [-1e-6, 1 + 1e-6] raise
/// NumericalConsistencyError; smaller excursions are clamped.
double snr_cdf(double y, const SnrCdfParams& p);
double snr_pdf(double y, const SnrCdfParams& p);

double product_pdf(double w, const ProductPdfParams& p);

}  // namespace irsperf
