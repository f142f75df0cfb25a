// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace irsperf {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Gaussian angle statistics in radians: azimuth ~ N(mean_az, std_az^2),
/// elevation ~ N(mean_el, std_el^2).
struct AngleStats {
    double mean_az = 0.0;
    double std_az = 0.0;
    double mean_el = 0.0;
    double std_el = 0.0;
};

/// Planar surface of n_az x n_el elements; spacings in wavelengths.
struct CorrelationConfig {
    int n_az = 1;
    int n_el = 1;
    double d_az = 0.5;
    double d_el = 0.5;
    AngleStats aoa;
    AngleStats aod;

    int n_elements() const { return n_az * n_el; }
};

struct CorrelationMatrices {
    CMatrix r_a;
    CMatrix r_d;
    CMatrix r_a_sqrt;
    CMatrix r_d_sqrt;
};

/// One channel realization: direct amplitude/phase and the complex
/// source-IRS (h) and IRS-destination (g) vectors before correlation.
struct ChannelDraw {
    double v_amp = 0.0;
    double phi_v = 0.0;
    CVector g;
    CVector h;
};

CMatrix corr_matrix_elevation(int n_el, double d_el, const AngleStats& angles);
CMatrix corr_matrix_azimuth(int n_az, double d_az, const AngleStats& angles);

/// Hermitian square root; eigenvalues down to -1e-10 are clipped to zero,
/// anything more negative raises NumericalConsistencyError.
CMatrix hermitian_sqrt(const CMatrix& r);

CorrelationMatrices build_correlation(const CorrelationConfig& cfg);

/// Squarest n_az x n_el factorization of N with n_az >= n_el.
std::pair<int, int> squarest_grid(int n_elements);

/// Surface of side `aperture` meters at carrier wavelength `wavelength`.
CorrelationConfig surface_config(int n_elements, double aperture, double wavelength, const AngleStats& aoa,
                                 const AngleStats& aod);

/// scheme 1: co-phasing from the uncorrelated g, h phases;
/// scheme 2: co-phasing of the correlated vectors.
double correlated_snr(const ChannelDraw& draw, const CorrelationMatrices& m, int scheme,
                      const std::vector<double>& eta, double gamma_bar);

}  // namespace irsperf
