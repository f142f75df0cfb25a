// SPDX-License-Identifier: Apache-2.0

#include "irsperf/correlation.hpp"

#include "irsperf/error.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <tuple>

namespace irsperf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

CMatrix corr_matrix_elevation(int n_el, double d_el, const AngleStats& angles)
{
    if (n_el < 1) throw DomainError("corr_matrix_elevation: n_el must be positive");
    const double psi = angles.mean_el;
    const double spread = angles.std_el * kTwoPi * d_el * std::sin(psi);
    CMatrix r(n_el, n_el);
    for (int x = 0; x < n_el; ++x) {
        for (int y = 0; y < n_el; ++y) {
            const double sep = y - x;
            const double mag = std::exp(-0.5 * spread * spread * sep * sep);
            r(x, y) = std::polar(mag, kTwoPi * d_el * sep * std::cos(psi));
        }
    }
    return r;
}

CMatrix corr_matrix_azimuth(int n_az, double d_az, const AngleStats& angles)
{
    if (n_az < 1) throw DomainError("corr_matrix_azimuth: n_az must be positive");
    const double om = angles.mean_az;
    const double nu = angles.std_az;
    const double psi = angles.mean_el;
    const double so = std::sin(om);
    const double co = std::cos(om);
    CMatrix r(n_az, n_az);
    for (int row = 0; row < n_az; ++row) {
        for (int t = 0; t < n_az; ++t) {
            const double sep = t - row;
            const double a1 = kTwoPi * d_az * sep * std::sin(psi);
            const double a2 = angles.std_el * kTwoPi * d_az * sep * std::cos(psi);
            const double a3 = a2 * a2 * nu * nu * so * so + 1.0;
            const double mag =
                std::exp(-(a2 * a2 * co * co + a1 * a1 * nu * nu * so * so) / (2.0 * a3)) / std::sqrt(a3);
            r(row, t) = std::polar(mag, a1 * co / a3);
        }
    }
    return r;
}

CMatrix hermitian_sqrt(const CMatrix& r)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
    if (es.info() != Eigen::Success) throw NumericalConsistencyError("hermitian_sqrt: eigensolver failed");
    Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-10 * scale) {
            throw NumericalConsistencyError("hermitian_sqrt: matrix is not positive semidefinite");
        }
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    const CMatrix& u = es.eigenvectors();
    return u * ev.asDiagonal() * u.adjoint();
}

CorrelationMatrices build_correlation(const CorrelationConfig& cfg)
{
    if (!(cfg.d_az > 0.0) || !(cfg.d_el > 0.0)) throw DomainError("build_correlation: spacings must be positive");
    auto kron = [](const CMatrix& a, const CMatrix& b) {
        CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            for (Eigen::Index j = 0; j < a.cols(); ++j) {
                k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
            }
        }
        return k;
    };
    CorrelationMatrices m;
    m.r_a = kron(corr_matrix_azimuth(cfg.n_az, cfg.d_az, cfg.aoa), corr_matrix_elevation(cfg.n_el, cfg.d_el, cfg.aoa));
    m.r_d = kron(corr_matrix_azimuth(cfg.n_az, cfg.d_az, cfg.aod), corr_matrix_elevation(cfg.n_el, cfg.d_el, cfg.aod));
    m.r_a_sqrt = hermitian_sqrt(m.r_a);
    m.r_d_sqrt = hermitian_sqrt(m.r_d);
    return m;
}

std::pair<int, int> squarest_grid(int n_elements)
{
    if (n_elements < 1) throw DomainError("squarest_grid: N must be positive");
    int n_el = static_cast<int>(std::sqrt(static_cast<double>(n_elements)));
    while (n_elements % n_el != 0) --n_el;
    return {n_elements / n_el, n_el};
}

CorrelationConfig surface_config(int n_elements, double aperture, double wavelength, const AngleStats& aoa,
                                 const AngleStats& aod)
{
    CorrelationConfig c;
    std::tie(c.n_az, c.n_el) = squarest_grid(n_elements);
    c.d_az = aperture / c.n_az / wavelength;
    c.d_el = aperture / c.n_el / wavelength;
    c.aoa = aoa;
    c.aod = aod;
    return c;
}

double correlated_snr(const ChannelDraw& draw, const CorrelationMatrices& m, int scheme,
                      const std::vector<double>& eta, double gamma_bar)
{
    const Eigen::Index n = draw.g.size();
    if (draw.h.size() != n || m.r_a_sqrt.rows() != n || m.r_d_sqrt.rows() != n ||
        static_cast<Eigen::Index>(eta.size()) != n) {
        throw DomainError("correlated_snr: dimension mismatch");
    }
    const CVector h_c = m.r_a_sqrt * draw.h;
    const CVector g_c = m.r_d_sqrt.transpose() * draw.g;
    if (scheme == 2) {
        double r = draw.v_amp;
        for (Eigen::Index i = 0; i < n; ++i) r += eta[static_cast<std::size_t>(i)] * std::abs(g_c(i)) * std::abs(h_c(i));
        return gamma_bar * r * r;
    }
    if (scheme != 1) throw DomainError("correlated_snr: scheme must be 1 or 2");
    std::complex<double> r = std::polar(draw.v_amp, draw.phi_v);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double theta = draw.phi_v - std::arg(draw.g(i)) - std::arg(draw.h(i));
        r += eta[static_cast<std::size_t>(i)] * g_c(i) * h_c(i) * std::polar(1.0, theta);
    }
    return gamma_bar * std::norm(r);
}

}  // namespace irsperf
