// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include "irsperf/error.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace irsperf {

/// One Nakagami-m leg. kappa = m * zeta is always derived.
struct LinkParams {
    double m = 1.0;
    double zeta = 1.0;

    double kappa() const noexcept { return m * zeta; }
};

struct PathLossModel {
    double zeta0_db = 42.0;
    double exponent = 3.5;
};

/// Distances in meters: source-destination, source-IRS, destination-IRS.
struct Distances {
    double sd = 100.0;
    double si = 60.0;
    double di = 60.0;
};

/// Symbol-error parameters: P_e = E[alpha Q(sqrt(beta gamma))].
struct Modulation {
    double alpha = 1.0;
    double beta = 2.0;
};

/// Link budget and fading of the IRS-aided system.
///
/// h is the source-IRS leg, g the IRS-destination leg, v the direct link.
/// zeta_g / zeta_h hold per-element gains when the surface is
/// heterogeneous; left empty, every element uses g.zeta / h.zeta.
struct SystemConfig {
    int n_elements = 32;
    std::vector<double> eta;
    LinkParams v;
    LinkParams g;
    LinkParams h;
    std::vector<double> zeta_g;
    std::vector<double> zeta_h;
    Distances distances;
    PathLossModel pathloss;
    double gamma_bar_db = 20.0;
    double gamma_th_db = 10.0;
    Modulation modulation;

    double gamma_bar() const { return std::pow(10.0, gamma_bar_db / 10.0); }
    double gamma_th() const { return std::pow(10.0, gamma_th_db / 10.0); }
    double eta_n(int n) const { return eta[static_cast<std::size_t>(n)]; }
    double kappa_g(int n) const;
    double kappa_h(int n) const;
    bool homogeneous() const;

    /// Every violated invariant, one message each; empty when valid.
    std::vector<std::string> problems() const;
    /// Throws ConfigError when problems() is nonempty.
    void validate() const;
};

/// Linear large-scale gain at distance d:
///   zeta[dB] = zeta0_db - 10 * exponent * log10(d).
double path_loss(double d, double zeta0_db, double exponent);

double rician_to_nakagami(double k_factor);

/// Configuration whose leg gains follow from the distances and path loss.
SystemConfig make_geometry_config(int n_elements, double m_v, double m_g, double m_h, Distances d = {},
                                  PathLossModel pl = {}, double eta = 0.9);

/// Configuration with explicit gains (zeta) on every leg.
SystemConfig make_unit_config(int n_elements, double m_v, double m_g, double m_h, double zeta_v = 1.0,
                              double zeta_g = 1.0, double zeta_h = 1.0, double eta = 1.0);

/// Recomputes the leg gains from cfg.distances and cfg.pathloss.
void apply_geometry(SystemConfig& cfg);

/// Same configuration with N elements; eta and per-element gains are
/// extended with their first entry or truncated.
SystemConfig with_elements(const SystemConfig& cfg, int n_elements);

/// Amplitude whose square is Gamma(shape m, scale zeta), so E[X^2] = m*zeta.
template <class Rng>
double nakagami_sample(double m, double zeta, Rng& rng)
{
    if (!(m >= 0.5)) throw DomainError("nakagami_sample: m must be at least 0.5");
    if (!(zeta > 0.0)) throw DomainError("nakagami_sample: zeta must be positive");
    std::gamma_distribution<double> gd(m, zeta);
    return std::sqrt(gd(rng));
}

}  // namespace irsperf
