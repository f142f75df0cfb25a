// SPDX-License-Identifier: Apache-2.0

#include "irsperf/channel.hpp"

#include <algorithm>

namespace irsperf {

double path_loss(double d, double zeta0_db, double exponent)
{
    if (!(d > 0.0)) throw DomainError("path_loss: distance must be positive");
    return std::pow(10.0, (zeta0_db - 10.0 * exponent * std::log10(d)) / 10.0);
}

double rician_to_nakagami(double k_factor)
{
    if (!(k_factor >= 0.0)) throw DomainError("rician_to_nakagami: K must be nonnegative");
    return (k_factor + 1.0) * (k_factor + 1.0) / (2.0 * k_factor + 1.0);
}

double SystemConfig::kappa_g(int n) const
{
    const double z = zeta_g.empty() ? g.zeta : zeta_g[static_cast<std::size_t>(n)];
    return g.m * z;
}

double SystemConfig::kappa_h(int n) const
{
    const double z = zeta_h.empty() ? h.zeta : zeta_h[static_cast<std::size_t>(n)];
    return h.m * z;
}

bool SystemConfig::homogeneous() const
{
    auto all_equal = [](const std::vector<double>& xs) {
        return xs.empty() || std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
    };
    return all_equal(eta) && all_equal(zeta_g) && all_equal(zeta_h);
}

std::vector<std::string> SystemConfig::problems() const
{
    std::vector<std::string> out;
    if (n_elements < 1) out.emplace_back("n_elements: N must be at least 1");
    if (static_cast<int>(eta.size()) != n_elements) {
        out.emplace_back("eta: expected " + std::to_string(n_elements) + " entries, got " +
                         std::to_string(eta.size()));
    }
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (!(eta[i] > 0.0 && eta[i] <= 1.0)) {
            out.emplace_back("eta[" + std::to_string(i) + "] = " + std::to_string(eta[i]) + ": η_n ∈ (0,1]");
            break;
        }
    }
    auto check_leg = [&](const char* name, const LinkParams& l) {
        if (!(l.m >= 0.5)) out.emplace_back(std::string(name) + ".m: Nakagami shape must be at least 0.5");
        if (!(l.zeta > 0.0)) out.emplace_back(std::string(name) + ".zeta: gain must be positive");
    };
    check_leg("v", v);
    check_leg("g", g);
    check_leg("h", h);
    auto check_per_element = [&](const char* name, const std::vector<double>& z) {
        if (z.empty()) return;
        if (static_cast<int>(z.size()) != n_elements) {
            out.emplace_back(std::string(name) + ": expected one gain per element");
        }
        if (std::any_of(z.begin(), z.end(), [](double x) { return !(x > 0.0); })) {
            out.emplace_back(std::string(name) + ": gains must be positive");
        }
    };
    check_per_element("zeta_g", zeta_g);
    check_per_element("zeta_h", zeta_h);
    if (!(distances.sd > 0.0) || !(distances.si > 0.0) || !(distances.di > 0.0)) {
        out.emplace_back("distances: all distances must be positive");
    }
    if (!(pathloss.exponent >= 0.0)) out.emplace_back("pathloss.exponent: must be nonnegative");
    if (!(modulation.alpha > 0.0) || !(modulation.beta > 0.0)) {
        out.emplace_back("modulation: alpha and beta must be positive");
    }
    if (!std::isfinite(gamma_bar_db)) out.emplace_back("gamma_bar_db: must be finite");
    if (!std::isfinite(gamma_th_db)) out.emplace_back("gamma_th_db: must be finite");
    return out;
}

void SystemConfig::validate() const
{
    auto p = problems();
    if (!p.empty()) throw ConfigError(std::move(p));
}

void apply_geometry(SystemConfig& cfg)
{
    cfg.v.zeta = path_loss(cfg.distances.sd, cfg.pathloss.zeta0_db, cfg.pathloss.exponent);
    cfg.h.zeta = path_loss(cfg.distances.si, cfg.pathloss.zeta0_db, cfg.pathloss.exponent);
    cfg.g.zeta = path_loss(cfg.distances.di, cfg.pathloss.zeta0_db, cfg.pathloss.exponent);
    cfg.zeta_g.clear();
    cfg.zeta_h.clear();
}

SystemConfig make_geometry_config(int n_elements, double m_v, double m_g, double m_h, Distances d,
                                  PathLossModel pl, double eta)
{
    SystemConfig cfg;
    cfg.n_elements = n_elements;
    cfg.eta.assign(static_cast<std::size_t>(std::max(n_elements, 0)), eta);
    cfg.v.m = m_v;
    cfg.g.m = m_g;
    cfg.h.m = m_h;
    cfg.distances = d;
    cfg.pathloss = pl;
    apply_geometry(cfg);
    return cfg;
}

SystemConfig make_unit_config(int n_elements, double m_v, double m_g, double m_h, double zeta_v,
                              double zeta_g, double zeta_h, double eta)
{
    SystemConfig cfg;
    cfg.n_elements = n_elements;
    cfg.eta.assign(static_cast<std::size_t>(std::max(n_elements, 0)), eta);
    cfg.v = {m_v, zeta_v};
    cfg.g = {m_g, zeta_g};
    cfg.h = {m_h, zeta_h};
    return cfg;
}

SystemConfig with_elements(const SystemConfig& cfg, int n_elements)
{
    SystemConfig out = cfg;
    out.n_elements = n_elements;
    auto resize = [&](std::vector<double>& xs, double fill) {
        xs.resize(static_cast<std::size_t>(std::max(n_elements, 0)), fill);
    };
    resize(out.eta, cfg.eta.empty() ? 0.9 : cfg.eta.front());
    if (!out.zeta_g.empty()) resize(out.zeta_g, cfg.zeta_g.front());
    if (!out.zeta_h.empty()) resize(out.zeta_h, cfg.zeta_h.front());
    return out;
}

}  // namespace irsperf
