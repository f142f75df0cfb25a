// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include "irsperf/channel.hpp"
#include "irsperf/correlation.hpp"
#include "irsperf/montecarlo.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace irsperf {

enum class ExperimentKind { wdist, snrcdf, outage, rate, ser, quantization, correlation, sweep };

std::string kind_name(ExperimentKind k);
std::optional<ExperimentKind> kind_from_name(const std::string& name);

struct SweepAxis {
    std::string variable = "n_elements";
    std::vector<double> values;
};

/// Fixed-area surface used by the correlation experiment.
struct SurfaceSpec {
    double aperture_m = 1.0;
    double wavelength_m = 0.1;
    AngleStats aoa;
    AngleStats aod;
};

/// Everything a run needs. `config` is the base system; the per-kind
/// lists (n_list, distance_cases, bits) select the curves and
/// gamma_grid_db is the SNR axis where one is used.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::rate;
    SystemConfig config;
    SimPlan plan;
    bool run_mc = true;
    std::vector<int> n_list;
    std::vector<double> distance_cases;
    std::vector<int> bits;
    std::vector<double> gamma_grid_db;
    std::optional<std::array<double, 3>> rician_k;
    SurfaceSpec surface;
    SweepAxis sweep;
    std::filesystem::path output_dir = ".";
};

/// Parses a configuration object (or a manifest written by
/// run_experiment) for the given kind. Missing keys take the reference
/// defaults: (m_v, m_g, m_h) = (2, 3, 4), N = 32, eta = 0.9,
/// d = (100, 60, 60) m, zeta0 = 42 dB, exponent 3.5, gamma_bar = 20 dB,
/// then the kind's own preset. Throws ConfigError listing every
/// problem found.
ExperimentSpec validate_config(const nlohmann::json& raw, ExperimentKind kind);

/// Fully explicit configuration object; validate_config of the result
/// reproduces the same ExperimentSpec.
nlohmann::json to_json(const ExperimentSpec& spec);

struct RunResult {
    std::vector<std::filesystem::path> files;
    std::filesystem::path manifest;
};

/// Writes one CSV per curve plus manifest.json into spec.output_dir.
RunResult run_experiment(const ExperimentSpec& spec);

/// Build identification recorded in manifests.
std::string git_describe();

}  // namespace irsperf
