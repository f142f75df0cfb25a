// SPDX-License-Identifier: Apache-2.0

#include "irsperf/experiment.hpp"

#include "irsperf/cltapprox.hpp"
#include "irsperf/metrics.hpp"
#include "irsperf/snrdist.hpp"
#include "irsperf/specfun.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>

#ifndef IRSPERF_GIT_DESCRIBE
#define IRSPERF_GIT_DESCRIBE "unknown"
#endif

namespace irsperf {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::array<std::pair<ExperimentKind, const char*>, 8> kKinds{{
    {ExperimentKind::wdist, "wdist"},
    {ExperimentKind::snrcdf, "snrcdf"},
    {ExperimentKind::outage, "outage"},
    {ExperimentKind::rate, "rate"},
    {ExperimentKind::ser, "ser"},
    {ExperimentKind::quantization, "quantization"},
    {ExperimentKind::correlation, "correlation"},
    {ExperimentKind::sweep, "sweep"},
}};

const std::set<std::string> kSweepVariables{"n_elements", "gamma_bar_db", "gamma_th_db", "d_irs", "eta"};

std::vector<double> range(double start, double stop, double step)
{
    std::vector<double> v;
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
    for (int i = 0; i <= n; ++i) v.push_back(start + i * step);
    return v;
}

json angles_json(const AngleStats& a)
{
    const double k = 180.0 / std::numbers::pi;
    return {{"mean_az", a.mean_az * k}, {"std_az", a.std_az * k}, {"mean_el", a.mean_el * k}, {"std_el", a.std_el * k}};
}

// Defaults shared by every kind.
json base_defaults()
{
    return {
        {"n_elements", 32},
        {"eta", 0.9},
        {"fading", {{"m_v", 2.0}, {"m_g", 3.0}, {"m_h", 4.0}}},
        {"distances", {{"sd", 100.0}, {"si", 60.0}, {"di", 60.0}}},
        {"pathloss", {{"zeta0_db", 42.0}, {"exponent", 3.5}}},
        {"gamma_bar_db", 20.0},
        {"gamma_th_db", 10.0},
        {"modulation", {{"alpha", 1.0}, {"beta", 2.0}}},
        {"n_list", {32}},
        {"distance_cases", json::array()},
        {"bits", json::array()},
        {"gamma_bar_db_values", range(0.0, 40.0, 2.0)},
        {"surface",
         {{"aperture_m", 1.0},
          {"wavelength_m", 0.1},
          {"aoa_deg", {{"mean_az", 30.0}, {"std_az", 10.0}, {"mean_el", 40.0}, {"std_el", 10.0}}},
          {"aod_deg", {{"mean_az", 60.0}, {"std_az", 10.0}, {"mean_el", 50.0}, {"std_el", 10.0}}}}},
        {"sweep", {{"variable", "n_elements"}, {"values", {8, 16, 32, 64, 128}}}},
        {"simulation", {{"trials", 100000}, {"seed", 1}, {"workers", 0}}},
    };
}

json kind_preset(ExperimentKind kind)
{
    json p = base_defaults();
    switch (kind) {
    case ExperimentKind::wdist:
        p["n_list"] = {16, 32, 64};
        p["simulation"]["trials"] = 1000000;
        break;
    case ExperimentKind::snrcdf:
        p["n_list"] = {32, 256};
        p["simulation"]["trials"] = 1000000;
        break;
    case ExperimentKind::outage:
        p["fading"] = {{"m_v", 2.0}, {"m_g", 2.0}, {"m_h", 3.0}};
        p["n_list"] = {8, 16, 32};
        p["gamma_bar_db_values"] = range(0.0, 45.0, 1.0);
        p["simulation"]["trials"] = 1000000;
        break;
    case ExperimentKind::rate:
        p["n_list"] = {8, 16, 32, 64, 128};
        break;
    case ExperimentKind::ser:
        p["fading"] = {{"m_v", 1.0}, {"m_g", 1.0}, {"m_h", 2.0}};
        p["n_elements"] = 16;
        p["distance_cases"] = {51.0, 80.0, 140.0};
        p["gamma_bar_db_values"] = range(0.0, 45.0, 1.0);
        p["simulation"]["trials"] = 1000000;
        break;
    case ExperimentKind::quantization:
        p["n_list"] = {32, 64, 128};
        p["bits"] = {1, 2, 4};
        p["gamma_bar_db_values"] = range(0.0, 40.0, 5.0);
        break;
    case ExperimentKind::correlation:
        p["rician_k"] = {{"v", 2.0}, {"g", 3.0}, {"h", 4.0}};
        p["distances"] = {{"sd", 100.0}, {"si", 80.0}, {"di", 80.0}};
        p["n_list"] = {16, 36, 64, 100, 144};
        p["simulation"]["trials"] = 20000;
        break;
    case ExperimentKind::sweep:
        break;
    }
    return p;
}

const std::set<std::string> kTopKeys{"n_elements", "eta",          "fading",         "rician_k",   "distances",
                                     "pathloss",   "zeta_db",      "gamma_bar_db",   "gamma_th_db", "modulation",
                                     "n_list",     "distance_cases", "bits",         "gamma_bar_db_values",
                                     "surface",    "sweep",        "simulation"};

// Typed access that records problems instead of throwing.
class Reader {
public:
    std::vector<std::string> problems;

    double number(const json& j, const std::string& path)
    {
        if (!j.is_number()) {
            problems.push_back(path + ": expected a number");
            return kNaN;
        }
        return j.get<double>();
    }

    double number(const json& obj, const std::string& key, const std::string& path)
    {
        if (!obj.is_object() || !obj.contains(key)) {
            problems.push_back(path + "." + key + ": missing");
            return kNaN;
        }
        return number(obj.at(key), path + "." + key);
    }

    long long integer(const json& j, const std::string& path)
    {
        if (!j.is_number_integer() && !(j.is_number() && j.get<double>() == std::floor(j.get<double>()))) {
            problems.push_back(path + ": expected an integer");
            return 0;
        }
        return j.get<long long>();
    }

    std::vector<double> numbers(const json& j, const std::string& path)
    {
        std::vector<double> out;
        if (!j.is_array()) {
            problems.push_back(path + ": expected an array of numbers");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

    std::vector<int> integers(const json& j, const std::string& path)
    {
        std::vector<int> out;
        if (!j.is_array()) {
            problems.push_back(path + ": expected an array of integers");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(static_cast<int>(integer(j[i], path + "[" + std::to_string(i) + "]")));
        return out;
    }

    void unknown_keys(const json& obj, const std::set<std::string>& known, const std::string& path)
    {
        if (!obj.is_object()) {
            problems.push_back(path + ": expected an object");
            return;
        }
        for (const auto& [k, v] : obj.items()) {
            if (!known.count(k)) problems.push_back((path.empty() ? k : path + "." + k) + ": unknown key");
        }
    }

    template <class T>
    void increasing(const std::vector<T>& v, const std::string& path, bool allow_empty)
    {
        if (v.empty() && !allow_empty) problems.push_back(path + ": must not be empty");
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (!(v[i] > v[i - 1])) {
                problems.push_back(path + ": values must be strictly increasing");
                return;
            }
        }
    }
};

AngleStats parse_angles(Reader& rd, const json& j, const std::string& path)
{
    rd.unknown_keys(j, {"mean_az", "std_az", "mean_el", "std_el"}, path);
    const double k = std::numbers::pi / 180.0;
    AngleStats a;
    a.mean_az = rd.number(j, "mean_az", path) * k;
    a.std_az = rd.number(j, "std_az", path) * k;
    a.mean_el = rd.number(j, "mean_el", path) * k;
    a.std_el = rd.number(j, "std_el", path) * k;
    if (a.std_az < 0.0 || a.std_el < 0.0) rd.problems.push_back(path + ": spreads must be nonnegative");
    return a;
}

std::vector<double> parse_grid(Reader& rd, const json& j)
{
    const std::string path = "gamma_bar_db_values";
    if (j.is_object()) {
        rd.unknown_keys(j, {"start", "stop", "step"}, path);
        const double a = rd.number(j, "start", path);
        const double b = rd.number(j, "stop", path);
        const double s = rd.number(j, "step", path);
        if (!(s > 0.0) || !(b >= a)) {
            rd.problems.push_back(path + ": need step > 0 and stop >= start");
            return {};
        }
        return range(a, b, s);
    }
    return rd.numbers(j, path);
}

bool needs_analytic_cdf(ExperimentKind k)
{
    return k == ExperimentKind::snrcdf || k == ExperimentKind::outage || k == ExperimentKind::sweep;
}

std::string fmt(double x)
{
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string tag(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

struct Row {
    double x = kNaN;
    double analytic = kNaN;
    double asymptotic = kNaN;
    double mc = kNaN;
    double lo = kNaN;
    double hi = kNaN;

    void set_mc(const Estimate& e)
    {
        mc = e.value;
        lo = e.ci_low;
        hi = e.ci_high;
    }
};

class Writer {
public:
    explicit Writer(const std::filesystem::path& dir) : dir_(dir) { std::filesystem::create_directories(dir_); }

    void csv(const std::string& name, const std::string& x_unit, const std::vector<Row>& rows)
    {
        const auto path = dir_ / name;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "x_unit,x,analytic,asymptotic,mc,mc_ci_low,mc_ci_high\n";
        for (const auto& r : rows) {
            out << x_unit << ',' << fmt(r.x) << ',' << fmt(r.analytic) << ',' << fmt(r.asymptotic) << ','
                << fmt(r.mc) << ',' << fmt(r.lo) << ',' << fmt(r.hi) << '\n';
        }
        if (!out) throw std::runtime_error("write failed for " + path.string());
        files.push_back(path);
    }

    std::vector<std::filesystem::path> files;
    json summary = json::object();

private:
    std::filesystem::path dir_;
};

std::vector<double> sorted_copy(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

std::uint64_t count_le(const std::vector<double>& sorted, double x)
{
    return static_cast<std::uint64_t>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

std::vector<double> scaled(const std::vector<double>& v, double k)
{
    std::vector<double> out(v);
    for (auto& x : out) x *= k;
    return out;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

std::optional<AsymptoticResult> try_asymptote(const SystemConfig& cfg, double gamma_th)
{
    if (cfg.g.m == cfg.h.m) return std::nullopt;
    return asymptotic_outage(cfg, gamma_th);
}

void run_wdist(const ExperimentSpec& s, Writer& w)
{
    for (int n : s.n_list) {
        const auto cfg = with_elements(s.config, n);
        const auto tn = w_stats(cfg);
        const double sd = tn.sigma_bar();
        const double lo = std::max(0.0, tn.mu_bar - 5.0 * sd);
        const double hi = tn.mu_bar + 5.0 * sd;
        const int k = 200;
        const double step = (hi - lo) / k;
        std::vector<double> samples;
        if (s.run_mc) samples = sorted_copy(simulate_w_samples(cfg, s.plan));
        std::vector<Row> pdf, cdf;
        for (int i = 0; i <= k; ++i) {
            const double x = lo + i * step;
            const double z = (x - tn.mu_bar) / sd;
            Row p{x}, c{x};
            p.analytic = tn.xi * specfun::normal_pdf(z) / sd;
            c.analytic = std::clamp(1.0 - tn.xi * specfun::gaussian_q(z), 0.0, 1.0);
            if (s.run_mc) {
                c.set_mc(wilson_interval(count_le(samples, x), samples.size()));
                const auto a = std::lower_bound(samples.begin(), samples.end(), x - 0.5 * step);
                const auto b = std::lower_bound(samples.begin(), samples.end(), x + 0.5 * step);
                const auto e = wilson_interval(static_cast<std::uint64_t>(b - a), samples.size());
                p.mc = e.value / step;
                p.lo = e.ci_low / step;
                p.hi = e.ci_high / step;
            }
            pdf.push_back(p);
            cdf.push_back(c);
        }
        w.csv("wdist_pdf_N" + std::to_string(n) + ".csv", "w", pdf);
        w.csv("wdist_cdf_N" + std::to_string(n) + ".csv", "w", cdf);
    }
}

void run_snrcdf(const ExperimentSpec& s, Writer& w)
{
    for (int n : s.n_list) {
        const auto cfg = with_elements(s.config, n);
        const auto p = SnrCdfParams::make(cfg);
        const double gb = cfg.gamma_bar();
        const double sd = p.tn.sigma_bar();
        const double ev = nakagami_moment(cfg.v, 1.0);
        const double r_lo = std::max(p.tn.mu_bar - 6.0 * sd, 1e-3 * (p.tn.mu_bar + ev));
        const double r_hi = p.tn.mu_bar + 6.0 * sd + 5.0 * std::sqrt(p.kappa_v);
        std::vector<double> samples;
        if (s.run_mc) samples = sorted_copy(simulate_snr_samples(cfg, s.plan));
        std::vector<Row> rows;
        const int k = 200;
        for (int i = 0; i <= k; ++i) {
            const double r = r_lo + (r_hi - r_lo) * i / k;
            const double y = gb * r * r;
            Row row{10.0 * std::log10(y)};
            row.analytic = snr_cdf(y, p);
            if (s.run_mc) row.set_mc(wilson_interval(count_le(samples, y), samples.size()));
            rows.push_back(row);
        }
        w.csv("snrcdf_N" + std::to_string(n) + ".csv", "snr_db", rows);
        if (s.run_mc) {
            w.summary["ks_N" + std::to_string(n)] = ks_distance(samples, [&](double y) { return snr_cdf(y, p); });
        }
    }
}

void run_outage(const ExperimentSpec& s, Writer& w)
{
    std::vector<std::vector<double>> gains;
    if (s.run_mc) {
        gains = simulate_gain_prefix(s.config, s.plan, s.n_list);
        for (auto& g : gains) std::sort(g.begin(), g.end());
    }
    const double th = s.config.gamma_th();
    for (std::size_t j = 0; j < s.n_list.size(); ++j) {
        const auto cfg = with_elements(s.config, s.n_list[j]);
        const auto tn = w_stats(cfg);
        const auto asy = try_asymptote(cfg, th);
        std::vector<Row> rows;
        CurveResult curve;
        for (double g : s.gamma_grid_db) {
            Row row{g};
            row.analytic = outage_probability(th, SnrCdfParams::make(cfg.v, tn, db(g)));
            if (asy) row.asymptotic = asy->outage(db(g));
            if (s.run_mc) row.set_mc(wilson_interval(count_le(gains[j], th / db(g)), gains[j].size()));
            rows.push_back(row);
            if (asy) {
                curve.x.push_back(g);
                curve.y.push_back(row.asymptotic);
            }
        }
        const std::string n = std::to_string(s.n_list[j]);
        w.csv("outage_N" + n + ".csv", "gamma_bar_db", rows);
        if (asy) {
            w.summary["diversity_order_N" + n] = asy->g_d;
            w.summary["log10_omega_op_N" + n] = asy->log_omega_op / std::numbers::ln10;
        }
    }
}

void run_rate(const ExperimentSpec& s, Writer& w)
{
    std::vector<std::vector<double>> gains;
    if (s.run_mc) gains = simulate_gain_prefix(s.config, s.plan, s.n_list);
    for (std::size_t j = 0; j < s.n_list.size(); ++j) {
        const auto cfg = with_elements(s.config, s.n_list[j]);
        const auto tn = w_stats(cfg);
        std::vector<Row> lower, upper;
        for (double g : s.gamma_grid_db) {
            const auto rb = rate_bounds(cfg.v, tn, db(g));
            Row lo{g}, up{g};
            lo.analytic = rb.lower;
            up.analytic = rb.upper;
            if (s.run_mc) {
                const auto e = empirical_rate(scaled(gains[j], db(g)));
                lo.set_mc(e);
                up.set_mc(e);
            }
            lower.push_back(lo);
            upper.push_back(up);
        }
        const std::string n = std::to_string(s.n_list[j]);
        w.csv("rate_N" + n + "_lower.csv", "gamma_bar_db", lower);
        w.csv("rate_N" + n + "_upper.csv", "gamma_bar_db", upper);
    }
}

void run_ser(const ExperimentSpec& s, Writer& w)
{
    for (double d : s.distance_cases) {
        auto cfg = s.config;
        cfg.distances.si = d;
        cfg.distances.di = d;
        apply_geometry(cfg);
        std::vector<double> gains;
        if (s.run_mc) gains = simulate_gain_samples(cfg, s.plan);
        const bool has_asy = cfg.g.m != cfg.h.m;
        std::vector<Row> rows;
        for (double g : s.gamma_grid_db) {
            cfg.gamma_bar_db = g;
            Row row{g};
            row.analytic = ser_upper_bound(cfg);
            if (has_asy) row.asymptotic = asymptotic_ser(cfg).ser(db(g));
            if (s.run_mc) row.set_mc(empirical_ber(scaled(gains, db(g)), cfg.modulation.alpha, cfg.modulation.beta));
            rows.push_back(row);
        }
        w.csv("ser_d" + tag(d) + ".csv", "gamma_bar_db", rows);
    }
}

// 100 * mean(a) / mean(b) for paired samples, delta-method interval.
Estimate ratio_percent(const std::vector<double>& a, const std::vector<double>& b)
{
    const double n = static_cast<double>(a.size());
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
    }
    const double p = sa / sb;
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) ss += (a[i] - p * b[i]) * (a[i] - p * b[i]);
    const double se = a.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) / (sb / n) : 0.0;
    return {100.0 * p, 100.0 * (p - 1.959963984540054 * se), 100.0 * (p + 1.959963984540054 * se)};
}

void run_quantization(const ExperimentSpec& s, Writer& w)
{
    for (int n : s.n_list) {
        const auto cfg = with_elements(s.config, n);
        std::vector<double> plain;
        SimPlan plan = s.plan;
        plan.quantization_bits.reset();
        if (s.run_mc) plain = simulate_gain_samples(cfg, plan);
        for (int b : s.bits) {
            std::vector<double> quant;
            if (s.run_mc) {
                plan.quantization_bits = b;
                quant = simulate_gain_samples(cfg, plan);
            }
            std::vector<Row> rows;
            for (double g : s.gamma_grid_db) {
                auto c = cfg;
                c.gamma_bar_db = g;
                Row row{g};
                row.analytic = 100.0 * quantized_rate_bounds(c, b).upper / rate_bounds(c).upper;
                if (s.run_mc) {
                    std::vector<double> ra(quant.size()), rb(plain.size());
                    for (std::size_t i = 0; i < quant.size(); ++i) {
                        ra[i] = std::log2(1.0 + db(g) * quant[i]);
                        rb[i] = std::log2(1.0 + db(g) * plain[i]);
                    }
                    row.set_mc(ratio_percent(ra, rb));
                }
                rows.push_back(row);
            }
            w.csv("quantization_N" + std::to_string(n) + "_b" + std::to_string(b) + ".csv", "gamma_bar_db", rows);
        }
    }
}

void run_correlation(const ExperimentSpec& s, Writer& w)
{
    std::vector<Row> s1, s2, lower, upper;
    for (int n : s.n_list) {
        const auto cfg = with_elements(s.config, n);
        const auto rb = rate_bounds(cfg);
        Row a{double(n)}, b{double(n)}, lo{double(n)}, up{double(n)};
        lo.analytic = rb.lower;
        up.analytic = rb.upper;
        if (s.run_mc) {
            SimPlan plan = s.plan;
            plan.correlation.reset();
            const auto e = empirical_rate(simulate_snr_samples(cfg, plan));
            lo.set_mc(e);
            up.set_mc(e);
            plan.correlation =
                surface_config(n, s.surface.aperture_m, s.surface.wavelength_m, s.surface.aoa, s.surface.aod);
            plan.scheme = 1;
            a.set_mc(empirical_rate(simulate_snr_samples(cfg, plan)));
            plan.scheme = 2;
            b.set_mc(empirical_rate(simulate_snr_samples(cfg, plan)));
        }
        s1.push_back(a);
        s2.push_back(b);
        lower.push_back(lo);
        upper.push_back(up);
    }
    w.csv("correlation_scheme1.csv", "n_elements", s1);
    w.csv("correlation_scheme2.csv", "n_elements", s2);
    w.csv("correlation_uncorrelated_lower.csv", "n_elements", lower);
    w.csv("correlation_uncorrelated_upper.csv", "n_elements", upper);
}

SystemConfig sweep_point(const ExperimentSpec& s, double x)
{
    auto cfg = s.config;
    const auto& v = s.sweep.variable;
    if (v == "n_elements") {
        cfg = with_elements(cfg, static_cast<int>(x));
    } else if (v == "gamma_bar_db") {
        cfg.gamma_bar_db = x;
    } else if (v == "gamma_th_db") {
        cfg.gamma_th_db = x;
    } else if (v == "d_irs") {
        cfg.distances.si = x;
        cfg.distances.di = x;
        apply_geometry(cfg);
    } else if (v == "eta") {
        std::fill(cfg.eta.begin(), cfg.eta.end(), x);
    }
    return cfg;
}

void run_sweep(const ExperimentSpec& s, Writer& w)
{
    // Changing only the SNR axis keeps the channel draws valid.
    const bool reuse = s.sweep.variable == "gamma_bar_db" || s.sweep.variable == "gamma_th_db";
    std::vector<double> shared;
    if (s.run_mc && reuse) shared = simulate_gain_samples(s.config, s.plan);
    std::vector<Row> out, lower, upper, ser;
    for (double x : s.sweep.values) {
        const auto cfg = sweep_point(s, x);
        const double gb = cfg.gamma_bar();
        Row o{x}, lo{x}, up{x}, e{x};
        o.analytic = outage_probability(cfg.gamma_th(), SnrCdfParams::make(cfg));
        const auto rb = rate_bounds(cfg);
        lo.analytic = rb.lower;
        up.analytic = rb.upper;
        e.analytic = ser_upper_bound(cfg);
        if (cfg.g.m != cfg.h.m) {
            o.asymptotic = asymptotic_outage(cfg, cfg.gamma_th()).outage(gb);
            e.asymptotic = asymptotic_ser(cfg).ser(gb);
        }
        if (s.run_mc) {
            const auto snr = scaled(reuse ? shared : simulate_gain_samples(cfg, s.plan), gb);
            o.set_mc(empirical_outage(snr, cfg.gamma_th()));
            const auto r = empirical_rate(snr);
            lo.set_mc(r);
            up.set_mc(r);
            e.set_mc(empirical_ber(snr, cfg.modulation.alpha, cfg.modulation.beta));
        }
        out.push_back(o);
        lower.push_back(lo);
        upper.push_back(up);
        ser.push_back(e);
    }
    const auto& unit = s.sweep.variable;
    w.csv("sweep_outage.csv", unit, out);
    w.csv("sweep_rate_lower.csv", unit, lower);
    w.csv("sweep_rate_upper.csv", unit, upper);
    w.csv("sweep_ser.csv", unit, ser);
}

}  // namespace

std::string kind_name(ExperimentKind k)
{
    for (const auto& [kind, name] : kKinds)
        if (kind == k) return name;
    return "unknown";
}

std::optional<ExperimentKind> kind_from_name(const std::string& name)
{
    for (const auto& [kind, n] : kKinds)
        if (name == n) return kind;
    return std::nullopt;
}

std::string git_describe() { return IRSPERF_GIT_DESCRIBE; }

ExperimentSpec validate_config(const json& raw_in, ExperimentKind kind)
{
    Reader rd;
    json user = raw_in.is_null() ? json::object() : raw_in;
    if (!user.is_object()) throw ConfigError({"configuration must be a JSON object"});

    // A manifest carries the configuration under "config".
    if (user.contains("config") && user.contains("kind")) {
        const auto k = user["kind"].is_string() ? kind_from_name(user["kind"].get<std::string>()) : std::nullopt;
        if (!k || *k != kind) {
            rd.problems.push_back("kind: manifest was written by '" + user["kind"].dump() + "', not '" +
                                  kind_name(kind) + "'");
        }
        user = user["config"];
        if (!user.is_object()) throw ConfigError({"config: expected an object"});
    }
    rd.unknown_keys(user, kTopKeys, "");

    json j = kind_preset(kind);
    if (user.contains("fading") && !user.contains("rician_k")) j.erase("rician_k");
    j.merge_patch(user);

    ExperimentSpec s;
    s.kind = kind;

    // Fading.
    const json& fad = j["fading"];
    rd.unknown_keys(fad, {"m_v", "m_g", "m_h"}, "fading");
    double mv = rd.number(fad, "m_v", "fading");
    double mg = rd.number(fad, "m_g", "fading");
    double mh = rd.number(fad, "m_h", "fading");
    if (j.contains("rician_k")) {
        const json& rk = j["rician_k"];
        rd.unknown_keys(rk, {"v", "g", "h"}, "rician_k");
        const std::array<double, 3> k{rd.number(rk, "v", "rician_k"), rd.number(rk, "g", "rician_k"),
                                      rd.number(rk, "h", "rician_k")};
        if (k[0] >= 0.0 && k[1] >= 0.0 && k[2] >= 0.0) {
            s.rician_k = k;
            mv = rician_to_nakagami(k[0]);
            mg = rician_to_nakagami(k[1]);
            mh = rician_to_nakagami(k[2]);
        } else {
            rd.problems.push_back("rician_k: factors must be nonnegative");
        }
    }

    const json& dj = j["distances"];
    rd.unknown_keys(dj, {"sd", "si", "di"}, "distances");
    Distances d{rd.number(dj, "sd", "distances"), rd.number(dj, "si", "distances"), rd.number(dj, "di", "distances")};
    if (!(d.sd > 0.0 && d.si > 0.0 && d.di > 0.0)) rd.problems.push_back("distances: must be positive");
    const json& pj = j["pathloss"];
    rd.unknown_keys(pj, {"zeta0_db", "exponent"}, "pathloss");
    PathLossModel pl{rd.number(pj, "zeta0_db", "pathloss"), rd.number(pj, "exponent", "pathloss")};

    const long long n_el = rd.integer(j["n_elements"], "n_elements");
    if (n_el < 1 || n_el > 1000000) rd.problems.push_back("n_elements: must be in 1..1000000");

    double eta0 = 0.9;
    std::vector<double> eta_list;
    if (j["eta"].is_array()) {
        eta_list = rd.numbers(j["eta"], "eta");
        if (!eta_list.empty()) eta0 = eta_list.front();
        if (static_cast<long long>(eta_list.size()) != n_el) {
            rd.problems.push_back("eta: array length must equal n_elements");
        }
    } else {
        eta0 = rd.number(j["eta"], "eta");
    }

    const int n_safe = n_el >= 1 && n_el <= 1000000 ? static_cast<int>(n_el) : 1;
    const bool shapes_ok = mv >= 0.5 && mg >= 0.5 && mh >= 0.5;
    if (!shapes_ok) rd.problems.push_back("fading: shape parameters must be at least 0.5");
    SystemConfig cfg;
    if (shapes_ok && d.sd > 0.0 && d.si > 0.0 && d.di > 0.0) {
        cfg = make_geometry_config(n_safe, mv, mg, mh, d, pl, eta0);
    }
    if (!eta_list.empty() && static_cast<long long>(eta_list.size()) == n_el) cfg.eta = eta_list;

    if (j.contains("zeta_db")) {
        const json& z = j["zeta_db"];
        rd.unknown_keys(z, {"v", "g", "h"}, "zeta_db");
        cfg.v.zeta = db(rd.number(z, "v", "zeta_db"));
        cfg.g.zeta = db(rd.number(z, "g", "zeta_db"));
        cfg.h.zeta = db(rd.number(z, "h", "zeta_db"));
    }
    cfg.gamma_bar_db = rd.number(j["gamma_bar_db"], "gamma_bar_db");
    cfg.gamma_th_db = rd.number(j["gamma_th_db"], "gamma_th_db");
    const json& mj = j["modulation"];
    rd.unknown_keys(mj, {"alpha", "beta"}, "modulation");
    cfg.modulation.alpha = rd.number(mj, "alpha", "modulation");
    cfg.modulation.beta = rd.number(mj, "beta", "modulation");
    if (!(cfg.modulation.alpha > 0.0 && cfg.modulation.beta > 0.0)) {
        rd.problems.push_back("modulation: alpha and beta must be positive");
    }
    if (shapes_ok) {
        for (const auto& p : cfg.problems()) rd.problems.push_back(p);
    }
    if (shapes_ok && needs_analytic_cdf(kind) && std::abs(2.0 * mv - std::round(2.0 * mv)) > 1e-12) {
        rd.problems.push_back("fading.m_v = " + tag(mv) +
                              ": the analytic SNR CDF needs m_v to be a multiple of 1/2 (0.5, 1, 1.5, ...); "
                              "round m_v or use the rate/ser experiments");
    }
    s.config = cfg;

    s.n_list = rd.integers(j["n_list"], "n_list");
    rd.increasing(s.n_list, "n_list", false);
    for (int n : s.n_list)
        if (n < 1) rd.problems.push_back("n_list: element counts must be positive");
    s.distance_cases = rd.numbers(j["distance_cases"], "distance_cases");
    rd.increasing(s.distance_cases, "distance_cases", kind != ExperimentKind::ser);
    for (double x : s.distance_cases)
        if (!(x > 0.0)) rd.problems.push_back("distance_cases: distances must be positive");
    if (j.contains("zeta_db") && (kind == ExperimentKind::ser || kind == ExperimentKind::sweep)) {
        const bool geom = kind == ExperimentKind::ser || j["sweep"].value("variable", "") == "d_irs";
        if (geom) rd.problems.push_back("zeta_db: explicit gains cannot be combined with distance sweeps");
    }
    s.bits = rd.integers(j["bits"], "bits");
    rd.increasing(s.bits, "bits", kind != ExperimentKind::quantization);
    for (int b : s.bits)
        if (b < 1 || b > 52) rd.problems.push_back("bits: must be in 1..52");
    s.gamma_grid_db = parse_grid(rd, j["gamma_bar_db_values"]);
    rd.increasing(s.gamma_grid_db, "gamma_bar_db_values", false);

    const json& sj = j["surface"];
    rd.unknown_keys(sj, {"aperture_m", "wavelength_m", "aoa_deg", "aod_deg"}, "surface");
    s.surface.aperture_m = rd.number(sj, "aperture_m", "surface");
    s.surface.wavelength_m = rd.number(sj, "wavelength_m", "surface");
    if (!(s.surface.aperture_m > 0.0 && s.surface.wavelength_m > 0.0)) {
        rd.problems.push_back("surface: aperture and wavelength must be positive");
    }
    s.surface.aoa = parse_angles(rd, sj.value("aoa_deg", json::object()), "surface.aoa_deg");
    s.surface.aod = parse_angles(rd, sj.value("aod_deg", json::object()), "surface.aod_deg");

    const json& sw = j["sweep"];
    rd.unknown_keys(sw, {"variable", "values"}, "sweep");
    if (!sw.contains("variable") || !sw["variable"].is_string() ||
        !kSweepVariables.count(sw["variable"].get<std::string>())) {
        rd.problems.push_back("sweep.variable: one of n_elements, gamma_bar_db, gamma_th_db, d_irs, eta");
    } else {
        s.sweep.variable = sw["variable"].get<std::string>();
    }
    s.sweep.values = rd.numbers(sw.value("values", json()), "sweep.values");
    rd.increasing(s.sweep.values, "sweep.values", false);
    for (double x : s.sweep.values) {
        if (s.sweep.variable == "n_elements" && (x < 1.0 || x != std::floor(x))) {
            rd.problems.push_back("sweep.values: element counts must be positive integers");
            break;
        }
        if (s.sweep.variable == "eta" && !(x > 0.0 && x <= 1.0)) {
            rd.problems.push_back("sweep.values: η_n ∈ (0,1]");
            break;
        }
        if (s.sweep.variable == "d_irs" && !(x > 0.0)) {
            rd.problems.push_back("sweep.values: distances must be positive");
            break;
        }
    }

    const json& sim = j["simulation"];
    rd.unknown_keys(sim, {"trials", "seed", "workers"}, "simulation");
    const long long trials = rd.integer(sim.value("trials", json(0)), "simulation.trials");
    if (trials < 0) rd.problems.push_back("simulation.trials: must be nonnegative");
    const json& seed = sim.value("seed", json(1));
    if (!seed.is_number_integer()) {
        rd.problems.push_back("simulation.seed: expected an unsigned integer");
    } else {
        s.plan.seed = seed.get<std::uint64_t>();
    }
    const long long workers = rd.integer(sim.value("workers", json(0)), "simulation.workers");
    if (workers < 0) rd.problems.push_back("simulation.workers: must be nonnegative");
    s.plan.workers = static_cast<int>(std::max(0LL, workers));
    s.plan.trials = static_cast<std::uint64_t>(std::max(0LL, trials));
    s.run_mc = s.plan.trials > 0;

    if (!rd.problems.empty()) throw ConfigError(rd.problems);
    return s;
}

json to_json(const ExperimentSpec& s)
{
    const auto& c = s.config;
    json j;
    j["n_elements"] = c.n_elements;
    const bool flat_eta =
        std::all_of(c.eta.begin(), c.eta.end(), [&](double e) { return e == c.eta.front(); }) && !c.eta.empty();
    j["eta"] = flat_eta ? json(c.eta.front()) : json(c.eta);
    j["fading"] = {{"m_v", c.v.m}, {"m_g", c.g.m}, {"m_h", c.h.m}};
    if (s.rician_k) j["rician_k"] = {{"v", (*s.rician_k)[0]}, {"g", (*s.rician_k)[1]}, {"h", (*s.rician_k)[2]}};
    j["distances"] = {{"sd", c.distances.sd}, {"si", c.distances.si}, {"di", c.distances.di}};
    j["pathloss"] = {{"zeta0_db", c.pathloss.zeta0_db}, {"exponent", c.pathloss.exponent}};
    // Gains follow from the geometry unless they were given explicitly.
    auto probe = make_geometry_config(1, c.v.m, c.g.m, c.h.m, c.distances, c.pathloss);
    if (probe.v.zeta != c.v.zeta || probe.g.zeta != c.g.zeta || probe.h.zeta != c.h.zeta) {
        j["zeta_db"] = {{"v", 10.0 * std::log10(c.v.zeta)},
                        {"g", 10.0 * std::log10(c.g.zeta)},
                        {"h", 10.0 * std::log10(c.h.zeta)}};
    }
    j["gamma_bar_db"] = c.gamma_bar_db;
    j["gamma_th_db"] = c.gamma_th_db;
    j["modulation"] = {{"alpha", c.modulation.alpha}, {"beta", c.modulation.beta}};
    j["n_list"] = s.n_list;
    j["distance_cases"] = s.distance_cases;
    j["bits"] = s.bits;
    j["gamma_bar_db_values"] = s.gamma_grid_db;
    j["surface"] = {{"aperture_m", s.surface.aperture_m},
                    {"wavelength_m", s.surface.wavelength_m},
                    {"aoa_deg", angles_json(s.surface.aoa)},
                    {"aod_deg", angles_json(s.surface.aod)}};
    j["sweep"] = {{"variable", s.sweep.variable}, {"values", s.sweep.values}};
    j["simulation"] = {{"trials", s.run_mc ? s.plan.trials : 0}, {"seed", s.plan.seed}, {"workers", s.plan.workers}};
    return j;
}

RunResult run_experiment(const ExperimentSpec& spec)
{
    const auto t0 = std::chrono::steady_clock::now();
    Writer w(spec.output_dir);
    switch (spec.kind) {
    case ExperimentKind::wdist: run_wdist(spec, w); break;
    case ExperimentKind::snrcdf: run_snrcdf(spec, w); break;
    case ExperimentKind::outage: run_outage(spec, w); break;
    case ExperimentKind::rate: run_rate(spec, w); break;
    case ExperimentKind::ser: run_ser(spec, w); break;
    case ExperimentKind::quantization: run_quantization(spec, w); break;
    case ExperimentKind::correlation: run_correlation(spec, w); break;
    case ExperimentKind::sweep: run_sweep(spec, w); break;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json m;
    m["kind"] = kind_name(spec.kind);
    m["config"] = to_json(spec);
    m["seed"] = spec.plan.seed;
    m["trials"] = spec.run_mc ? spec.plan.trials : 0;
    m["git_describe"] = git_describe();
    m["wall_clock_s"] = secs;
    json files = json::array();
    for (const auto& f : w.files) files.push_back(f.filename().string());
    m["files"] = files;
    m["summary"] = w.summary;

    RunResult r;
    r.files = w.files;
    r.manifest = spec.output_dir / "manifest.json";
    std::ofstream out(r.manifest);
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + r.manifest.string());
    return r;
}

}  // namespace irsperf
