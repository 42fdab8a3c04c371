#pragma once
// Canned experiment drivers behind the CLI subcommands. Each one validates
// its config, runs the corresponding pipeline, writes CSV/raster outputs
// into an output directory, and returns the computed data for callers that
// want it in memory. Identical configs produce byte-identical files.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "wplab/density.hpp"
#include "wplab/evolution.hpp"
#include "wplab/observables.hpp"
#include "wplab/rydberg.hpp"
#include "wplab/states.hpp"

namespace wplab {

namespace detail {

inline void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir);
}

inline std::ofstream open_out(const std::string& dir, const std::string& name) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    return os;
}

inline void put_row2(std::ostream& os, double a, double b) {
    char row[80];
    std::snprintf(row, sizeof row, "%.16e,%.16e\n", a, b);
    os << row;
}

} // namespace detail

// ---- hydrogenic recurrence series -----------------------------------------

struct RydbergAutocorrConfig {
    double n_mean = 60;
    double sigma = 1.5;
    int n_min = 50;
    int n_max = 70;
    double t_max_tcl = 50;   // series end, units of T_cl
    double dt_tcl = 0.01;    // sample step, units of T_cl
    int taylor_order = 0;    // 0 = exact only, 1..3 adds a Taylor-phase series
    double peak_threshold = 0.1;
    std::string out_dir = ".";
};

struct RydbergAutocorrResult {
    RydbergPacket packet;
    TimeScales scales;
    std::size_t rows = 0;
    std::vector<Peak> peaks;
};

// Writes autocorr.csv (t_in_Tcl,P), peaks.csv (t_in_Tcl,P), and optionally
// autocorr_taylor.csv on the same grid.
inline RydbergAutocorrResult run_rydberg_autocorr(const RydbergAutocorrConfig& cfg) {
    if (!(cfg.t_max_tcl > 0) || !(cfg.dt_tcl > 0))
        throw std::invalid_argument("run_rydberg_autocorr: need t_max > 0 and dt > 0");
    if (cfg.taylor_order < 0 || cfg.taylor_order > 3)
        throw std::invalid_argument("run_rydberg_autocorr: taylor order must be 0..3");
    RydbergAutocorrResult res;
    res.packet = gaussian_weights(cfg.n_mean, cfg.sigma, cfg.n_min, cfg.n_max);
    res.scales = time_scales(cfg.n_mean);
    detail::ensure_dir(cfg.out_dir);
    const auto count =
        static_cast<std::size_t>(std::floor((cfg.t_max_tcl + 1e-12) / cfg.dt_tcl)) + 1;
    {
        auto os = detail::open_out(cfg.out_dir, "autocorr.csv");
        os << "t_in_Tcl,P\n";
        for (std::size_t k = 0; k < count; ++k) {
            const double t_tcl = static_cast<double>(k) * cfg.dt_tcl;
            detail::put_row2(os, t_tcl,
                             autocorrelation_exact(res.packet, t_tcl * res.scales.t_cl));
        }
        if (!os) throw IoError("run_rydberg_autocorr: write failure");
    }
    if (cfg.taylor_order > 0) {
        auto os = detail::open_out(cfg.out_dir, "autocorr_taylor.csv");
        os << "t_in_Tcl,P\n";
        for (std::size_t k = 0; k < count; ++k) {
            const double t_tcl = static_cast<double>(k) * cfg.dt_tcl;
            detail::put_row2(os, t_tcl,
                             autocorrelation_taylor(res.packet, t_tcl * res.scales.t_cl,
                                                    cfg.taylor_order));
        }
        if (!os) throw IoError("run_rydberg_autocorr: write failure");
    }
    res.rows = count;
    res.peaks = find_revival_peaks(res.packet, 0, cfg.t_max_tcl * res.scales.t_cl,
                                   cfg.dt_tcl * res.scales.t_cl, cfg.peak_threshold);
    {
        auto os = detail::open_out(cfg.out_dir, "peaks.csv");
        os << "t_in_Tcl,P\n";
        for (const auto& p : res.peaks) detail::put_row2(os, p.t / res.scales.t_cl, p.value);
        if (!os) throw IoError("run_rydberg_autocorr: write failure");
    }
    return res;
}

struct RydbergAngularConfig {
    double n_mean = 60;
    double sigma = 1.5;
    int n_min = 50;
    int n_max = 70;
    std::vector<double> times; // absolute; empty = {t_rev/4, t_rev/3, t_rev/2}
    int n_phi = 1024;
    std::string out_dir = ".";
};

struct RydbergAngularResult {
    RydbergPacket packet;
    std::vector<double> times;
    std::vector<double> phi;
    std::vector<std::vector<double>> densities;
};

// Writes angular_times.csv (index,t,t_in_Tcl) and one angular_###.csv
// (phi,density) per requested time.
inline RydbergAngularResult run_rydberg_angular(const RydbergAngularConfig& cfg) {
    if (cfg.n_phi < 8 || cfg.n_phi > (1 << 20))
        throw std::invalid_argument("run_rydberg_angular: n_phi out of range");
    RydbergAngularResult res;
    res.packet = gaussian_weights(cfg.n_mean, cfg.sigma, cfg.n_min, cfg.n_max);
    const auto scales = time_scales(cfg.n_mean);
    res.times = cfg.times;
    if (res.times.empty())
        res.times = {scales.t_rev / 4, scales.t_rev / 3, scales.t_rev / 2};
    res.phi.resize(static_cast<std::size_t>(cfg.n_phi));
    for (int k = 0; k < cfg.n_phi; ++k)
        res.phi[static_cast<std::size_t>(k)] = 2 * std::numbers::pi * k / cfg.n_phi;
    detail::ensure_dir(cfg.out_dir);
    auto manifest = detail::open_out(cfg.out_dir, "angular_times.csv");
    manifest << "index,t,t_in_Tcl\n";
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        const double t = res.times[i];
        res.densities.push_back(orbital_angular_density(res.packet, t, res.phi));
        char row[96];
        std::snprintf(row, sizeof row, "%zu,%.16e,%.16e\n", i, t, t / scales.t_cl);
        manifest << row;
        char name[32];
        std::snprintf(name, sizeof name, "angular_%03zu.csv", i);
        auto os = detail::open_out(cfg.out_dir, name);
        os << "phi,density\n";
        for (std::size_t k = 0; k < res.phi.size(); ++k)
            detail::put_row2(os, res.phi[k], res.densities[i][k]);
        if (!os) throw IoError("run_rydberg_angular: write failure");
    }
    if (!manifest) throw IoError("run_rydberg_angular: write failure");
    return res;
}

// ---- oscillator spin dynamics ----------------------------------------------

struct PendulumConfig {
    double n_mean = 18;
    SpinDirection spin_axis{1, 0, 0};
    bool freeze_orbital = true;
    double kappa = 1;
    double omega_ho = 10;            // used only when freeze_orbital is false
    double tau_max = 4 * std::numbers::pi;
    double dtau = std::numbers::pi / 200;
    std::string out_dir = ".";
};

struct PendulumResult {
    std::vector<SpinObservables> series;
    std::vector<double> autocorr; // |<psi(0)|psi(tau)>|^2 per row
};

// Writes observables.csv; the t column carries the scaled time tau.
inline PendulumResult run_pendulum(const PendulumConfig& cfg) {
    if (!(cfg.tau_max > 0) || !(cfg.dtau > 0))
        throw std::invalid_argument("run_pendulum: need tau_max > 0 and dtau > 0");
    EvolutionParams params;
    params.kappa = cfg.kappa;
    params.omega_ho = cfg.omega_ho;
    params.freeze_orbital = cfg.freeze_orbital;
    params.validate();
    const auto trunc = default_truncation(cfg.n_mean);
    const auto initial = attach_spin(circular_coherent(cfg.n_mean, trunc), cfg.spin_axis);
    detail::ensure_dir(cfg.out_dir);
    auto os = detail::open_out(cfg.out_dir, "observables.csv");
    write_observables_header(os);
    PendulumResult res;
    const auto count = static_cast<std::size_t>(std::floor((cfg.tau_max + 1e-12) / cfg.dtau)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
        const double tau = static_cast<double>(k) * cfg.dtau;
        const auto st = evolve(initial, tau / cfg.kappa, params);
        auto obs = measure(st, tau);
        const double p = std::norm(overlap(initial, st));
        write_observables_row(os, obs, p);
        res.series.push_back(obs);
        res.autocorr.push_back(p);
    }
    if (!os) throw IoError("run_pendulum: write failure");
    return res;
}

struct VortexConfig {
    double n_mean = 8;
    SpinDirection axis{0, 0, 1};      // displacement direction of the packet
    SpinDirection spin_axis{0, 0, 1};
    bool freeze_orbital = true;
    double kappa = 1;
    double omega_ho = 10;
    std::vector<double> taus;         // empty = {0, pi/4, pi/2, 3pi/4, pi}
    int grid_n = 96;
    double half_width = 0;            // 0 = sqrt(2N) + 4
    std::string out_dir = ".";
};

struct VortexResult {
    std::vector<double> taus;
    std::vector<TorusMetrics> metrics;
    std::vector<double> integrals;
    std::vector<std::string> raster_names;
};

// Writes density_###.raw rasters plus metrics.csv with one row per time.
inline VortexResult run_vortex(const VortexConfig& cfg) {
    EvolutionParams params;
    params.kappa = cfg.kappa;
    params.omega_ho = cfg.omega_ho;
    params.freeze_orbital = cfg.freeze_orbital;
    params.validate();
    VortexResult res;
    res.taus = cfg.taus;
    if (res.taus.empty()) {
        const double pi = std::numbers::pi;
        res.taus = {0, pi / 4, pi / 2, 3 * pi / 4, pi};
    }
    const auto trunc = default_truncation(cfg.n_mean);
    const auto initial = attach_spin(linear_gaussian(cfg.n_mean, cfg.axis, trunc), cfg.spin_axis);
    const double w = cfg.half_width > 0 ? cfg.half_width : default_half_width(cfg.n_mean);
    detail::ensure_dir(cfg.out_dir);
    auto metrics_csv = detail::open_out(cfg.out_dir, "metrics.csv");
    metrics_csv << "tau,global_max,max_x,max_y,max_z,ring_radius,on_axis_max,integral\n";
    for (std::size_t i = 0; i < res.taus.size(); ++i) {
        const double tau = res.taus[i];
        const auto st = evolve(initial, tau / cfg.kappa, params);
        DensityGrid grid = cube_grid(w, cfg.grid_n);
        evaluate_density(st, grid);
        const auto tm = torus_metrics(grid, {cfg.axis.x, cfg.axis.y, cfg.axis.z});
        const double integral = grid.integral();
        char name[32];
        std::snprintf(name, sizeof name, "density_%03zu.raw", i);
        write_raster_file((std::filesystem::path(cfg.out_dir) / name).string(), grid);
        char row[256];
        std::snprintf(row, sizeof row,
                      "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n", tau, tm.global_max,
                      tm.max_position[0], tm.max_position[1], tm.max_position[2],
                      tm.ring_radius, tm.on_axis_max, integral);
        metrics_csv << row;
        res.metrics.push_back(tm);
        res.integrals.push_back(integral);
        res.raster_names.push_back(name);
    }
    if (!metrics_csv) throw IoError("run_vortex: write failure");
    return res;
}

} // namespace wplab
