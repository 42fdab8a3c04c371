// Command-line front end: four experiment subcommands writing CSV and raster
// outputs. Exit codes: 0 success, 2 validation error, 3 I/O error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wplab/wplab.hpp"

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Times accept a unit suffix: "12.5" (absolute), "3Tcl" (classical periods,
// hydrogenic runs), "0.5Tls" (spin-orbit periods 2*pi, oscillator runs).
double parse_time(const std::string& text, double t_cl) {
    std::size_t pos = 0;
    double value = 0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse time value '" + text + "'");
    }
    const std::string suffix = text.substr(pos);
    if (suffix.empty()) return value;
    if (suffix == "Tcl") {
        if (!(t_cl > 0))
            throw std::invalid_argument("Tcl suffix is only valid for hydrogenic runs");
        return value * t_cl;
    }
    if (suffix == "Tls") return value * kTwoPi;
    throw std::invalid_argument("unknown time suffix '" + suffix + "' in '" + text + "'");
}

wplab::SpinDirection parse_axis(const std::string& text) {
    if (text == "x" || text == "+x") return {1, 0, 0};
    if (text == "-x") return {-1, 0, 0};
    if (text == "y" || text == "+y") return {0, 1, 0};
    if (text == "-y") return {0, -1, 0};
    if (text == "z" || text == "+z") return {0, 0, 1};
    if (text == "-z") return {0, 0, -1};
    double c[3] = {0, 0, 0};
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &c[0], &c[1], &c[2]) != 3)
        throw std::invalid_argument("cannot parse axis '" + text +
                                    "' (use x|y|z or three comma-separated numbers)");
    const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    if (!(n > 0)) throw std::invalid_argument("axis must be nonzero");
    return {c[0] / n, c[1] / n, c[2] / n};
}

struct CliOptions {
    // shared
    std::string out_dir = "out";
    long long seed = 0; // reserved; every run is deterministic
    // hydrogenic packet
    double n_mean_ryd = 60;
    double sigma = 1.5;
    int n_min = 50;
    int n_max = 70;
    std::string t_max_ryd = "50Tcl";
    std::string dt_ryd = "0.01Tcl";
    int taylor_order = 0;
    double threshold = 0.1;
    std::vector<std::string> times_ryd;
    int n_phi = 1024;
    // oscillator runs
    double n_mean_pend = 18;
    double n_mean_vortex = 8;
    std::string spin_axis_pend = "x";
    std::string spin_axis_vortex = "z";
    std::string axis_vortex = "z";
    bool freeze_orbital = true;
    double kappa = 1;
    double omega_ho = 10;
    std::string t_max_osc = "2Tls";
    std::string dt_osc = "0.0025Tls";
    std::vector<std::string> times_vortex;
    int grid_n = 96;
    double half_width = 0;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--out-dir", opt.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed,
                    "reserved for future stochastic features; all current runs are "
                    "deterministic")
        ->capture_default_str();
}

void add_packet(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--n-mean", opt.n_mean_ryd, "mean principal quantum number")
        ->capture_default_str();
    cmd->add_option("--sigma", opt.sigma, "Gaussian width of the weight profile")
        ->capture_default_str();
    cmd->add_option("--n-min", opt.n_min, "lowest level in the superposition window")
        ->capture_default_str();
    cmd->add_option("--n-max", opt.n_max, "highest level in the superposition window")
        ->capture_default_str();
}

int dispatch(const CLI::App& app, CliOptions& opt) {
    if (app.got_subcommand("rydberg-autocorr")) {
        wplab::RydbergAutocorrConfig cfg;
        cfg.n_mean = opt.n_mean_ryd;
        cfg.sigma = opt.sigma;
        cfg.n_min = opt.n_min;
        cfg.n_max = opt.n_max;
        const double t_cl = wplab::time_scales(cfg.n_mean).t_cl;
        cfg.t_max_tcl = parse_time(opt.t_max_ryd, t_cl) / t_cl;
        cfg.dt_tcl = parse_time(opt.dt_ryd, t_cl) / t_cl;
        cfg.taylor_order = opt.taylor_order;
        cfg.peak_threshold = opt.threshold;
        cfg.out_dir = opt.out_dir;
        const auto res = wplab::run_rydberg_autocorr(cfg);
        std::printf("wrote %zu samples and %zu peaks to %s\n", res.rows, res.peaks.size(),
                    cfg.out_dir.c_str());
        return 0;
    }
    if (app.got_subcommand("rydberg-angular")) {
        wplab::RydbergAngularConfig cfg;
        cfg.n_mean = opt.n_mean_ryd;
        cfg.sigma = opt.sigma;
        cfg.n_min = opt.n_min;
        cfg.n_max = opt.n_max;
        const double t_cl = wplab::time_scales(cfg.n_mean).t_cl;
        for (const auto& s : opt.times_ryd) cfg.times.push_back(parse_time(s, t_cl));
        cfg.n_phi = opt.n_phi;
        cfg.out_dir = opt.out_dir;
        const auto res = wplab::run_rydberg_angular(cfg);
        std::printf("wrote %zu angular profiles to %s\n", res.times.size(),
                    cfg.out_dir.c_str());
        return 0;
    }
    if (app.got_subcommand("pendulum")) {
        wplab::PendulumConfig cfg;
        cfg.n_mean = opt.n_mean_pend;
        cfg.spin_axis = parse_axis(opt.spin_axis_pend);
        cfg.freeze_orbital = opt.freeze_orbital;
        cfg.kappa = opt.kappa;
        cfg.omega_ho = opt.omega_ho;
        cfg.tau_max = parse_time(opt.t_max_osc, 0);
        cfg.dtau = parse_time(opt.dt_osc, 0);
        cfg.out_dir = opt.out_dir;
        const auto res = wplab::run_pendulum(cfg);
        std::printf("wrote %zu observable rows to %s\n", res.series.size(),
                    cfg.out_dir.c_str());
        return 0;
    }
    if (app.got_subcommand("vortex")) {
        wplab::VortexConfig cfg;
        cfg.n_mean = opt.n_mean_vortex;
        cfg.axis = parse_axis(opt.axis_vortex);
        cfg.spin_axis = parse_axis(opt.spin_axis_vortex);
        cfg.freeze_orbital = opt.freeze_orbital;
        cfg.kappa = opt.kappa;
        cfg.omega_ho = opt.omega_ho;
        for (const auto& s : opt.times_vortex) cfg.taus.push_back(parse_time(s, 0));
        cfg.grid_n = opt.grid_n;
        cfg.half_width = opt.half_width;
        cfg.out_dir = opt.out_dir;
        const auto res = wplab::run_vortex(cfg);
        std::printf("wrote %zu rasters and metrics to %s\n", res.taus.size(),
                    cfg.out_dir.c_str());
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"collapse/revival wave-packet laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file (flags override)");
    CliOptions opt;

    auto* autocorr = app.add_subcommand(
        "rydberg-autocorr", "recurrence probability P(t) of a hydrogenic packet");
    add_packet(autocorr, opt);
    autocorr->add_option("--t-max", opt.t_max_ryd, "series end (suffix Tcl allowed)")
        ->capture_default_str();
    autocorr->add_option("--dt", opt.dt_ryd, "sample step (suffix Tcl allowed)")
        ->capture_default_str();
    autocorr->add_option("--taylor-order", opt.taylor_order,
                         "also write a Taylor-phase series of this order (1..3; 0 = off)")
        ->capture_default_str();
    autocorr->add_option("--threshold", opt.threshold, "peak detection threshold")
        ->capture_default_str();
    add_common(autocorr, opt);

    auto* angular = app.add_subcommand(
        "rydberg-angular", "along-orbit angular density of a hydrogenic packet");
    add_packet(angular, opt);
    angular
        ->add_option("--times", opt.times_ryd,
                     "evaluation times (suffix Tcl allowed; default: the 4-, 3- and "
                     "2-fold fractional revival times)")
        ->delimiter(',');
    angular->add_option("--n-phi", opt.n_phi, "azimuthal sample count")
        ->capture_default_str();
    add_common(angular, opt);

    auto* pendulum = app.add_subcommand(
        "pendulum", "spin observables of a circular oscillator packet under l.sigma");
    pendulum->add_option("--n-mean", opt.n_mean_pend, "mean excitation of the packet")
        ->capture_default_str();
    pendulum->add_option("--spin-axis", opt.spin_axis_pend,
                         "initial spin direction (x|y|z or ax,ay,az)")
        ->capture_default_str();
    pendulum->add_flag("--freeze-orbital,!--no-freeze-orbital", opt.freeze_orbital,
                       "evolve with the coupling term only (default on)");
    pendulum->add_option("--kappa", opt.kappa, "coupling strength")->capture_default_str();
    pendulum->add_option("--omega", opt.omega_ho,
                         "oscillator frequency (used when orbital phases run)")
        ->capture_default_str();
    pendulum->add_option("--t-max", opt.t_max_osc, "end of the scaled-time grid (suffix Tls)")
        ->capture_default_str();
    pendulum->add_option("--dt", opt.dt_osc, "scaled-time step (suffix Tls)")
        ->capture_default_str();
    add_common(pendulum, opt);

    auto* vortex = app.add_subcommand(
        "vortex", "volumetric density rasters of a displaced Gaussian under l.sigma");
    vortex->add_option("--n-mean", opt.n_mean_vortex, "mean excitation of the packet")
        ->capture_default_str();
    vortex->add_option("--axis", opt.axis_vortex, "displacement direction (x|y|z or ax,ay,az)")
        ->capture_default_str();
    vortex->add_option("--spin-axis", opt.spin_axis_vortex,
                       "initial spin direction (x|y|z or ax,ay,az)")
        ->capture_default_str();
    vortex->add_flag("--freeze-orbital,!--no-freeze-orbital", opt.freeze_orbital,
                     "evolve with the coupling term only (default on)");
    vortex->add_option("--kappa", opt.kappa, "coupling strength")->capture_default_str();
    vortex->add_option("--omega", opt.omega_ho,
                       "oscillator frequency (used when orbital phases run)")
        ->capture_default_str();
    vortex
        ->add_option("--times", opt.times_vortex,
                     "raster times (suffix Tls allowed; default 0,pi/4,pi/2,3pi/4,pi)")
        ->delimiter(',');
    vortex->add_option("--grid", opt.grid_n, "cells per axis (max 512)")
        ->capture_default_str();
    vortex->add_option("--half-width", opt.half_width,
                       "box half-width in oscillator lengths (0 = automatic)")
        ->capture_default_str();
    add_common(vortex, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return dispatch(app, opt);
    } catch (const wplab::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
