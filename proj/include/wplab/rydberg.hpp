#pragma once
// Gaussian-weighted hydrogenic wave packets: recurrence probability (exact
// and Taylor-phase), the classical/revival/superrevival time scales, the
// along-orbit angular density, and peak detection on P(t) series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wplab {

struct RydbergPacket {
    double n_mean = 0;
    double sigma = 0;
    int n_min = 0;
    int n_max = 0;
    std::vector<double> weights; // w_n, normalized to sum 1 over the window

    double weight(int n) const { return weights[static_cast<std::size_t>(n - n_min)]; }
};

struct TimeScales {
    double t_cl = 0;
    double t_rev = 0;
    double t_sr = 0;
};

// w_n proportional to exp(-((n-N)/(2 sigma))^2)^2, renormalized over the window.
inline RydbergPacket gaussian_weights(double n_mean, double sigma, int n_min, int n_max) {
    if (n_min < 1 || n_min > n_max)
        throw std::invalid_argument("gaussian_weights: need 1 <= n_min <= n_max");
    if (!(sigma > 0)) throw std::invalid_argument("gaussian_weights: sigma must be > 0");
    RydbergPacket p;
    p.n_mean = n_mean;
    p.sigma = sigma;
    p.n_min = n_min;
    p.n_max = n_max;
    double sum = 0;
    for (int n = n_min; n <= n_max; ++n) {
        const double u = (n - n_mean) / (2 * sigma);
        const double w = std::exp(-2 * u * u);
        p.weights.push_back(w);
        sum += w;
    }
    for (auto& w : p.weights) w /= sum;
    return p;
}

// T_cl = 2 pi N^3, t_rev = (N/3 + 1/2) T_cl, t_sr = (N^2/4 + 1/2) T_cl.
inline TimeScales time_scales(double n_mean) {
    if (!(n_mean > 0)) throw std::invalid_argument("time_scales: N must be > 0");
    TimeScales ts;
    ts.t_cl = 2 * std::numbers::pi * n_mean * n_mean * n_mean;
    ts.t_rev = (n_mean / 3 + 0.5) * ts.t_cl;
    ts.t_sr = (n_mean * n_mean / 4 + 0.5) * ts.t_cl;
    return ts;
}

// P(t) = |sum_n w_n e^{i t / (2 n^2)}|^2 (hydrogenic E_n = -1/(2n^2), a.u.).
inline double autocorrelation_exact(const RydbergPacket& p, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("autocorrelation_exact: t must be finite");
    std::complex<double> a(0, 0);
    for (int n = p.n_min; n <= p.n_max; ++n)
        a += p.weight(n) * std::polar(1.0, t / (2.0 * n * n));
    return std::norm(a);
}

// Taylor-phase form: phases -2 pi [k t/T_cl + k^2 t/t_rev + k^3 t/t_sr]
// truncated at the requested order, k = n - N.
inline double autocorrelation_taylor(const RydbergPacket& p, double t, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("autocorrelation_taylor: order must be 1..3");
    const auto ts = time_scales(p.n_mean);
    std::complex<double> a(0, 0);
    for (int n = p.n_min; n <= p.n_max; ++n) {
        const double k = n - p.n_mean;
        double phase = k * t / ts.t_cl;
        if (order >= 2) phase += k * k * t / ts.t_rev;
        if (order >= 3) phase += k * k * k * t / ts.t_sr;
        a += p.weight(n) * std::polar(1.0, -2 * std::numbers::pi * phase);
    }
    return std::norm(a);
}

// Along-orbit density of the circular-state superposition: each n contributes
// the exact azimuthal factor e^{i(n-1) phi} of |n, l=n-1, m=n-1>. Normalized
// analytically so the phi integral is exactly 1.
inline std::vector<double> orbital_angular_density(const RydbergPacket& p, double t,
                                                   const std::vector<double>& phi_grid) {
    double wsum = 0;
    std::vector<double> c;
    for (int n = p.n_min; n <= p.n_max; ++n) {
        c.push_back(std::sqrt(p.weight(n)));
        wsum += p.weight(n);
    }
    std::vector<double> out;
    out.reserve(phi_grid.size());
    const double scale = 1.0 / (2 * std::numbers::pi * wsum);
    for (const double phi : phi_grid) {
        std::complex<double> a(0, 0);
        for (int n = p.n_min; n <= p.n_max; ++n)
            a += c[static_cast<std::size_t>(n - p.n_min)] *
                 std::polar(1.0, (n - 1.0) * phi + t / (2.0 * n * n));
        out.push_back(std::norm(a) * scale);
    }
    return out;
}

struct Peak {
    double t = 0;
    double value = 0;
};

// Strict local maxima of P(t) on a uniform grid over [t0, t1], above
// threshold. A sample is a peak when it strictly exceeds its left neighbor
// and the first differing value to its right is lower (plateau ties resolve
// to the earliest sample). dt must resolve T_cl/20.
inline std::vector<Peak> find_revival_peaks(const RydbergPacket& p, double t0, double t1,
                                            double dt, double threshold = 0.1) {
    if (!(dt > 0) || t1 <= t0)
        throw std::invalid_argument("find_revival_peaks: need t0 < t1 and dt > 0");
    const double t_cl = time_scales(p.n_mean).t_cl;
    if (dt > t_cl / 20)
        throw std::invalid_argument("find_revival_peaks: dt too coarse (must resolve T_cl/20)");
    const std::size_t n = static_cast<std::size_t>(std::floor((t1 - t0) / dt)) + 1;
    std::vector<double> val(n);
    for (std::size_t i = 0; i < n; ++i)
        val[i] = autocorrelation_exact(p, t0 + static_cast<double>(i) * dt);
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(val[i] > val[i - 1]) || val[i] < threshold) continue;
        std::size_t j = i + 1;
        while (j < n && val[j] == val[i]) ++j;
        if (j < n && val[j] < val[i])
            peaks.push_back({t0 + static_cast<double>(i) * dt, val[i]});
    }
    return peaks;
}

// Median of adjacent peak spacings; the robust "typical spacing" statistic.
inline double median_peak_spacing(const std::vector<Peak>& peaks) {
    if (peaks.size() < 2)
        throw std::invalid_argument("median_peak_spacing: need at least two peaks");
    std::vector<double> d;
    for (std::size_t i = 1; i < peaks.size(); ++i) d.push_back(peaks[i].t - peaks[i - 1].t);
    std::sort(d.begin(), d.end());
    const std::size_t n = d.size();
    return (n & 1) ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]);
}

} // namespace wplab
