#pragma once
// Initial wave packets: circular coherent states, displaced Gaussians at rest,
// and general displaced Gaussians with momentum, expanded over the truncated
// basis by Gaussian quadrature. Also spin attachment and text dump/load.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wplab/basis.hpp"
#include "wplab/special.hpp"

namespace wplab {

using Complex = std::complex<double>;

struct SpinDirection {
    double x = 0, y = 0, z = 1;

    SpinDirection() = default;
    SpinDirection(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        const double n = std::sqrt(x * x + y * y + z * z);
        if (std::abs(n - 1.0) > 1e-12)
            throw std::invalid_argument("SpinDirection: vector must have unit norm");
    }
};

// Thrown when an output file cannot be produced; the CLI maps it to its own
// I/O exit code, distinct from validation failures.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable after construction. Amplitudes are kept sorted by basis_order so
// that l.sigma partners are adjacent.
struct SpinorState {
    std::vector<std::pair<BasisIndex, Complex>> amplitudes;
    Truncation truncation;
    std::map<std::string, std::string> labels;

    double norm_squared() const {
        double s = 0;
        for (const auto& [idx, a] : amplitudes) s += std::norm(a);
        return s;
    }
};

namespace detail {

inline void sort_amplitudes(std::vector<std::pair<BasisIndex, Complex>>& amps) {
    std::sort(amps.begin(), amps.end(),
              [](const auto& a, const auto& b) { return basis_order(a.first, b.first); });
}

inline void renormalize(SpinorState& st) {
    const double n = std::sqrt(st.norm_squared());
    if (n <= 0) throw std::invalid_argument("state has zero norm");
    for (auto& [idx, a] : st.amplitudes) a /= n;
}

inline void check_tail(double retained, double tol, const char* who) {
    if (1.0 - retained > tol) {
        std::ostringstream os;
        os << who << ": truncation discards " << 1.0 - retained
           << " probability, above tail tolerance " << tol;
        throw std::invalid_argument(os.str());
    }
}

} // namespace detail

// Coherent circular packet: amplitudes on (n_r=0, l, m=l), |lambda_l|^2
// Poisson with mean N. The packet is the coherent state of the spherical
// raising mode -(a_x^+ + i a_y^+)/sqrt(2) with amplitude -sqrt(N), so the
// sign alternates with l; this places the density maximum at (+sqrt(N),0,0)
// with momentum +sqrt(N) y-hat. Spin is left unset (all entries spin-up
// placeholders for attach_spin).
inline SpinorState circular_coherent(double n_mean, const Truncation& trunc) {
    if (n_mean <= 0) throw std::invalid_argument("circular_coherent: N must be > 0");
    SpinorState st;
    st.truncation = trunc;
    double retained = 0;
    for (int l = 0; l <= trunc.l_max; ++l) {
        const double log_w = -n_mean + l * std::log(n_mean) - std::lgamma(l + 1.0);
        const double lam = ((l & 1) ? -1.0 : 1.0) * std::exp(0.5 * log_w);
        retained += lam * lam;
        st.amplitudes.push_back({BasisIndex{0, l, l, Spin::up}, Complex(lam, 0)});
    }
    detail::check_tail(retained, trunc.tail_tolerance, "circular_coherent");
    detail::sort_amplitudes(st.amplitudes);
    detail::renormalize(st);
    st.labels["constructor"] = "circular_coherent";
    return st;
}

// Product state |spatial> ⊗ |dir>, where |dir> is the spin-1/2 eigenstate
// along dir with eigenvalue +1/2: (cos(t/2), e^{i p} sin(t/2)).
inline SpinorState attach_spin(const SpinorState& spatial, const SpinDirection& dir) {
    const double theta = std::acos(std::clamp(dir.z, -1.0, 1.0));
    const double phi = std::atan2(dir.y, dir.x);
    const Complex chi_up(std::cos(theta / 2), 0);
    const Complex chi_dn = std::polar(std::sin(theta / 2), phi);
    SpinorState st;
    st.truncation = spatial.truncation;
    st.labels = spatial.labels;
    st.amplitudes.reserve(2 * spatial.amplitudes.size());
    for (const auto& [idx, a] : spatial.amplitudes) {
        if (idx.spin != Spin::up)
            throw std::invalid_argument("attach_spin: spatial state must be spin-agnostic (spin-up rows)");
        if (std::norm(a * chi_up) > 0) {
            BasisIndex up = idx;
            st.amplitudes.push_back({up, a * chi_up});
        }
        if (std::norm(a * chi_dn) > 0) {
            BasisIndex dn = idx;
            dn.spin = Spin::down;
            st.amplitudes.push_back({dn, a * chi_dn});
        }
    }
    detail::sort_amplitudes(st.amplitudes);
    return st;
}

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const double pi = std::numbers::pi;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        p0 = 1;
        p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1 - t * t) * dp * dp);
    }
}

// Retained (n_r, l) pairs for a truncation, shell-capped so the quadrature
// never evaluates functions whose weight is below the packet tail.
struct ShellSet {
    int l_max;
    int n_r_for(int l) const { return n_r_caps[static_cast<std::size_t>(l)]; }
    std::vector<int> n_r_caps;
};

inline ShellSet shell_set(const Truncation& trunc) {
    ShellSet s;
    s.l_max = trunc.l_max;
    s.n_r_caps.resize(static_cast<std::size_t>(trunc.l_max) + 1);
    for (int l = 0; l <= trunc.l_max; ++l)
        s.n_r_caps[static_cast<std::size_t>(l)] = trunc.n_r_max;
    return s;
}

} // namespace detail

// Unit-width Gaussian displaced by x0 with momentum kick p0,
// psi(r) = pi^{-3/4} exp(-(r-x0)^2/2) exp(i p0.r), projected onto the
// truncated basis by radial x polar Gauss-Legendre and a uniform azimuthal
// rule (exact for the finite e^{im phi} bandwidth). The quadrature's own
// self-consistency (norm of psi under the same rule) must hit 1e-10 before
// the projection is trusted; the retained amplitudes are then renormalized.
inline SpinorState general_gaussian(const std::array<double, 3>& x0,
                                    const std::array<double, 3>& p0,
                                    const Truncation& trunc) {
    const double pi = std::numbers::pi;
    const double x0n = std::sqrt(x0[0] * x0[0] + x0[1] * x0[1] + x0[2] * x0[2]);
    const double p0n = std::sqrt(p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2]);

    const bool axial = (x0[0] == 0 && x0[1] == 0 && p0[0] == 0 && p0[1] == 0 && p0[2] == 0);
    const int n_rad = 240;
    const int n_pol = 200;
    const double r_max = x0n + p0n + 10.0;

    std::vector<double> xr, wr, xc, wc;
    detail::gauss_legendre(n_rad, xr, wr);
    detail::gauss_legendre(n_pol, xc, wc);
    std::vector<double> rr(n_rad), rw(n_rad);
    for (int i = 0; i < n_rad; ++i) {
        rr[i] = (xr[i] + 1) * (r_max / 2);
        rw[i] = wr[i] * (r_max / 2) * rr[i] * rr[i];
    }

    const auto shells = detail::shell_set(trunc);
    SpinorState st;
    st.truncation = trunc;

    if (axial) {
        // Only m=0 survives; do the phi integral analytically (factor 2*pi).
        const double z0 = x0[2];
        std::vector<double> leg(static_cast<std::size_t>(trunc.l_max) + 1);
        std::vector<double> rad(static_cast<std::size_t>(trunc.n_r_max) + 1);
        // angular moments A_l(r) = sum_j w_j G(r, x_j) Phat_{l0}(x_j)
        std::vector<std::vector<double>> am(static_cast<std::size_t>(trunc.l_max) + 1,
                                            std::vector<double>(n_rad, 0.0));
        double quad_norm = 0;
        for (int j = 0; j < n_pol; ++j) {
            legendre_column(trunc.l_max, 0, xc[j], leg.data());
            for (int i = 0; i < n_rad; ++i) {
                const double g = std::pow(pi, -0.75) *
                    std::exp(-(rr[i] * rr[i] - 2 * rr[i] * xc[j] * z0 + z0 * z0) / 2);
                quad_norm += 2 * pi * g * g * wc[j] * rw[i];
                for (int l = 0; l <= trunc.l_max; ++l)
                    am[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] += g * leg[static_cast<std::size_t>(l)] * wc[j];
            }
        }
        if (std::abs(quad_norm - 1.0) > 1e-10)
            throw std::invalid_argument("general_gaussian: quadrature self-overlap check failed");
        double retained = 0;
        for (int l = 0; l <= trunc.l_max; ++l) {
            const int nrm = shells.n_r_for(l);
            std::vector<double> lam(static_cast<std::size_t>(nrm) + 1, 0.0);
            for (int i = 0; i < n_rad; ++i) {
                radial_column(nrm, l, rr[i], rad.data());
                const double f = am[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] * rw[i];
                for (int n = 0; n <= nrm; ++n) lam[static_cast<std::size_t>(n)] += rad[static_cast<std::size_t>(n)] * f;
            }
            for (int n = 0; n <= nrm; ++n) {
                const double v = 2 * pi * lam[static_cast<std::size_t>(n)];
                if (std::abs(v) < 1e-14) continue;
                retained += v * v;
                st.amplitudes.push_back({BasisIndex{n, l, 0, Spin::up}, Complex(v, 0)});
            }
        }
        detail::check_tail(retained, trunc.tail_tolerance, "general_gaussian");
    } else {
        // Azimuthal bandwidth of the integrand on a ring of radius r sin(th)
        // is ~ r(|x0|+|p0|); the uniform rule is exact once n_phi exceeds
        // twice (bandwidth + largest projected m) with margin.
        const int m_max = trunc.l_max;
        int n_phi = 2 * (m_max + static_cast<int>(std::ceil(r_max * (x0n + p0n)))) + 32;
        n_phi = std::max(n_phi, 64);

        std::vector<Complex> ring(static_cast<std::size_t>(n_phi));
        std::vector<double> cphi(static_cast<std::size_t>(n_phi)), sphi(static_cast<std::size_t>(n_phi));
        for (int k = 0; k < n_phi; ++k) {
            cphi[static_cast<std::size_t>(k)] = std::cos(2 * pi * k / n_phi);
            sphi[static_cast<std::size_t>(k)] = std::sin(2 * pi * k / n_phi);
        }
        // A[m + m_max][i*n_pol + j] = (1/n_phi) sum_k G e^{-im phi_k}
        const std::size_t n_ring = static_cast<std::size_t>(n_rad) * n_pol;
        std::vector<std::vector<Complex>> am(static_cast<std::size_t>(2 * m_max) + 1,
                                             std::vector<Complex>(n_ring, Complex(0, 0)));
        double quad_norm = 0;
        for (int i = 0; i < n_rad; ++i) {
            for (int j = 0; j < n_pol; ++j) {
                const double st_ = std::sqrt(std::max(0.0, 1 - xc[j] * xc[j]));
                const double rho = rr[i] * st_;
                const double z = rr[i] * xc[j];
                double gnorm_ring = 0;
                for (int k = 0; k < n_phi; ++k) {
                    const double px = rho * cphi[static_cast<std::size_t>(k)];
                    const double py = rho * sphi[static_cast<std::size_t>(k)];
                    const double dx = px - x0[0], dy = py - x0[1], dz = z - x0[2];
                    const double mag = std::pow(pi, -0.75) * std::exp(-(dx * dx + dy * dy + dz * dz) / 2);
                    const double phase = p0[0] * px + p0[1] * py + p0[2] * z;
                    ring[static_cast<std::size_t>(k)] = std::polar(mag, phase);
                    gnorm_ring += mag * mag;
                }
                quad_norm += gnorm_ring * (2 * pi / n_phi) * wc[j] * rw[i];
                // rotor DFT over the ring for all m at once
                const std::size_t cell = static_cast<std::size_t>(i) * n_pol + static_cast<std::size_t>(j);
                for (int k = 0; k < n_phi; ++k) {
                    const Complex g = ring[static_cast<std::size_t>(k)] * (1.0 / n_phi);
                    const Complex step = std::polar(1.0, -2 * pi * k / n_phi);
                    Complex rot(1, 0);
                    am[static_cast<std::size_t>(m_max)][cell] += g; // m = 0
                    for (int m = 1; m <= m_max; ++m) {
                        rot *= step;
                        am[static_cast<std::size_t>(m_max + m)][cell] += g * rot;
                        am[static_cast<std::size_t>(m_max - m)][cell] += g * std::conj(rot);
                    }
                }
            }
        }
        if (std::abs(quad_norm - 1.0) > 1e-10)
            throw std::invalid_argument("general_gaussian: quadrature self-overlap check failed");

        std::vector<double> leg(static_cast<std::size_t>(trunc.l_max) + 1);
        std::vector<double> rad(static_cast<std::size_t>(trunc.n_r_max) + 1);
        double retained = 0;
        for (int m = -m_max; m <= m_max; ++m) {
            const auto& amm = am[static_cast<std::size_t>(m_max + m)];
            const int ma = std::abs(m);
            // contract polar angle: C_l(i) = sum_j Phat_{l,|m|}(x_j) A_m(i,j) w_j
            std::vector<std::vector<Complex>> cl(static_cast<std::size_t>(trunc.l_max) + 1,
                                                 std::vector<Complex>(static_cast<std::size_t>(n_rad), Complex(0, 0)));
            for (int j = 0; j < n_pol; ++j) {
                legendre_column(trunc.l_max, ma, xc[j], leg.data());
                for (int i = 0; i < n_rad; ++i) {
                    const Complex v = amm[static_cast<std::size_t>(i) * n_pol + static_cast<std::size_t>(j)] * wc[j];
                    for (int l = ma; l <= trunc.l_max; ++l)
                        cl[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] += leg[static_cast<std::size_t>(l)] * v;
                }
            }
            const double neg_sign = (m < 0 && (ma & 1)) ? -1.0 : 1.0; // Y_{l,-m} = (-1)^m conj(Y_{lm})
            for (int l = ma; l <= trunc.l_max; ++l) {
                const int nrm = shells.n_r_for(l);
                std::vector<Complex> lam(static_cast<std::size_t>(nrm) + 1, Complex(0, 0));
                for (int i = 0; i < n_rad; ++i) {
                    radial_column(nrm, l, rr[i], rad.data());
                    const Complex f = cl[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] * rw[i];
                    for (int n = 0; n <= nrm; ++n) lam[static_cast<std::size_t>(n)] += rad[static_cast<std::size_t>(n)] * f;
                }
                for (int n = 0; n <= nrm; ++n) {
                    // <n l m|G> = int R Phat_{l|m|} e^{-im phi} G, so the
                    // signed-m azimuthal moment feeds in directly; the only
                    // extra factor is the (-1)^m from Y_{l,-m}.
                    const Complex v = 2.0 * pi * neg_sign * lam[static_cast<std::size_t>(n)];
                    if (std::norm(v) < 1e-26) continue;
                    retained += std::norm(v);
                    st.amplitudes.push_back({BasisIndex{n, l, m, Spin::up}, v});
                }
            }
        }
        detail::check_tail(retained, trunc.tail_tolerance, "general_gaussian");
    }

    detail::sort_amplitudes(st.amplitudes);
    detail::renormalize(st);
    st.labels["constructor"] = "general_gaussian";
    return st;
}

// Gaussian at rest displaced by sqrt(2N) along axis. With axis = z-hat only
// m = 0 amplitudes appear, which is what makes the vortex densities exactly
// azimuthally symmetric.
inline SpinorState linear_gaussian(double n_mean, const SpinDirection& axis, const Truncation& trunc) {
    if (n_mean <= 0) throw std::invalid_argument("linear_gaussian: N must be > 0");
    const double d = std::sqrt(2.0 * n_mean);
    auto st = general_gaussian({d * axis.x, d * axis.y, d * axis.z}, {0, 0, 0}, trunc);
    st.labels["constructor"] = "linear_gaussian";
    return st;
}

// ---- text dump/load ------------------------------------------------------
// Header: WPSTATE1 l_max n_r_max tail_tolerance n_labels {key value}...
// Then one line per amplitude: n_r l m spin re im   (spin: +1 up, -1 down).

inline void dump_state(const SpinorState& st, std::ostream& os) {
    os << "WPSTATE1 " << st.truncation.l_max << ' ' << st.truncation.n_r_max;
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.16e", st.truncation.tail_tolerance);
    os << buf << ' ' << st.labels.size();
    for (const auto& [k, v] : st.labels) os << ' ' << k << ' ' << v;
    os << '\n';
    for (const auto& [idx, a] : st.amplitudes) {
        std::snprintf(buf, sizeof buf, " %.16e %.16e", a.real(), a.imag());
        os << idx.n_r << ' ' << idx.l << ' ' << idx.m << ' '
           << (idx.spin == Spin::up ? 1 : -1) << buf << '\n';
    }
    if (!os) throw IoError("dump_state: write failed");
}

inline SpinorState load_state(std::istream& is) {
    std::string magic;
    is >> magic;
    if (magic != "WPSTATE1") throw std::invalid_argument("load_state: bad magic");
    SpinorState st;
    std::size_t n_labels = 0;
    is >> st.truncation.l_max >> st.truncation.n_r_max >> st.truncation.tail_tolerance >> n_labels;
    for (std::size_t i = 0; i < n_labels; ++i) {
        std::string k, v;
        is >> k >> v;
        st.labels[k] = v;
    }
    int n_r, l, m, spin;
    double re, im;
    while (is >> n_r >> l >> m >> spin >> re >> im) {
        BasisIndex idx{n_r, l, m, spin > 0 ? Spin::up : Spin::down};
        if (!st.truncation.contains(idx))
            throw std::invalid_argument("load_state: index outside truncation");
        st.amplitudes.push_back({idx, Complex(re, im)});
    }
    detail::sort_amplitudes(st.amplitudes);
    return st;
}

inline void dump_state_file(const SpinorState& st, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("dump_state: cannot open " + path);
    dump_state(st, f);
}

inline SpinorState load_state_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("load_state: cannot open " + path);
    return load_state(f);
}

} // namespace wplab
