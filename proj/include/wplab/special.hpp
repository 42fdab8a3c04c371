#pragma once
// Stable evaluation of the oscillator radial functions and spherical
// harmonics. Both use normalized recurrences whose terms stay O(1), so no
// raw factorials appear and there is no overflow up to l = 120, n_r = 60.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wplab {

// R_{n_r,l}(r) for n_r = 0..n_r_max at one radius, normalized so that
// integral R^2 r^2 dr = 1. Upward three-term recurrence in n_r on
// B_n = R_{n,l}(r), seeded with the log-domain closed form for B_0.
inline void radial_column(int n_r_max, int l, double r, double* out) {
    if (n_r_max < 0 || l < 0 || r < 0)
        throw std::invalid_argument("radial_column: bad arguments");
    const double x = r * r;
    const double alpha = l + 0.5;
    double log_b0 = 0.5 * std::log(2.0) - x / 2 - 0.5 * std::lgamma(l + 1.5);
    if (l > 0) {
        if (r == 0) {
            for (int n = 0; n <= n_r_max; ++n) out[n] = 0;
            return;
        }
        log_b0 += l * std::log(r);
    }
    out[0] = std::exp(log_b0);
    if (n_r_max == 0) return;
    out[1] = (alpha + 1 - x) / std::sqrt(alpha + 1) * out[0];
    for (int n = 1; n < n_r_max; ++n) {
        const double den = (n + 1.0) * (n + alpha + 1);
        out[n + 1] = (2 * n + alpha + 1 - x) / std::sqrt(den) * out[n]
                   - std::sqrt(n * (n + alpha) / den) * out[n - 1];
    }
}

inline double radial_wavefunction(int n_r, int l, double r) {
    std::vector<double> col(static_cast<std::size_t>(n_r) + 1);
    radial_column(n_r, l, r, col.data());
    return col[static_cast<std::size_t>(n_r)];
}

// Normalized associated Legendre column: out[l] = Phat_{l,m}(x) for
// l = m..l_max (entries below m are zeroed), with the Condon-Shortley sign
// inside the recurrence, normalized so that Y_{lm} = Phat_{lm}(cos th) e^{im phi}
// is orthonormal on the sphere. Requires m >= 0.
inline void legendre_column(int l_max, int m, double x, double* out) {
    if (m < 0 || l_max < m)
        throw std::invalid_argument("legendre_column: need 0 <= m <= l_max");
    if (x < -1 || x > 1) throw std::invalid_argument("legendre_column: |x| <= 1 required");
    for (int l = 0; l < m; ++l) out[l] = 0;
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = 1.0 / std::sqrt(4.0 * std::acos(-1.0));
    for (int k = 0; k < m; ++k)
        pmm *= -std::sqrt((2.0 * k + 3) / (2.0 * k + 2)) * s;
    out[m] = pmm;
    if (l_max == m) return;
    out[m + 1] = x * std::sqrt(2.0 * m + 3) * pmm;
    for (int l = m + 2; l <= l_max; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
        const double b = std::sqrt(((l - 1.0) * (l - 1) - static_cast<double>(m) * m) /
                                   (4.0 * (l - 1.0) * (l - 1) - 1));
        out[l] = a * (x * out[l - 1] - b * out[l - 2]);
    }
}

inline double legendre_normalized(int l, int m, double x) {
    std::vector<double> col(static_cast<std::size_t>(l) + 1);
    legendre_column(l, m, x, col.data());
    return col[static_cast<std::size_t>(l)];
}

// Orthonormal Y_{lm}(theta, phi), Condon-Shortley phase.
// Y_{l,-m} = (-1)^m conj(Y_{lm}).
inline std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || std::abs(m) > l)
        throw std::invalid_argument("spherical_harmonic: need |m| <= l");
    const int ma = std::abs(m);
    const double p = legendre_normalized(l, ma, std::cos(theta));
    std::complex<double> y = p * std::polar(1.0, ma * phi);
    if (m < 0) {
        y = std::conj(y);
        if (ma & 1) y = -y;
    }
    return y;
}

} // namespace wplab
