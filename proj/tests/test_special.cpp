#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wplab/special.hpp"
#include "wplab/states.hpp"

using namespace wplab;

// Reference values computed independently at 40-digit precision from the
// closed forms sqrt(2 n!/Gamma(n+l+3/2)) e^{-r^2/2} r^l L_n^{(l+1/2)}(r^2).
TEST(Special, RadialReferenceValues) {
    EXPECT_NEAR(radial_wavefunction(0, 0, 0.5), 1.32573193288495906, 1e-13);
    EXPECT_NEAR(radial_wavefunction(1, 0, 1.0), 0.371980061034008785, 1e-13);
    EXPECT_NEAR(radial_wavefunction(3, 2, 1.7), -0.331180642274113572, 1e-13);
    EXPECT_NEAR(radial_wavefunction(5, 7, 3.2), 0.0972526259364891257, 1e-13);
    EXPECT_NEAR(radial_wavefunction(8, 3, 2.4), -0.184542327891366514, 1e-13);
    EXPECT_NEAR(radial_wavefunction(0, 12, 3.0), 0.201872892674242695, 1e-13);
}

TEST(Special, RadialAtOrigin) {
    std::vector<double> col(4);
    radial_column(3, 2, 0.0, col.data());
    for (const double v : col) EXPECT_EQ(v, 0.0);
    radial_column(3, 0, 0.0, col.data());
    EXPECT_NEAR(col[0], std::sqrt(2.0 / std::tgamma(1.5)), 1e-14);
    EXPECT_THROW(radial_column(3, 0, -0.1, col.data()), std::invalid_argument);
}

// Orthonormality under the r^2 dr measure, integrated by Gauss-Legendre.
TEST(Special, RadialOrthonormal) {
    std::vector<double> x, w;
    detail::gauss_legendre(200, x, w);
    const double r_max = 12.0;
    const int l = 3, n_max = 6;
    std::vector<std::vector<double>> cols;
    std::vector<double> weights;
    for (int i = 0; i < 200; ++i) {
        const double r = 0.5 * r_max * (x[static_cast<std::size_t>(i)] + 1);
        std::vector<double> col(n_max + 1);
        radial_column(n_max, l, r, col.data());
        cols.push_back(col);
        weights.push_back(0.5 * r_max * w[static_cast<std::size_t>(i)] * r * r);
    }
    for (int a = 0; a <= n_max; ++a)
        for (int b = a; b <= n_max; ++b) {
            double s = 0;
            for (std::size_t i = 0; i < cols.size(); ++i)
                s += weights[i] * cols[i][static_cast<std::size_t>(a)] *
                     cols[i][static_cast<std::size_t>(b)];
            EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-12) << "a=" << a << " b=" << b;
        }
}

TEST(Special, LegendreReferenceValues) {
    EXPECT_NEAR(legendre_normalized(0, 0, 0.77), 1.0 / std::sqrt(4 * std::numbers::pi), 1e-14);
    EXPECT_NEAR(legendre_normalized(2, 1, 0.3), -2.21089262283581611e-01, 1e-13);
    EXPECT_NEAR(legendre_normalized(7, 4, -0.55), -1.83109830594597789e-01, 1e-13);
    EXPECT_NEAR(legendre_normalized(1, 0, 0.9), 4.39742260712627897e-01, 1e-13);
}

TEST(Special, SphericalHarmonicReferenceValues) {
    const auto y21 = spherical_harmonic(2, 1, 1.1, 0.7);
    EXPECT_NEAR(y21.real(), -2.38861211849663885e-01, 1e-13);
    EXPECT_NEAR(y21.imag(), -2.01190023284301883e-01, 1e-13);
    const auto y3m2 = spherical_harmonic(3, -2, 2.0, 1.3);
    EXPECT_NEAR(y3m2.real(), 3.01319812541403220e-01, 1e-13);
    EXPECT_NEAR(y3m2.imag(), 1.81272978681749158e-01, 1e-13);
    const auto y55 = spherical_harmonic(5, 5, 0.9, -0.4);
    EXPECT_NEAR(y55.real(), 5.69644004502088339e-02, 1e-13);
    EXPECT_NEAR(y55.imag(), 1.24469485770498711e-01, 1e-13);
    const auto y40 = spherical_harmonic(4, 0, 0.6, 0.0);
    EXPECT_NEAR(y40.real(), -1.26435215650042343e-01, 1e-13);
    EXPECT_NEAR(y40.imag(), 0.0, 1e-15);
}

TEST(Special, ConjugationRelation) {
    for (int l : {1, 4, 9})
        for (int m = 1; m <= l; m += 2) {
            const auto yp = spherical_harmonic(l, m, 1.234, 0.456);
            const auto ym = spherical_harmonic(l, -m, 1.234, 0.456);
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            EXPECT_NEAR(ym.real(), sign * yp.real(), 1e-14);
            EXPECT_NEAR(ym.imag(), -sign * yp.imag(), 1e-14);
        }
}

// Unsoeld sum rule: sum_m |Y_lm|^2 = (2l+1)/(4 pi), angle-independent.
TEST(Special, AdditionTheorem) {
    for (const double theta : {0.3, 1.0, 2.5}) {
        const int l = 11;
        double s = 0;
        for (int m = -l; m <= l; ++m) s += std::norm(spherical_harmonic(l, m, theta, 0.9));
        EXPECT_NEAR(s, (2 * l + 1) / (4 * std::numbers::pi), 1e-12);
    }
}

// High-l stability spot check: values stay finite and the column norm of the
// Legendre functions obeys the sum rule at l = 120.
TEST(Special, HighOrderStability) {
    std::vector<double> col(121);
    double s = 0;
    for (int m = -120; m <= 120; ++m) {
        legendre_column(120, std::abs(m), 0.37, col.data());
        EXPECT_TRUE(std::isfinite(col[120]));
        s += col[120] * col[120];
    }
    EXPECT_NEAR(s, 241.0 / (4 * std::numbers::pi), 1e-9);
    EXPECT_TRUE(std::isfinite(radial_wavefunction(60, 120, 9.0)));
}
