#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "wplab/evolution.hpp"
#include "wplab/observables.hpp"
#include "wplab/states.hpp"

using namespace wplab;

namespace {

SpinorState single(const BasisIndex& idx, const Truncation& trunc) {
    SpinorState st;
    st.truncation = trunc;
    st.amplitudes.push_back({idx, Complex(1, 0)});
    return st;
}

} // namespace

TEST(Observables, SpinOnKnownSpinors) {
    const Truncation trunc{3, 1, 1e-8};
    // (|up> + |down>)/sqrt(2) on the same spatial index -> spin along +x.
    // Rows follow basis_order: the down row (twice_mj = -1) comes first.
    SpinorState st;
    st.truncation = trunc;
    st.amplitudes.push_back({BasisIndex{0, 1, 0, Spin::down}, Complex(std::sqrt(0.5), 0)});
    st.amplitudes.push_back({BasisIndex{0, 1, 0, Spin::up}, Complex(std::sqrt(0.5), 0)});
    const auto s = spin_expectation(st);
    EXPECT_NEAR(s[0], 0.5, 1e-14);
    EXPECT_NEAR(s[1], 0.0, 1e-14);
    EXPECT_NEAR(s[2], 0.0, 1e-14);
    // (|up> + i |down>)/sqrt(2) -> spin along +y
    st.amplitudes[0].second = Complex(0, std::sqrt(0.5));
    const auto sy = spin_expectation(st);
    EXPECT_NEAR(sy[1], 0.5, 1e-14);
    // pure up -> +z/2
    const auto sz = spin_expectation(single({0, 2, 1, Spin::up}, trunc));
    EXPECT_NEAR(sz[2], 0.5, 1e-14);
}

TEST(Observables, OrbitalExpectation) {
    const Truncation trunc{3, 1, 1e-8};
    const auto top = single({0, 1, 1, Spin::up}, trunc);
    const auto l1 = orbital_expectation(top);
    EXPECT_NEAR(l1[0], 0.0, 1e-14);
    EXPECT_NEAR(l1[1], 0.0, 1e-14);
    EXPECT_NEAR(l1[2], 1.0, 1e-14);
    // (|1,0> + |1,1>)/sqrt(2): <l_x> = sqrt(2)/2, <l_y> = 0, <l_z> = 1/2
    SpinorState st;
    st.truncation = trunc;
    st.amplitudes.push_back({BasisIndex{0, 1, 0, Spin::up}, Complex(std::sqrt(0.5), 0)});
    st.amplitudes.push_back({BasisIndex{0, 1, 1, Spin::up}, Complex(std::sqrt(0.5), 0)});
    const auto l = orbital_expectation(st);
    EXPECT_NEAR(l[0], std::sqrt(2.0) / 2, 1e-14);
    EXPECT_NEAR(l[1], 0.0, 1e-14);
    EXPECT_NEAR(l[2], 0.5, 1e-14);
    // (|1,0> - i|1,1>)/sqrt(2): <l_y> = sqrt(2)/2
    st.amplitudes[1].second = Complex(0, -std::sqrt(0.5));
    const auto ly = orbital_expectation(st);
    EXPECT_NEAR(ly[0], 0.0, 1e-14);
    EXPECT_NEAR(ly[1], std::sqrt(2.0) / 2, 1e-14);
}

TEST(Observables, PurityAndTopEigenvalue) {
    const auto pure = attach_spin(circular_coherent(5, default_truncation(5)), {0, 1, 0});
    EXPECT_NEAR(spin_purity(pure), 1.0, 1e-13);
    EXPECT_NEAR(spin_top_eigenvalue(pure), 1.0, 1e-13);
    // orthogonal spatial wavefunctions for the two spin components -> the
    // reduced spin state is an even mixture: purity 1/2, top eigenvalue 1/2
    SpinorState mixed;
    mixed.truncation = Truncation{3, 1, 1e-8};
    mixed.amplitudes.push_back({BasisIndex{0, 1, 1, Spin::up}, Complex(std::sqrt(0.5), 0)});
    mixed.amplitudes.push_back({BasisIndex{0, 3, 0, Spin::down}, Complex(std::sqrt(0.5), 0)});
    EXPECT_NEAR(spin_purity(mixed), 0.5, 1e-14);
    EXPECT_NEAR(spin_top_eigenvalue(mixed), 0.5, 1e-14);
    // purity identity: Tr rho^2 = 1/2 + 2|<s>|^2
    const auto s = spin_expectation(mixed);
    const double s2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
    EXPECT_NEAR(spin_purity(mixed), 0.5 + 2 * s2, 1e-14);
}

TEST(Observables, OverlapBasics) {
    const Truncation trunc{4, 2, 1e-8};
    const auto a = single({0, 2, 1, Spin::up}, trunc);
    const auto b = single({0, 2, 1, Spin::down}, trunc);
    EXPECT_NEAR(std::abs(overlap(a, a)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(overlap(a, b)), 0.0, 1e-15);
    // conjugate symmetry
    SpinorState c;
    c.truncation = trunc;
    c.amplitudes.push_back({BasisIndex{0, 2, 1, Spin::up}, Complex(0.6, 0.8)});
    const auto ab = overlap(a, c);
    const auto ba = overlap(c, a);
    EXPECT_NEAR(std::abs(ab - std::conj(ba)), 0.0, 1e-15);
    const auto other = single({0, 1, 0, Spin::up}, Truncation{9, 3, 1e-8});
    EXPECT_THROW(overlap(a, other), std::invalid_argument);
}

TEST(Observables, SpinInvariantUnderOrbitalPhases) {
    auto st = attach_spin(circular_coherent(6, default_truncation(6)), {1, 0, 0});
    EvolutionParams params;
    params.freeze_ls = true;
    params.omega_ho = 3.7;
    const auto evolved = evolve(st, 1.9, params);
    const auto s0 = spin_expectation(st);
    const auto s1 = spin_expectation(evolved);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(s1[k], s0[k], 1e-13);
    EXPECT_NEAR(spin_purity(evolved), spin_purity(st), 1e-13);
}

TEST(Observables, MeasureAndCsvRow) {
    const auto st = attach_spin(circular_coherent(4, default_truncation(4)), {0, 0, 1});
    const auto obs = measure(st, 2.5);
    EXPECT_DOUBLE_EQ(obs.time, 2.5);
    EXPECT_NEAR(obs.norm, 1.0, 1e-13);
    EXPECT_NEAR(obs.s[2], 0.5, 1e-13);
    EXPECT_NEAR(obs.l[2], 4.0, 1e-6);
    std::stringstream ss;
    write_observables_header(ss);
    write_observables_row(ss, obs, 1.0);
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "t,sx,sy,sz,lx,ly,lz,purity,norm,P");
    std::getline(ss, line);
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
    EXPECT_EQ(line.substr(0, 22), "2.5000000000000000e+00");
}
