#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "wplab/brute_force.hpp"
#include "wplab/evolution.hpp"
#include "wplab/observables.hpp"
#include "wplab/states.hpp"

using namespace wplab;

namespace {

constexpr double kPi = std::numbers::pi;

SpinorState random_state(const Truncation& trunc, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    SpinorState st;
    st.truncation = trunc;
    for (const auto& idx : enumerate_basis(trunc))
        st.amplitudes.push_back({idx, Complex(dist(rng), dist(rng))});
    const double n = std::sqrt(st.norm_squared());
    for (auto& [idx, a] : st.amplitudes) a /= n;
    return st;
}

double state_distance(const SpinorState& a, const SpinorState& b) {
    const auto basis = enumerate_basis(a.truncation);
    const auto va = to_dense(a, basis);
    const auto vb = to_dense(b, basis);
    return (va - vb).norm();
}

} // namespace

TEST(Evolution, CoefficientClosedForm) {
    // l=3, tau=pi: phi+ = e^{-3 i pi} = -1, phi- = e^{4 i pi} = 1,
    // f = (4*(-1) + 3*1)/7 = -1/7, g = (-1-1)/7 = -2/7
    const auto c = ls_coefficients(3, kPi);
    EXPECT_NEAR(c.f.real(), -1.0 / 7.0, 1e-14);
    EXPECT_NEAR(c.f.imag(), 0.0, 1e-13);
    EXPECT_NEAR(c.g.real(), -2.0 / 7.0, 1e-14);
    EXPECT_NEAR(c.g.imag(), 0.0, 1e-13);
    // tau=0 is the identity
    const auto id = ls_coefficients(5, 0);
    EXPECT_NEAR(std::abs(id.f - Complex(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(id.g), 0.0, 1e-15);
}

TEST(Evolution, StretchedStatePhase) {
    // |l, m=l, up> is an exact coupling eigenstate with eigenvalue l: it
    // only aquires the phase e^{-i l tau}.
    SpinorState st;
    st.truncation = Truncation{6, 2, 1e-8};
    st.amplitudes.push_back({BasisIndex{1, 4, 4, Spin::up}, Complex(1, 0)});
    const double tau = 0.83;
    const auto out = apply_uls(st, tau);
    ASSERT_EQ(out.amplitudes.size(), 1u);
    const auto expected = std::polar(1.0, -4 * tau);
    EXPECT_NEAR(std::abs(out.amplitudes[0].second - expected), 0.0, 1e-14);
}

TEST(Evolution, ExactPeriodicity) {
    const auto st = random_state(Truncation{5, 3, 1e-8}, 11);
    const auto cycled = apply_uls(st, 2 * kPi);
    EXPECT_LT(state_distance(st, cycled), 1e-12);
}

TEST(Evolution, GroupProperty) {
    const auto st = random_state(Truncation{4, 2, 1e-8}, 7);
    const auto one = apply_uls(apply_uls(st, 0.7), 1.1);
    const auto two = apply_uls(st, 1.8);
    EXPECT_LT(state_distance(one, two), 1e-13);
}

TEST(Evolution, UnitarityAndNormDrift) {
    EvolutionParams params;
    auto st = random_state(Truncation{6, 3, 1e-8}, 23);
    for (int k = 0; k < 10; ++k) {
        st = evolve(st, 0.37, params);
        EXPECT_NEAR(st.norm_squared(), 1.0, 1e-12);
    }
}

TEST(Evolution, OrbitalAndCouplingCommute) {
    const auto st = random_state(Truncation{4, 2, 1e-8}, 3);
    EvolutionParams params;
    const double t = 1.3;
    const auto a = apply_uls(apply_u0(st, t, params), params.kappa * t);
    const auto b = apply_u0(apply_uls(st, params.kappa * t), t, params);
    EXPECT_LT(state_distance(a, b), 1e-13);
}

TEST(Evolution, OrbitalPhase) {
    SpinorState st;
    st.truncation = Truncation{4, 2, 1e-8};
    st.amplitudes.push_back({BasisIndex{1, 2, 0, Spin::up}, Complex(1, 0)});
    EvolutionParams params;
    params.omega_ho = 2.5;
    const double t = 0.6;
    const auto out = apply_u0(st, t, params);
    // shell energy 2*1 + 2 + 3/2 = 5.5, phase e^{-i w E t}
    const auto expected = std::polar(1.0, -2.5 * 5.5 * t);
    EXPECT_NEAR(std::abs(out.amplitudes[0].second - expected), 0.0, 1e-14);
}

TEST(Evolution, FreezeFlags) {
    const auto st = random_state(Truncation{3, 2, 1e-8}, 5);
    EvolutionParams frozen_orbital;
    frozen_orbital.freeze_orbital = true;
    const auto a = evolve(st, 0.9, frozen_orbital);
    const auto b = apply_uls(st, 0.9);
    EXPECT_LT(state_distance(a, b), 1e-14);
    EvolutionParams frozen_ls;
    frozen_ls.freeze_ls = true;
    const auto c = evolve(st, 0.9, frozen_ls);
    const auto d = apply_u0(st, 0.9, frozen_ls);
    EXPECT_LT(state_distance(c, d), 1e-14);
}

TEST(Evolution, MatchesDensePropagator) {
    const Truncation trunc{2, 1, 1e-8};
    const auto basis = enumerate_basis(trunc);
    EvolutionParams params;
    for (const double t : {0.4, 2.0}) {
        const auto u = brute_force_propagator(trunc, t, params);
        for (unsigned seed : {101u, 102u}) {
            const auto st = random_state(trunc, seed);
            const auto direct = to_dense(evolve(st, t, params), basis);
            const auto via_oracle = (u * to_dense(st, basis)).eval();
            EXPECT_LT((direct - via_oracle).norm(), 1e-12);
        }
    }
}

TEST(Evolution, ParamValidation) {
    EvolutionParams params;
    params.kappa = -1;
    EXPECT_THROW(params.validate(), std::invalid_argument);
    EvolutionParams bad_omega;
    bad_omega.omega_ho = 0;
    EXPECT_THROW(bad_omega.validate(), std::invalid_argument);
}
