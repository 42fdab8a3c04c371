#pragma once
// Factorized propagator: oscillator phases (U0) and the closed-form
// spin-orbit propagator U_ls = f + g (l.sigma), applied block by block.
// The two factors commute, so order is irrelevant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "wplab/basis.hpp"
#include "wplab/states.hpp"

namespace wplab {

struct EvolutionParams {
    double kappa = 1.0;    // spin-orbit strength; scaled time tau = kappa * t
    double omega_ho = 1.0; // oscillator angular frequency
    bool freeze_orbital = false; // disable U0
    bool freeze_ls = false;      // disable U_ls

    void validate() const {
        if (!freeze_ls && !(kappa > 0))
            throw std::invalid_argument("EvolutionParams: kappa must be > 0");
        if (!freeze_orbital && !(omega_ho > 0))
            throw std::invalid_argument("EvolutionParams: omega_ho must be > 0");
    }
};

struct LsCoefficients {
    Complex f;
    Complex g;
    int l = 0;
};

// Eigenphase form: on the l.sigma eigenvalues {l, -(l+1)} the propagator is
// the pure phases e^{-il tau} and e^{+i(l+1) tau}, so
//   f = ((l+1) phi_plus + l phi_minus) / (2l+1),  g = (phi_plus - phi_minus) / (2l+1).
// Algebraically identical to the cos/sin form with Omega = 2l+1, but immune
// to cancellation at large l. Exactly 2*pi periodic since 2l+1 is odd.
inline LsCoefficients ls_coefficients(int l, double tau) {
    if (l < 0) throw std::invalid_argument("ls_coefficients: l must be >= 0");
    const double om = 2.0 * l + 1.0;
    const Complex phi_plus = std::polar(1.0, -l * tau);
    const Complex phi_minus = std::polar(1.0, (l + 1.0) * tau);
    return {((l + 1.0) * phi_plus + static_cast<double>(l) * phi_minus) / om,
            (phi_plus - phi_minus) / om, l};
}

// U_ls(tau) = f + g (l.sigma) applied within each (n_r, l, m_j) block.
// Interior blocks rotate the pair {|l,m,up>, |l,m+1,down>}; absent partners
// are created (still inside the truncation since |m|,|m+1| <= l).
inline SpinorState apply_uls(const SpinorState& state, double tau) {
    std::vector<std::pair<BasisIndex, Complex>> out;
    out.reserve(state.amplitudes.size() * 2);
    const auto& amps = state.amplitudes;
    std::vector<LsCoefficients> coef(static_cast<std::size_t>(state.truncation.l_max) + 1);
    std::vector<bool> have(static_cast<std::size_t>(state.truncation.l_max) + 1, false);
    auto fg = [&](int l) -> const LsCoefficients& {
        if (!have[static_cast<std::size_t>(l)]) {
            coef[static_cast<std::size_t>(l)] = ls_coefficients(l, tau);
            have[static_cast<std::size_t>(l)] = true;
        }
        return coef[static_cast<std::size_t>(l)];
    };

    for (std::size_t i = 0; i < amps.size();) {
        const auto& [idx, a] = amps[i];
        const auto& c = fg(idx.l);
        const auto blk = ls_block(idx.l, idx.twice_mj());
        if (blk.dim == 1) {
            // stretched edge: exact eigenphase e^{-il tau}
            out.push_back({idx, (c.f + c.g * blk.diag_up) * a});
            ++i;
            continue;
        }
        // partner index within the same block
        const bool is_up = idx.spin == Spin::up;
        BasisIndex up = idx, dn = idx;
        if (is_up) {
            dn.m = idx.m + 1;
            dn.spin = Spin::down;
        } else {
            up.m = idx.m - 1;
            up.spin = Spin::up;
        }
        Complex a_up(0, 0), a_dn(0, 0);
        std::size_t consumed = 1;
        if (is_up) {
            a_up = a;
            if (i + 1 < amps.size() && amps[i + 1].first == dn) {
                a_dn = amps[i + 1].second;
                consumed = 2;
            }
        } else {
            a_dn = a;
        }
        const Complex b_up = (c.f + c.g * blk.diag_up) * a_up + c.g * blk.offdiag * a_dn;
        const Complex b_dn = c.g * blk.offdiag * a_up + (c.f + c.g * blk.diag_dn) * a_dn;
        out.push_back({up, b_up});
        out.push_back({dn, b_dn});
        i += consumed;
    }

    SpinorState res;
    res.truncation = state.truncation;
    res.labels = state.labels;
    detail::sort_amplitudes(out);
    // merge duplicates (an up-row created from a lone down-row may meet an
    // existing up-row only if the input was unsorted; sorted input makes
    // duplicates impossible, but merging keeps the function total)
    for (auto& e : out) {
        if (!res.amplitudes.empty() && res.amplitudes.back().first == e.first)
            res.amplitudes.back().second += e.second;
        else
            res.amplitudes.push_back(e);
    }
    return res;
}

// U0: diagonal phases e^{-i (2 n_r + l + 3/2) omega t}. Spin untouched.
inline SpinorState apply_u0(const SpinorState& state, double t, const EvolutionParams& params) {
    SpinorState res = state;
    for (auto& [idx, a] : res.amplitudes)
        a *= std::polar(1.0, -shell_energy(idx) * params.omega_ho * t);
    return res;
}

inline SpinorState evolve(const SpinorState& state, double t, const EvolutionParams& params) {
    params.validate();
    SpinorState res = state;
    if (!params.freeze_orbital) res = apply_u0(res, t, params);
    if (!params.freeze_ls) res = apply_uls(res, params.kappa * t);
    return res;
}

} // namespace wplab
