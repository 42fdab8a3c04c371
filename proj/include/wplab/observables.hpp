#pragma once
// Expectation values, the reduced 2x2 spin density matrix and its purity,
// and state overlaps.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <ostream>

#include "wplab/states.hpp"

namespace wplab {

struct SpinObservables {
    std::array<double, 3> s{0, 0, 0};
    std::array<double, 3> l{0, 0, 0};
    double purity = 1;
    double norm = 1;
    double time = 0;
};

// Amplitude on one index or 0; binary search on the sorted list.
inline Complex amplitude_at(const SpinorState& st, const BasisIndex& idx) {
    const auto it = std::lower_bound(
        st.amplitudes.begin(), st.amplitudes.end(), idx,
        [](const auto& entry, const BasisIndex& key) { return basis_order(entry.first, key); });
    if (it != st.amplitudes.end() && it->first == idx) return it->second;
    return Complex(0, 0);
}

// <s> from the reduced spin density matrix. With z = sum conj(a_up) a_dn over
// matching spatial indices: <s_x> = Re z, <s_y> = Im z (so a (|+>+i|->)/sqrt2
// spinor gives +1/2), <s_z> = (||up||^2 - ||down||^2)/2.
inline std::array<double, 3> spin_expectation(const SpinorState& st) {
    Complex z(0, 0);
    double nup = 0, ndn = 0;
    for (const auto& [idx, a] : st.amplitudes) {
        if (idx.spin == Spin::up) {
            nup += std::norm(a);
            BasisIndex partner = idx;
            partner.spin = Spin::down;
            z += std::conj(a) * amplitude_at(st, partner);
        } else {
            ndn += std::norm(a);
        }
    }
    return {z.real(), z.imag(), 0.5 * (nup - ndn)};
}

// <l> via the ladder action l+ |l m> = sqrt((l-m)(l+m+1)) |l m+1>:
// <l_x> = Re<l+>, <l_y> = Im<l+>, <l_z> = sum m |a|^2.
inline std::array<double, 3> orbital_expectation(const SpinorState& st) {
    Complex splus(0, 0);
    double lz = 0;
    for (const auto& [idx, a] : st.amplitudes) {
        lz += idx.m * std::norm(a);
        if (idx.m < idx.l) {
            BasisIndex raised = idx;
            raised.m = idx.m + 1;
            const double c = std::sqrt(static_cast<double>(idx.l - idx.m) *
                                       static_cast<double>(idx.l + idx.m + 1));
            splus += std::conj(amplitude_at(st, raised)) * c * a;
        }
    }
    return {splus.real(), splus.imag(), lz};
}

// rho = [[<up|up>, conj(z)], [z, <dn|dn>]] with z = sum conj(a_up) a_dn;
// purity = Tr rho^2 = 1/2 + 2 |<s>|^2.
struct SpinDensityMatrix {
    double p_up = 0, p_dn = 0;
    Complex coherence; // <Psi_up | Psi_dn>
    double purity() const {
        const double tr2 = p_up * p_up + p_dn * p_dn + 2 * std::norm(coherence);
        return tr2;
    }
};

inline SpinDensityMatrix spin_density_matrix(const SpinorState& st) {
    SpinDensityMatrix rho;
    Complex z(0, 0);
    for (const auto& [idx, a] : st.amplitudes) {
        if (idx.spin == Spin::up) {
            rho.p_up += std::norm(a);
            BasisIndex partner = idx;
            partner.spin = Spin::down;
            z += std::conj(a) * amplitude_at(st, partner);
        } else {
            rho.p_dn += std::norm(a);
        }
    }
    rho.coherence = z;
    return rho;
}

inline double spin_purity(const SpinorState& st) { return spin_density_matrix(st).purity(); }

// Largest eigenvalue of the reduced spin matrix: 1/2 + |Bloch vector| for a
// trace-1 two-level state. Equals the best product-state fidelity of st.
inline double spin_top_eigenvalue(const SpinorState& st) {
    const auto s = spin_expectation(st);
    return 0.5 + std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
}

inline Complex overlap(const SpinorState& a, const SpinorState& b) {
    if (a.truncation.l_max != b.truncation.l_max || a.truncation.n_r_max != b.truncation.n_r_max)
        throw std::invalid_argument("overlap: states use different truncations");
    Complex s(0, 0);
    // both amplitude lists are sorted; single merge pass
    std::size_t i = 0, j = 0;
    while (i < a.amplitudes.size() && j < b.amplitudes.size()) {
        const auto& ia = a.amplitudes[i].first;
        const auto& ib = b.amplitudes[j].first;
        if (ia == ib) {
            s += std::conj(a.amplitudes[i].second) * b.amplitudes[j].second;
            ++i;
            ++j;
        } else if (basis_order(ia, ib)) {
            ++i;
        } else {
            ++j;
        }
    }
    return s;
}

inline SpinObservables measure(const SpinorState& st, double time = 0) {
    SpinObservables o;
    o.s = spin_expectation(st);
    o.l = orbital_expectation(st);
    o.purity = spin_purity(st);
    o.norm = std::sqrt(st.norm_squared());
    o.time = time;
    return o;
}

// CSV row formatting shared by the experiment drivers; 17 significant digits.
inline void write_observables_header(std::ostream& os) {
    os << "t,sx,sy,sz,lx,ly,lz,purity,norm,P\n";
}

inline void write_observables_row(std::ostream& os, const SpinObservables& o, double p_auto) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n",
                  o.time, o.s[0], o.s[1], o.s[2], o.l[0], o.l[1], o.l[2], o.purity, o.norm,
                  p_auto);
    os << buf;
}

} // namespace wplab
