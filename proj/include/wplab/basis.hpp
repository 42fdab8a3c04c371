#pragma once
// Truncated spherical harmonic-oscillator x spin-1/2 basis: index type,
// shell energies, and the 2x2 block structure of l.sigma.

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace wplab {

enum class Spin : std::uint8_t { up = 0, down = 1 };

// One basis ket |n_r, l, m> ⊗ |spin>. Shell number is 2 n_r + l.
struct BasisIndex {
    int n_r = 0;
    int l = 0;
    int m = 0;
    Spin spin = Spin::up;

    // 2 m_j with m_j = m + s_z; pairs coupled by l.sigma share (l, twice_mj, n_r).
    int twice_mj() const { return 2 * m + (spin == Spin::up ? 1 : -1); }

    int shell() const { return 2 * n_r + l; }

    bool valid() const { return n_r >= 0 && l >= 0 && m >= -l && m <= l; }

    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

// Ordering groups l.sigma partners adjacently: |l,m,up> directly precedes
// |l,m+1,down| for every interior m_j.
inline bool basis_order(const BasisIndex& a, const BasisIndex& b) {
    if (a.l != b.l) return a.l < b.l;
    if (a.twice_mj() != b.twice_mj()) return a.twice_mj() < b.twice_mj();
    if (a.n_r != b.n_r) return a.n_r < b.n_r;
    return static_cast<int>(a.spin) < static_cast<int>(b.spin);
}

struct Truncation {
    int l_max = 0;
    int n_r_max = 0;
    double tail_tolerance = 1e-8;

    bool contains(const BasisIndex& idx) const {
        return idx.valid() && idx.l <= l_max && idx.n_r <= n_r_max;
    }
};

// Defaults sized from the Poisson weight tail of a packet with mean shell N.
inline Truncation default_truncation(double n_mean) {
    if (n_mean <= 0) throw std::invalid_argument("default_truncation: n_mean must be > 0");
    Truncation t;
    t.l_max = static_cast<int>(std::ceil(n_mean + 8.0 * std::sqrt(n_mean)));
    t.n_r_max = static_cast<int>(std::ceil(n_mean / 2.0 + 6.0 * std::sqrt(n_mean)));
    t.tail_tolerance = 1e-8;
    return t;
}

// Energy of a shell in units of hbar*omega.
inline double shell_energy(const BasisIndex& idx) {
    return 2.0 * idx.n_r + idx.l + 1.5;
}

// l.sigma restricted to fixed (l, m_j). Interior blocks act on the ordered
// pair {|l, m, up>, |l, m+1, down>} with m = m_j - 1/2:
//   [[ m, c ], [ c, -(m+1) ]],  c = sqrt((l-m)(l+m+1)),
// eigenvalues exactly {l, -(l+1)}. Edge blocks (|m_j| = l+1/2) are 1x1 with
// eigenvalue l.
struct LsBlock {
    int l = 0;
    int twice_mj = 0;
    int dim = 0;        // 1 or 2
    double diag_up = 0; // <up@m| l.sigma |up@m>   (or the 1x1 entry)
    double diag_dn = 0; // <down@m+1| l.sigma |down@m+1>
    double offdiag = 0;
};

inline LsBlock ls_block(int l, int twice_mj) {
    if (l < 0) throw std::invalid_argument("ls_block: l must be >= 0");
    if ((twice_mj & 1) == 0 || std::abs(twice_mj) > 2 * l + 1)
        throw std::invalid_argument("ls_block: |m_j| must be <= l + 1/2 and half-integer");
    LsBlock b;
    b.l = l;
    b.twice_mj = twice_mj;
    if (std::abs(twice_mj) == 2 * l + 1) {
        b.dim = 1;
        b.diag_up = static_cast<double>(l);
        return b;
    }
    const int m = (twice_mj - 1) / 2; // integer since twice_mj is odd
    b.dim = 2;
    b.diag_up = static_cast<double>(m);
    b.diag_dn = -static_cast<double>(m + 1);
    b.offdiag = std::sqrt(static_cast<double>(l - m) * static_cast<double>(l + m + 1));
    return b;
}

// Eigenvalue of the frequency operator on the l-subspace; always odd, which
// makes the spin-orbit propagator exactly 2*pi periodic in scaled time.
inline int omega_eigen(int l) {
    if (l < 0) throw std::invalid_argument("omega_eigen: l must be >= 0");
    return 2 * l + 1;
}

} // namespace wplab
