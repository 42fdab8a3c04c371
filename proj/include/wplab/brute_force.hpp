#pragma once
// Dense verification oracle: exponentiates H = omega*H0 + kappa*(l.sigma)
// over a whole truncated basis by self-adjoint eigendecomposition. Exists
// for tests only; the production path never forms a global matrix.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <tuple>
#include <vector>

#include "wplab/basis.hpp"
#include "wplab/evolution.hpp"
#include "wplab/states.hpp"

namespace wplab {

// All indices of a truncation in basis_order.
inline std::vector<BasisIndex> enumerate_basis(const Truncation& trunc) {
    std::vector<BasisIndex> v;
    for (int l = 0; l <= trunc.l_max; ++l)
        for (int m = -l; m <= l; ++m)
            for (int n_r = 0; n_r <= trunc.n_r_max; ++n_r) {
                v.push_back({n_r, l, m, Spin::up});
                v.push_back({n_r, l, m, Spin::down});
            }
    std::sort(v.begin(), v.end(), basis_order);
    return v;
}

inline Eigen::MatrixXcd brute_force_propagator(const Truncation& trunc, double t,
                                               const EvolutionParams& params) {
    params.validate();
    const auto basis = enumerate_basis(trunc);
    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
    if (dim > 2000)
        throw std::invalid_argument("brute_force_propagator: basis dimension above cap 2000");

    std::map<std::tuple<int, int, int, int>, Eigen::Index> lookup;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& b = basis[static_cast<std::size_t>(i)];
        lookup[{b.n_r, b.l, b.m, b.spin == Spin::up ? 0 : 1}] = i;
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& b = basis[static_cast<std::size_t>(i)];
        if (!params.freeze_orbital) h(i, i) += params.omega_ho * shell_energy(b);
        if (!params.freeze_ls) {
            const auto blk = ls_block(b.l, b.twice_mj());
            if (blk.dim == 1) {
                h(i, i) += params.kappa * blk.diag_up;
            } else if (b.spin == Spin::up) {
                h(i, i) += params.kappa * blk.diag_up;
                const auto j = lookup.at({b.n_r, b.l, b.m + 1, 1});
                h(i, j) += params.kappa * blk.offdiag;
                h(j, i) += params.kappa * blk.offdiag;
            } else {
                h(i, i) += params.kappa * blk.diag_dn;
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        phases(k) = std::polar(1.0, -t * vals(k));
    return (vecs.cast<std::complex<double>>() * phases.asDiagonal() *
            vecs.transpose().cast<std::complex<double>>());
}

// State as a dense coefficient vector over enumerate_basis(trunc).
inline Eigen::VectorXcd to_dense(const SpinorState& st, const std::vector<BasisIndex>& basis) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    std::size_t cursor = 0;
    for (const auto& [idx, a] : st.amplitudes) {
        while (cursor < basis.size() && !(basis[cursor] == idx)) ++cursor;
        if (cursor == basis.size())
            throw std::invalid_argument("to_dense: amplitude outside enumerated basis");
        v(static_cast<Eigen::Index>(cursor)) = a;
    }
    return v;
}

} // namespace wplab
