#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "quatkit/decomp/qr.hpp"
#include "quatkit/embeddings.hpp"
#include "quatkit/quat_matrix.hpp"
#include "quatkit/rng.hpp"

namespace quatkit::decomp {

struct QsvdResult {
    QuatMatrix U;            // m x k, orthonormal columns
    std::vector<double> s;   // k nonincreasing, nonnegative
    QuatMatrix V;            // n x k, orthonormal columns
    double group_spread = 0.0;     // worst relative spread inside a fourfold block
    bool spread_warning = false;   // spread exceeded 1e-8 relative
    bool reorthonormalized = false;
};

namespace detail {

/// SVD of the real-block expansion. The expansion carries each quaternion
/// singular value with multiplicity four; one representative column pair is
/// taken per block (indices 0, 4, 8, ...) and reinterpreted as quaternion
/// coordinates. The LAPACK-style pairing M v = sigma u makes the left/right
/// picks consistent, so the contracted triple reconstructs X.
inline QsvdResult qsvd_via_expansion(const QuatMatrix& x) {
    const int m = x.rows(), n = x.cols();
    const int k = std::min(m, n);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(real_expand(x), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::MatrixXd& ur = svd.matrixU();
    const Eigen::MatrixXd& vr = svd.matrixV();
    const Eigen::VectorXd& sr = svd.singularValues();

    QsvdResult out;
    out.U = QuatMatrix(m, k);
    out.V = QuatMatrix(n, k);
    out.s.resize(k);
    const double smax = sr.size() ? sr(0) : 0.0;
    for (int t = 0; t < k; ++t) {
        out.s[t] = sr(4 * t);
        const double spread = smax > 0.0 ? (sr(4 * t) - sr(4 * t + 3)) / smax : 0.0;
        out.group_spread = std::max(out.group_spread, spread);
        for (int i = 0; i < m; ++i)
            out.U.set(i, t, {ur(4 * i + 0, 4 * t), ur(4 * i + 1, 4 * t), ur(4 * i + 2, 4 * t), ur(4 * i + 3, 4 * t)});
        for (int i = 0; i < n; ++i)
            out.V.set(i, t, {vr(4 * i + 0, 4 * t), vr(4 * i + 1, 4 * t), vr(4 * i + 2, 4 * t), vr(4 * i + 3, 4 * t)});
    }
    out.spread_warning = out.group_spread > 1e-8;

    // Clustered spectra can contaminate quaternion orthonormality of the
    // contracted factors; restore it with a QR pass when that happens.
    const auto ortho_dev = [](const QuatMatrix& q) {
        return (adjoint(q) * q - QuatMatrix::identity(q.cols())).frobenius_norm();
    };
    if (k > 0 && (ortho_dev(out.U) > 1e-10 || ortho_dev(out.V) > 1e-10)) {
        out.U = qr_qua(out.U).Q;
        out.V = qr_qua(out.V).Q;
        out.reorthonormalized = true;
    }
    return out;
}

inline QsvdResult truncate(QsvdResult r, int rank) {
    if (rank >= static_cast<int>(r.s.size())) return r;
    std::vector<int> keep(rank);
    for (int t = 0; t < rank; ++t) keep[t] = t;
    r.U = select_columns(r.U, keep);
    r.V = select_columns(r.V, keep);
    r.s.resize(rank);
    return r;
}

}  // namespace detail

/// Full classical Q-SVD, X = U diag(s) V^H.
inline QsvdResult classical_qsvd_full(const QuatMatrix& x) { return detail::qsvd_via_expansion(x); }

/// Truncated classical Q-SVD with the leading rank triples.
inline QsvdResult classical_qsvd(const QuatMatrix& x, int rank) {
    if (rank < 1 || rank > std::min(x.rows(), x.cols()))
        throw std::invalid_argument("classical_qsvd: rank out of range");
    return detail::truncate(detail::qsvd_via_expansion(x), rank);
}

/// Randomized Q-SVD: real Gaussian sketch (w component only), power
/// iterations with QR re-orthonormalization, then a small core factorization
/// through the real expansion.
inline QsvdResult rand_qsvd(const QuatMatrix& x, int rank, int oversample, int n_iter, Rng& rng) {
    const int m = x.rows(), n = x.cols();
    const int l = rank + oversample;
    if (rank < 1 || l > std::min(m, n)) throw std::invalid_argument("rand_qsvd: sketch size exceeds dimensions");

    const QuatMatrix omega = gaussian_real_sketch(rng, n, l);
    QuatMatrix q = qr_qua(x * omega).Q;
    for (int it = 0; it < n_iter; ++it) {
        const QuatMatrix z = qr_qua(adjoint(x) * q).Q;
        q = qr_qua(x * z).Q;
    }
    QsvdResult core = detail::qsvd_via_expansion(adjoint(q) * x);  // l x n
    core.U = q * core.U;
    return detail::truncate(std::move(core), rank);
}

/// Pass-efficient Q-SVD: alternates single multiplications by X or X^H with
/// QR orthonormalization; the final product is factored instead of QR'd.
/// n_passes counts the multiplications, so quality grows with the budget.
inline QsvdResult pass_eff_qsvd(const QuatMatrix& x, int rank, int oversample, int n_passes, Rng& rng) {
    const int m = x.rows(), n = x.cols();
    const int l = rank + oversample;
    if (rank < 1 || l > std::min(m, n)) throw std::invalid_argument("pass_eff_qsvd: sketch size exceeds dimensions");
    if (n_passes < 2) throw std::invalid_argument("pass_eff_qsvd: n_passes must be at least 2");

    QuatMatrix y = x * gaussian_real_sketch(rng, n, l);  // pass 1, lives in H^{m x l}
    QuatMatrix q;                                        // basis from the previous pass
    for (int pass = 2; pass <= n_passes; ++pass) {
        q = qr_qua(y).Q;
        y = (pass % 2 == 0) ? adjoint(x) * q : x * q;
    }

    QsvdResult core = detail::qsvd_via_expansion(y);
    if (n_passes % 2 == 0) {
        // y = X^H q, X ~ q y^H = (q V_y) s U_y^H
        QsvdResult out;
        out.U = q * core.V;
        out.V = std::move(core.U);
        out.s = std::move(core.s);
        out.group_spread = core.group_spread;
        out.spread_warning = core.spread_warning;
        out.reorthonormalized = core.reorthonormalized;
        return detail::truncate(std::move(out), rank);
    }
    // y = X q, X ~ y q^H = U_y s (q V_y)^H
    core.V = q * core.V;
    return detail::truncate(std::move(core), rank);
}

/// Reconstruction U diag(s) V^H of a (possibly truncated) result.
inline QuatMatrix qsvd_reconstruct(const QsvdResult& r) {
    QuatMatrix us = r.U;
    for (int j = 0; j < us.cols(); ++j)
        for (int i = 0; i < us.rows(); ++i) us.set(i, j, us.at(i, j) * r.s[j]);
    return us * adjoint(r.V);
}

}  // namespace quatkit::decomp
