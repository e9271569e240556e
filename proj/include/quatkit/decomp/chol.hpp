#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp {

/// Dense native quaternion Cholesky factorization A = L L^H for Hermitian
/// positive definite input, with L lower triangular and real positive
/// diagonal. The k-th pivot s_k = a_kk - sum_j |L_kj|^2 is real; a pivot at
/// or below tol (relative to the largest diagonal entry) reports the failing
/// index. An optional diagonal jitter is added before factoring.
inline QuatMatrix chol_quat_dense(const HermitianQuatMatrix& a, double jitter = 0.0, double tol = 1e-12) {
    const int n = a.n();
    QuatMatrix l(n, n);
    double diag_scale = 0.0;
    for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(a.at(i, i).w) + jitter);
    const double pivot_floor = tol * std::max(diag_scale, 1e-300);

    for (int k = 0; k < n; ++k) {
        double s = a.at(k, k).w + jitter;
        for (int j = 0; j < k; ++j) s -= l.at(k, j).norm2();
        if (s <= pivot_floor)
            throw std::domain_error("chol_quat_dense: matrix is not positive definite (pivot " + std::to_string(k) +
                                    ")");
        const double lkk = std::sqrt(s);
        l.set(k, k, Quaternion(lkk));
        for (int i = k + 1; i < n; ++i) {
            Quaternion t = a.at(i, k);
            for (int j = 0; j < k; ++j) t -= l.at(i, j) * l.at(k, j).conj();
            l.set(i, k, t / lkk);
        }
    }
    return l;
}

/// Convenience overload that first projects the input onto its Hermitian part.
inline QuatMatrix chol_quat_dense(const QuatMatrix& a, double jitter, bool hermitianize, double tol = 1e-12) {
    if (hermitianize) return chol_quat_dense(herm_part(a), jitter, tol);
    return chol_quat_dense(HermitianQuatMatrix(a), jitter, tol);
}

/// Solves A x = b from the factor L (A = L L^H) by forward substitution
/// L y = b followed by backward substitution L^H x = y. Supports single and
/// multiple right-hand sides.
inline QuatMatrix solve_chol_quat_dense(const QuatMatrix& l, const QuatMatrix& b) {
    const int n = l.rows();
    if (l.cols() != n || b.rows() != n) throw std::invalid_argument("solve_chol_quat_dense: shape mismatch");
    const int nrhs = b.cols();
    QuatMatrix y(n, nrhs);
    for (int c = 0; c < nrhs; ++c)
        for (int i = 0; i < n; ++i) {
            Quaternion t = b.at(i, c);
            for (int j = 0; j < i; ++j) t -= l.at(i, j) * y.at(j, c);
            y.set(i, c, t / l.at(i, i).w);
        }
    QuatMatrix x(n, nrhs);
    for (int c = 0; c < nrhs; ++c)
        for (int i = n - 1; i >= 0; --i) {
            Quaternion t = y.at(i, c);
            for (int j = i + 1; j < n; ++j) t -= l.at(j, i).conj() * x.at(j, c);
            x.set(i, c, t / l.at(i, i).w);
        }
    return x;
}

}  // namespace quatkit::decomp
