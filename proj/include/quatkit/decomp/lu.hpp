#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp {

struct LuResult {
    QuatMatrix L;           // m x N, unit diagonal, lower trapezoidal
    QuatMatrix U;           // N x n, upper trapezoidal; N = min(m, n)
    std::vector<int> perm;  // row permutation: row i of PA is row perm[i] of A
    bool singular = false;  // an exact zero pivot column was encountered
};

/// Quaternion LU factorization with partial pivoting, P A = L U. The pivot
/// row maximizes the quaternion modulus in the active column. Rectangular
/// inputs are supported. On an exactly zero pivot column the elimination
/// proceeds with zero multipliers and the result is flagged singular.
inline LuResult quaternion_lu(const QuatMatrix& a) {
    const int m = a.rows(), n = a.cols();
    const int N = std::min(m, n);
    QuatMatrix work = a;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    bool singular = false;

    for (int k = 0; k < N; ++k) {
        int piv = k;
        double best = work.at(k, k).norm2();
        for (int i = k + 1; i < m; ++i) {
            const double v = work.at(i, k).norm2();
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (piv != k) {
            std::swap(perm[k], perm[piv]);
            for (int j = 0; j < n; ++j) {
                const Quaternion t = work.at(k, j);
                work.set(k, j, work.at(piv, j));
                work.set(piv, j, t);
            }
        }
        const Quaternion pivot = work.at(k, k);
        if (pivot.norm2() == 0.0) {
            singular = true;
            continue;  // zero multipliers below this pivot
        }
        const Quaternion pinv = pivot.inverse();
        for (int i = k + 1; i < m; ++i) {
            const Quaternion mult = work.at(i, k) * pinv;
            work.set(i, k, mult);
            for (int j = k + 1; j < n; ++j) work.set(i, j, work.at(i, j) - mult * work.at(k, j));
        }
    }

    LuResult out;
    out.L = QuatMatrix(m, N);
    out.U = QuatMatrix(N, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < std::min(i, N); ++j) out.L.set(i, j, work.at(i, j));
    for (int i = 0; i < std::min(m, N); ++i) out.L.set(i, i, Quaternion::one());
    for (int i = 0; i < N; ++i)
        for (int j = i; j < n; ++j) out.U.set(i, j, work.at(i, j));
    out.perm = std::move(perm);
    out.singular = singular;
    return out;
}

/// Variant without an explicit permutation: A = L_perm * U where
/// L_perm = P^T L absorbs the pivoting.
inline std::pair<QuatMatrix, QuatMatrix> quaternion_lu_absorbed(const QuatMatrix& a) {
    LuResult lu = quaternion_lu(a);
    QuatMatrix lperm(a.rows(), lu.L.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < lu.L.cols(); ++j) lperm.set(lu.perm[i], j, lu.L.at(i, j));
    return {std::move(lperm), std::move(lu.U)};
}

/// Applies the permutation of an LU result to a right-hand side: (P b).
inline QuatMatrix apply_lu_permutation(const LuResult& lu, const QuatMatrix& b) {
    QuatMatrix out(b.rows(), b.cols());
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) out.set(i, j, b.at(lu.perm[i], j));
    return out;
}

}  // namespace quatkit::decomp
