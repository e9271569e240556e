#pragma once

#include <stdexcept>
#include <vector>

#include "quatkit/decomp/qsvd.hpp"
#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp {

namespace detail {

inline int numerical_rank(const std::vector<double>& s, double rtol) {
    if (s.empty()) return 0;
    const double cutoff = rtol * s.front();
    int rank = 0;
    for (double v : s)
        if (v > cutoff) ++rank;
    return rank;
}

}  // namespace detail

/// Orthonormal basis of the numerical right null space, A N_r ~ 0. Singular
/// values s_i <= rtol * s_1 are treated as zero; a full-rank input yields a
/// zero-column result with the correct row count. Wide inputs are padded with
/// zero rows so the thin decomposition covers every right direction.
inline QuatMatrix quat_null_right(const QuatMatrix& a, double rtol = 1e-10) {
    if (rtol <= 0.0) throw std::invalid_argument("quat_null_right: rtol must be positive");
    if (a.frobenius_norm() == 0.0) return QuatMatrix::identity(a.cols());
    QuatMatrix work = a;
    if (a.rows() < a.cols()) {
        work = QuatMatrix(a.cols(), a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) work.set(i, j, a.at(i, j));
    }
    const QsvdResult svd = classical_qsvd_full(work);
    const int rank = detail::numerical_rank(svd.s, rtol);
    std::vector<int> tail;
    for (int j = rank; j < static_cast<int>(svd.s.size()); ++j) tail.push_back(j);
    return select_columns(svd.V, tail);
}

/// Orthonormal basis of the numerical left null space, N_l^H A ~ 0.
inline QuatMatrix quat_null_left(const QuatMatrix& a, double rtol = 1e-10) {
    return quat_null_right(adjoint(a), rtol);
}

}  // namespace quatkit::decomp
