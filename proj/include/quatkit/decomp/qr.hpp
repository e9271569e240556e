#pragma once

#include <Eigen/Dense>

#include "quatkit/embeddings.hpp"
#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp {

struct QrResult {
    QuatMatrix Q;
    QuatMatrix R;
};

/// Thin QR factorization of a quaternion matrix through the real-block
/// embedding: Householder QR of real_expand(X), then contraction of both
/// factors. For m >= n, Q is m x n with Q^H Q = I and R is n x n upper
/// triangular; for m < n, Q is m x m unitary and R is m x n upper trapezoidal.
///
/// The diagonal of the real R factor is sign-normalized before contraction;
/// with a real positive diagonal the expanded factors are exactly the
/// embeddings of the quaternion ones, so the contraction is structure-exact.
inline QrResult qr_qua(const QuatMatrix& x) {
    const int m = x.rows(), n = x.cols();
    const int k = m >= n ? n : m;  // quaternion column count of Q
    const Eigen::MatrixXd big = real_expand(x);

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(big);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(4 * m, 4 * k);
    Eigen::MatrixXd r = qr.matrixQR().topRows(4 * k).triangularView<Eigen::Upper>();

    for (int c = 0; c < 4 * k; ++c) {
        if (r(c, c) < 0.0) {
            r.row(c) = -r.row(c);
            q.col(c) = -q.col(c);
        }
    }
    return {real_contract(q), real_contract(r)};
}

}  // namespace quatkit::decomp
