#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

#include "quatkit/quat_matrix.hpp"

namespace quatkit {

/// 4x4 left-regular representation of a single quaternion. Columns are the
/// coordinates of q*1, q*i, q*j, q*k, so the block map is an algebra
/// homomorphism and transposition realises conjugation.
inline void write_realp_block(Eigen::MatrixXd& m, int r0, int c0, const Quaternion& q) {
    m(r0 + 0, c0 + 0) = q.w; m(r0 + 0, c0 + 1) = -q.x; m(r0 + 0, c0 + 2) = -q.y; m(r0 + 0, c0 + 3) = -q.z;
    m(r0 + 1, c0 + 0) = q.x; m(r0 + 1, c0 + 1) =  q.w; m(r0 + 1, c0 + 2) = -q.z; m(r0 + 1, c0 + 3) =  q.y;
    m(r0 + 2, c0 + 0) = q.y; m(r0 + 2, c0 + 1) =  q.z; m(r0 + 2, c0 + 2) =  q.w; m(r0 + 2, c0 + 3) = -q.x;
    m(r0 + 3, c0 + 0) = q.z; m(r0 + 3, c0 + 1) = -q.y; m(r0 + 3, c0 + 2) =  q.x; m(r0 + 3, c0 + 3) =  q.w;
}

/// Real-block embedding: an m x n quaternion matrix becomes a 4m x 4n real
/// matrix built from per-entry 4x4 blocks. real_expand(AB) =
/// real_expand(A) * real_expand(B) and real_expand(A^H) = transpose.
inline Eigen::MatrixXd real_expand(const QuatMatrix& a) {
    Eigen::MatrixXd m(4 * a.rows(), 4 * a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) write_realp_block(m, 4 * i, 4 * j, a.at(i, j));
    return m;
}

/// Inverse of real_expand on its image. For matrices outside the image the
/// canonical block positions (the first column of each 4x4 block) are read,
/// which gives the nearest structured contraction without error.
inline QuatMatrix real_contract(const Eigen::MatrixXd& m) {
    if (m.rows() % 4 != 0 || m.cols() % 4 != 0)
        throw std::invalid_argument("real_contract: dimensions must be divisible by 4");
    QuatMatrix a(static_cast<int>(m.rows() / 4), static_cast<int>(m.cols() / 4));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            a.set(i, j, {m(4 * i + 0, 4 * j), m(4 * i + 1, 4 * j), m(4 * i + 2, 4 * j), m(4 * i + 3, 4 * j)});
    return a;
}

/// Complex adjoint (symplectic) embedding chi(A) = [[X, Y], [-conj(Y), conj(X)]]
/// with X = A_w + i A_x and Y = A_y + i A_z. Preserves Hermiticity and positive
/// definiteness; Hermitian eigenvalues appear with doubled multiplicity.
inline Eigen::MatrixXcd complex_embed(const QuatMatrix& a) {
    const int m = a.rows(), n = a.cols();
    Eigen::MatrixXcd c(2 * m, 2 * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const Quaternion q = a.at(i, j);
            const std::complex<double> x(q.w, q.x);
            const std::complex<double> y(q.y, q.z);
            c(i, j) = x;
            c(i, j + n) = y;
            c(i + m, j) = -std::conj(y);
            c(i + m, j + n) = std::conj(x);
        }
    return c;
}

/// Coordinates of a quaternion column in R^{4m}, ordered (w, x, y, z) per
/// entry. real_expand(A) * coords(p) = coords(A * p).
inline Eigen::VectorXd to_real_coords(const QuatMatrix& col) {
    if (col.cols() != 1) throw std::invalid_argument("to_real_coords: expects a column");
    Eigen::VectorXd v(4 * col.rows());
    for (int i = 0; i < col.rows(); ++i) {
        const Quaternion q = col.at(i, 0);
        v(4 * i + 0) = q.w;
        v(4 * i + 1) = q.x;
        v(4 * i + 2) = q.y;
        v(4 * i + 3) = q.z;
    }
    return v;
}

inline QuatMatrix from_real_coords(const Eigen::VectorXd& v) {
    if (v.size() % 4 != 0) throw std::invalid_argument("from_real_coords: length must be divisible by 4");
    QuatMatrix col(static_cast<int>(v.size() / 4), 1);
    for (int i = 0; i < col.rows(); ++i) col.set(i, 0, {v(4 * i + 0), v(4 * i + 1), v(4 * i + 2), v(4 * i + 3)});
    return col;
}

}  // namespace quatkit
