#pragma once

#include <cmath>

#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp::detail {

/// Elementary quaternion reflector H = I - beta u u^H with beta = 2/||u||^2.
/// beta == 0 encodes the identity (nothing to eliminate).
struct Reflector {
    QuatMatrix u;  // full-length column
    double beta = 0.0;
};

/// Reflector sending the tail x = col[offset:] to alpha e_1 with
/// alpha = -sign(x_0) ||x||; the quaternion sign keeps conj(alpha) x_0 real
/// so the classical derivation carries over to H.
inline Reflector make_reflector(const QuatMatrix& col, int offset) {
    const int n = col.rows();
    Reflector h;
    h.u = QuatMatrix(n, 1);

    double norm2 = 0.0;
    for (int i = offset; i < n; ++i) norm2 += col.at(i, 0).norm2();
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return h;

    const Quaternion x0 = col.at(offset, 0);
    const Quaternion alpha = x0.norm2() > 0.0 ? x0 * (-norm / x0.abs()) : Quaternion(-norm);

    double un2 = 0.0;
    for (int i = offset; i < n; ++i) {
        const Quaternion u = i == offset ? x0 - alpha : col.at(i, 0);
        h.u.set(i, 0, u);
        un2 += u.norm2();
    }
    if (un2 <= 0.0) {
        h.beta = 0.0;  // already in the target form
        return h;
    }
    h.beta = 2.0 / un2;
    return h;
}

inline void apply_left(const Reflector& h, QuatMatrix& a) {
    if (h.beta == 0.0) return;
    const QuatMatrix w = adjoint(h.u) * a;  // 1 x n
    a = a - (h.u * w) * h.beta;
}

inline void apply_right(const Reflector& h, QuatMatrix& a) {
    if (h.beta == 0.0) return;
    const QuatMatrix w = a * h.u;  // m x 1
    a = a - (w * adjoint(h.u)) * h.beta;
}

}  // namespace quatkit::decomp::detail
