#pragma once

#include <stdexcept>

#include "quatkit/quat_matrix.hpp"

namespace quatkit::solvers {

enum class TriangularSide { lower, upper };

/// Forward/backward substitution for quaternion triangular systems. Each
/// entry is computed with quaternion left division by the diagonal,
/// x_i = d_i^{-1} * rhs_i (order fixed by noncommutativity). Supports
/// multiple right-hand sides.
inline QuatMatrix triangular_solve(const QuatMatrix& t, const QuatMatrix& b, TriangularSide side) {
    const int n = t.rows();
    if (t.cols() != n || b.rows() != n) throw std::invalid_argument("triangular_solve: shape mismatch");
    for (int i = 0; i < n; ++i)
        if (t.at(i, i).abs() < 1e-14) throw std::domain_error("triangular_solve: singular diagonal at index " + std::to_string(i));

    QuatMatrix x(n, b.cols());
    if (side == TriangularSide::lower) {
        for (int c = 0; c < b.cols(); ++c)
            for (int i = 0; i < n; ++i) {
                Quaternion rhs = b.at(i, c);
                for (int j = 0; j < i; ++j) rhs -= t.at(i, j) * x.at(j, c);
                x.set(i, c, t.at(i, i).inverse() * rhs);
            }
    } else {
        for (int c = 0; c < b.cols(); ++c)
            for (int i = n - 1; i >= 0; --i) {
                Quaternion rhs = b.at(i, c);
                for (int j = i + 1; j < n; ++j) rhs -= t.at(i, j) * x.at(j, c);
                x.set(i, c, t.at(i, i).inverse() * rhs);
            }
    }
    return x;
}

}  // namespace quatkit::solvers
