#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "quatkit/decomp/householder.hpp"
#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp {

struct TridiagResult {
    QuatMatrix P;       // unitary, B = P A P^H
    Eigen::VectorXd d;  // real diagonal of B
    Eigen::VectorXd e;  // real subdiagonal of B (length n - 1)

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d.size(), d.size());
        for (int i = 0; i < d.size(); ++i) b(i, i) = d(i);
        for (int i = 0; i + 1 < d.size(); ++i) {
            b(i + 1, i) = e(i);
            b(i, i + 1) = e(i);
        }
        return b;
    }
};

/// Householder tridiagonalization of a Hermitian quaternion matrix followed
/// by a diagonal phase similarity that makes the couplings real nonnegative.
/// The returned B is real tridiagonal with the same eigenvalues as A;
/// off-band artifacts are dropped and the retained entries are projected to
/// their scalar parts.
inline TridiagResult tridiagonalize(const HermitianQuatMatrix& a) {
    const int n = a.n();
    QuatMatrix b = a.matrix();
    QuatMatrix p = QuatMatrix::identity(n);
    for (int k = 0; k + 2 < n; ++k) {
        const detail::Reflector refl = detail::make_reflector(column(b, k), k + 1);
        detail::apply_left(refl, b);
        detail::apply_right(refl, b);
        detail::apply_left(refl, p);
    }

    // Unit-quaternion diagonal similarity: new coupling d_{i+1} beta_i conj(d_i)
    // has modulus |beta_i| and no vector part.
    std::vector<Quaternion> phase(n, Quaternion::one());
    for (int i = 0; i + 1 < n; ++i) {
        const Quaternion beta = b.at(i + 1, i);
        phase[i + 1] = beta.abs() > 0.0 ? phase[i] * beta.conj() * (1.0 / beta.abs()) : phase[i];
    }
    for (int i = 0; i < n; ++i) {
        const QuatMatrix row = scale_left(phase[i], select_rows(p, {i}));
        for (int j = 0; j < n; ++j) p.set(i, j, row.at(0, j));
    }

    TridiagResult out;
    out.P = std::move(p);
    out.d.resize(n);
    out.e.resize(n > 0 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) out.d(i) = b.at(i, i).w;
    for (int i = 0; i + 1 < n; ++i) out.e(i) = b.at(i + 1, i).abs();
    return out;
}

}  // namespace quatkit::decomp
