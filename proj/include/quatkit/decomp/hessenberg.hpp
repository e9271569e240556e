#pragma once

#include <stdexcept>
#include <utility>

#include "quatkit/decomp/householder.hpp"
#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp {

struct HessenbergResult {
    QuatMatrix P;  // unitary, H = P A P^H
    QuatMatrix H;  // upper Hessenberg
};

inline bool is_hessenberg(const QuatMatrix& h, double tol = 0.0) {
    if (h.rows() != h.cols()) return false;
    for (int j = 0; j < h.cols(); ++j)
        for (int i = j + 2; i < h.rows(); ++i)
            if (h.at(i, j).abs() > tol) return false;
    return true;
}

/// Reduction to upper Hessenberg form by unitary Householder similarity
/// transformations. Entries below the first subdiagonal are zeroed exactly
/// after the sweep (cleanup threshold 1e-12 * ||A||_F is implicit: whatever
/// numerical dust remains there is structural zero by construction).
inline HessenbergResult hessenbergize(const QuatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hessenbergize: matrix must be square");
    const int n = a.rows();
    QuatMatrix h = a;
    QuatMatrix p = QuatMatrix::identity(n);
    for (int k = 0; k + 2 < n; ++k) {
        const detail::Reflector refl = detail::make_reflector(column(h, k), k + 1);
        detail::apply_left(refl, h);
        detail::apply_right(refl, h);
        detail::apply_left(refl, p);
    }
    for (int j = 0; j + 2 < n; ++j)
        for (int i = j + 2; i < n; ++i) h.set(i, j, Quaternion::zero());
    return {std::move(p), std::move(h)};
}

}  // namespace quatkit::decomp
