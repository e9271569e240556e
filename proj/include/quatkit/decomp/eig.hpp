#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "quatkit/decomp/tridiagonalize.hpp"
#include "quatkit/quat_matrix.hpp"

namespace quatkit::decomp {

namespace detail {

/// Eigenvalues of a real symmetric tridiagonal matrix by implicit-shift QL
/// iteration. The sweep budget is capped at 30 per eigenvalue (30 n total).
inline Eigen::VectorXd tridiagonal_eigenvalues(Eigen::VectorXd d, Eigen::VectorXd e_in) {
    const int n = static_cast<int>(d.size());
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e.head(e_in.size()) = e_in;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d(m)) + std::abs(d(m + 1));
                if (std::abs(e(m)) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 30) throw std::runtime_error("tridiagonal_eigenvalues: too many QL sweeps");
                double g = (d(l + 1) - d(l)) / (2.0 * e(l));
                double r = std::hypot(g, 1.0);
                g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e(i);
                    const double b = c * e(i);
                    r = std::hypot(f, g);
                    e(i + 1) = r;
                    if (r == 0.0) {
                        d(i + 1) -= p;
                        e(m) = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d(i + 1) - p;
                    r = (d(i) - g) * s + 2.0 * c * b;
                    p = s * r;
                    d(i + 1) = g + p;
                    g = c * r - b;
                    if (i == l) {
                        d(l) -= p;
                        e(l) = g;
                        e(m) = 0.0;
                    }
                }
            }
        } while (m != l);
    }
    std::sort(d.data(), d.data() + n);
    return d;
}

}  // namespace detail

/// Real eigenvalues of a Hermitian quaternion matrix, ascending. Composition
/// of Householder tridiagonalization with the real tridiagonal QL iteration.
inline Eigen::VectorXd hermitian_eig(const HermitianQuatMatrix& a) {
    const TridiagResult t = tridiagonalize(a);
    return detail::tridiagonal_eigenvalues(t.d, t.e);
}

}  // namespace quatkit::decomp
