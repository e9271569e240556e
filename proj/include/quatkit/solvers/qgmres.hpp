#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quatkit/decomp/lu.hpp"
#include "quatkit/embeddings.hpp"
#include "quatkit/quat_matrix.hpp"
#include "quatkit/solvers/solve_info.hpp"
#include "quatkit/solvers/triangular.hpp"

namespace quatkit::solvers {

enum class Preconditioner { none, left_lu };

struct QgmresOptions {
    double tol = 1e-8;  // relative to the (preconditioned) right-hand side
    int max_iter = 100;
    Preconditioner preconditioner = Preconditioner::none;
};

namespace detail {

/// Left LU preconditioner: z = U^{-1} (L^{-1} (P r)) with P A = L U.
struct LeftLu {
    decomp::LuResult lu;
    QuatMatrix apply(const QuatMatrix& r) const {
        const QuatMatrix y = triangular_solve(lu.L, decomp::apply_lu_permutation(lu, r), TriangularSide::lower);
        return triangular_solve(lu.U, y, TriangularSide::upper);
    }
};

/// Least squares min || Htilde y - beta e1 || over quaternion y, solved
/// through the real-block embedding of the (k+1) x k Hessenberg matrix.
/// Returns the coefficient column and the residual norm.
inline std::pair<QuatMatrix, double> hessenberg_ls(const QuatMatrix& h, int k, double beta) {
    QuatMatrix hk(k + 1, k);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j < k; ++j) hk.set(i, j, h.at(i, j));
    const Eigen::MatrixXd m = real_expand(hk);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(4 * (k + 1));
    rhs(0) = beta;
    const Eigen::VectorXd y = m.colPivHouseholderQr().solve(rhs);
    return {from_real_coords(y), (m * y - rhs).norm()};
}

}  // namespace detail

/// Quaternion GMRES over the right module H^n: Arnoldi with modified
/// Gram-Schmidt under the right inner product <u, v> = sum conj(u_i) v_i,
/// small least-squares subproblems through the real-block embedding, and
/// solution combination with right scalar coefficients. Optional left LU
/// preconditioning transforms the system to M^{-1} A x = M^{-1} b.
inline std::pair<QuatMatrix, SolveInfo> qgmres_solve(const QuatMatrix& a, const QuatMatrix& b,
                                                     const QgmresOptions& opts = {}) {
    const int n = a.rows();
    if (a.cols() != n || b.rows() != n || b.cols() != 1) throw std::invalid_argument("qgmres_solve: shape mismatch");
    const auto t0 = std::chrono::steady_clock::now();

    std::optional<detail::LeftLu> prec;
    if (opts.preconditioner == Preconditioner::left_lu) prec.emplace(detail::LeftLu{decomp::quaternion_lu(a)});
    const auto apply_op = [&](const QuatMatrix& v) {
        QuatMatrix av = a * v;
        return prec ? prec->apply(av) : av;
    };

    const QuatMatrix rhs = prec ? prec->apply(b) : b;
    const double rhs_norm = rhs.frobenius_norm();
    SolveInfo info;
    if (rhs_norm == 0.0) {
        info.converged = true;
        info.residual_history.push_back(0.0);
        return {QuatMatrix(n, 1), info};
    }

    const int max_iter = std::min(opts.max_iter, n);
    std::vector<QuatMatrix> basis;
    basis.push_back(rhs * (1.0 / rhs_norm));
    QuatMatrix h(max_iter + 1, max_iter);  // quaternion Hessenberg coefficients
    info.residual_history.push_back(rhs_norm);

    QuatMatrix best_y(0, 1);
    int k_used = 0;
    for (int k = 0; k < max_iter; ++k) {
        QuatMatrix w = apply_op(basis[k]);
        for (int i = 0; i <= k; ++i) {
            const Quaternion hik = column_dot(basis[i], w);
            h.set(i, k, hik);
            w = w - scale_right(basis[i], hik);
        }
        const double wnorm = w.frobenius_norm();
        h.set(k + 1, k, Quaternion(wnorm));

        auto [y, resid] = detail::hessenberg_ls(h, k + 1, rhs_norm);
        best_y = y;
        k_used = k + 1;
        info.residual_history.push_back(resid);
        info.iterations = k_used;

        if (resid <= opts.tol * rhs_norm) {
            info.converged = true;
            break;
        }
        if (wnorm < 1e-14) {
            info.breakdown = true;  // happy breakdown: Krylov space is invariant
            info.converged = resid <= opts.tol * rhs_norm;
            break;
        }
        if (resid > 1e6 * rhs_norm) {
            info.diverged = true;
            break;
        }
        basis.push_back(w * (1.0 / wnorm));
    }

    QuatMatrix x(n, 1);
    for (int i = 0; i < k_used; ++i) x = x + scale_right(basis[i], best_y.at(i, 0));
    info.final_residual = info.residual_history.back();
    info.converged = info.converged || info.final_residual <= opts.tol * rhs_norm;
    info.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(x), std::move(info)};
}

}  // namespace quatkit::solvers
