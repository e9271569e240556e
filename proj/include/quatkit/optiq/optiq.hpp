#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "quatkit/decomp/chol.hpp"
#include "quatkit/decomp/eig.hpp"
#include "quatkit/decomp/qr.hpp"
#include "quatkit/embeddings.hpp"
#include "quatkit/quat_matrix.hpp"
#include "quatkit/rng.hpp"
#include "quatkit/solvers/triangular.hpp"

namespace quatkit::optiq {

/// Quaternion Hermitian SDP data: minimize <C, X> subject to
/// <H_i, X> = b_i for i = 1..m and X positive semidefinite.
struct SdpProblem {
    std::vector<HermitianQuatMatrix> H;  // constraint matrices
    Eigen::VectorXd b;                   // right-hand side
    HermitianQuatMatrix C;               // cost
    int n = 0;                           // matrix dimension

    SdpProblem(std::vector<HermitianQuatMatrix> H_, Eigen::VectorXd b_, HermitianQuatMatrix C_)
        : H(std::move(H_)), b(std::move(b_)), C(std::move(C_)), n(C.n()) {
        if (H.empty()) throw std::invalid_argument("SdpProblem: need at least one constraint");
        if (static_cast<int>(H.size()) != b.size()) throw std::invalid_argument("SdpProblem: |H| != |b|");
        for (const auto& h : H)
            if (h.n() != n) throw std::invalid_argument("SdpProblem: constraint dimension mismatch");
    }
    int m() const { return static_cast<int>(H.size()); }
};

/// Forward constraint map, (A(X))_i = <H_i, X> = Re tr(H_i^H X).
inline Eigen::VectorXd apply_A(const SdpProblem& p, const QuatMatrix& x) {
    if (x.rows() != p.n || x.cols() != p.n) throw std::invalid_argument("apply_A: shape mismatch");
    Eigen::VectorXd out(p.m());
    for (int i = 0; i < p.m(); ++i) out(i) = real_inner(p.H[i].matrix(), x);
    return out;
}

/// Adjoint under the real inner product: A*(y) = sum_i y_i H_i.
inline HermitianQuatMatrix apply_A_adjoint(const SdpProblem& p, const Eigen::VectorXd& y) {
    if (y.size() != p.m()) throw std::invalid_argument("apply_A_adjoint: shape mismatch");
    QuatMatrix acc(p.n, p.n);
    for (int i = 0; i < p.m(); ++i) acc = acc + p.H[i].matrix() * y(i);
    return herm_part(acc);
}

/// Gram-Cholesky whitening of the constraint map. With G_ij = <H_i, H_j> and
/// G = R^T R, the hat operators Ahat(X) = R^{-T} A(X), Ahat*(yhat) =
/// A*(R^{-1} yhat), bhat = R^{-T} b satisfy Ahat Ahat* = I_m.
struct HatOperators {
    Eigen::MatrixXd R;      // upper-triangular Cholesky factor of the Gram matrix
    Eigen::VectorXd b_hat;
};

inline HatOperators build_hat_operators(const SdpProblem& p) {
    const int m = p.m();
    Eigen::MatrixXd gram(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) gram(i, j) = gram(j, i) = real_inner(p.H[i], p.H[j]);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 1e-12 * std::max(hi, 1e-300))
        throw std::domain_error("build_hat_operators: dependent constraints, smallest Gram eigenvalue " +
                                std::to_string(lo));

    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    HatOperators ops;
    ops.R = llt.matrixU();
    ops.b_hat = ops.R.transpose().triangularView<Eigen::Lower>().solve(p.b);
    return ops;
}

inline Eigen::VectorXd apply_A_hat(const SdpProblem& p, const HatOperators& ops, const QuatMatrix& x) {
    return ops.R.transpose().triangularView<Eigen::Lower>().solve(apply_A(p, x));
}

inline HermitianQuatMatrix apply_A_hat_adjoint(const SdpProblem& p, const HatOperators& ops,
                                               const Eigen::VectorXd& y_hat) {
    return apply_A_adjoint(p, ops.R.triangularView<Eigen::Upper>().solve(y_hat));
}

/// log det(X) = sum_i log lambda_i(X) for Hermitian positive definite X.
inline double logdet_hpd(const HermitianQuatMatrix& x) {
    const Eigen::VectorXd ev = decomp::hermitian_eig(x);
    if (ev.minCoeff() <= 0.0) throw std::domain_error("logdet_hpd: matrix is not positive definite");
    return ev.array().log().sum();
}

namespace detail {

inline bool is_positive_definite(const HermitianQuatMatrix& x) {
    try {
        decomp::chol_quat_dense(x, 0.0, 1e-14);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

/// Hermitian inverse through the dense Cholesky factor.
inline HermitianQuatMatrix hpd_inverse(const HermitianQuatMatrix& x) {
    const QuatMatrix l = decomp::chol_quat_dense(x);
    return herm_part(decomp::solve_chol_quat_dense(l, QuatMatrix::identity(x.n())));
}

}  // namespace detail

/// Damped hat-space feasibility correction toward Ahat(X) = bhat:
/// X <- X + eta Ahat*(bhat - Ahat(X)), exact for eta = 1 under the isometry.
/// The damping is halved until the snapped iterate stays positive definite.
inline HermitianQuatMatrix equality_snap(const SdpProblem& p, const HatOperators& ops, const HermitianQuatMatrix& x,
                                         double eta = 1.0) {
    if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("equality_snap: eta must lie in (0, 1]");
    const Eigen::VectorXd residual = ops.b_hat - apply_A_hat(p, ops, x.matrix());
    const HermitianQuatMatrix step = apply_A_hat_adjoint(p, ops, residual);
    for (double damping = eta; damping >= 1e-8; damping *= 0.5) {
        const HermitianQuatMatrix snapped = herm_part(x.matrix() + step.matrix() * damping);
        if (detail::is_positive_definite(snapped)) return snapped;
    }
    throw std::runtime_error("equality_snap: could not preserve positive definiteness");
}

/// Path-following iterate bundle: X(mu) > 0, multiplier yhat, and the slack
/// S = mu X^{-1} reported alongside.
struct BarrierState {
    HermitianQuatMatrix X;
    Eigen::VectorXd y_hat;
    double mu = 0.0;
    HermitianQuatMatrix S;
    bool converged = false;
    int newton_iterations = 0;
    double primal_residual = 0.0;  // ||bhat - Ahat(X)||_2
    double dual_residual = 0.0;    // ||C + Ahat*(yhat) - mu X^{-1}||_F
};

struct NewtonDirection {
    HermitianQuatMatrix dX;
    Eigen::VectorXd dy_hat;
    Eigen::VectorXd r_p;      // bhat - Ahat(X)
    HermitianQuatMatrix r_d;  // C + Ahat*(yhat) - mu X^{-1}
    Eigen::MatrixXd schur;
    double jitter_used = 0.0;
    double dual_floor = 0.0;  // evaluation noise of mu X^{-1}, ~eps cond(X)
};

/// One Newton step of the barrier KKT system in hat space. The Hessian of
/// -mu log det is H[W] = mu X^{-1} W X^{-1} with H^{-1}[G] = (1/mu) X G X;
/// eliminating dX gives the m x m Schur system
/// (Ahat H^{-1} Ahat*) dyhat = -r_p - Ahat(H^{-1}[r_d]) assembled columnwise,
/// followed by dX = -H^{-1}[r_d + Ahat*(dyhat)].
inline NewtonDirection newton_step(const SdpProblem& p, const HatOperators& ops, const HermitianQuatMatrix& x,
                                   const Eigen::VectorXd& y_hat, double mu) {
    const int m = p.m();
    const HermitianQuatMatrix xinv = detail::hpd_inverse(x);

    NewtonDirection dir{HermitianQuatMatrix(QuatMatrix::identity(p.n)),
                        Eigen::VectorXd(),
                        Eigen::VectorXd(),
                        HermitianQuatMatrix(QuatMatrix::identity(p.n)),
                        Eigen::MatrixXd(),
                        0.0,
                        0.0};
    // the Cholesky-based inverse carries a relative error ~eps cond(X), so
    // mu X^{-1} cannot be evaluated below this absolute level
    dir.dual_floor = 4.0 * std::numeric_limits<double>::epsilon() * mu * x.frobenius_norm() *
                     xinv.frobenius_norm() * xinv.frobenius_norm();
    dir.r_p = ops.b_hat - apply_A_hat(p, ops, x.matrix());
    dir.r_d = herm_part(p.C.matrix() + apply_A_hat_adjoint(p, ops, y_hat).matrix() - xinv.matrix() * mu);

    const auto hess_inv = [&](const QuatMatrix& g) { return herm_part(x.matrix() * g * x.matrix() * (1.0 / mu)); };

    Eigen::MatrixXd schur(m, m);
    for (int j = 0; j < m; ++j) {
        const HermitianQuatMatrix kj = apply_A_hat_adjoint(p, ops, Eigen::VectorXd::Unit(m, j));
        schur.col(j) = apply_A_hat(p, ops, hess_inv(kj.matrix()).matrix());
    }
    schur = ((schur + schur.transpose()) / 2.0).eval();

    const Eigen::VectorXd rhs = -dir.r_p - apply_A_hat(p, ops, hess_inv(dir.r_d.matrix()).matrix());

    double jitter = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt(schur);
    if (llt.info() != Eigen::Success) {
        for (jitter = 1e-12 * schur.trace() / m; jitter <= 1e-6; jitter *= 10.0) {
            llt.compute(schur + jitter * Eigen::MatrixXd::Identity(m, m));
            if (llt.info() == Eigen::Success) break;
        }
        if (llt.info() != Eigen::Success) throw std::runtime_error("newton_step: Schur solve failed despite jitter");
    }
    dir.jitter_used = jitter;
    dir.dy_hat = llt.solve(rhs);
    dir.dX = herm_part(-hess_inv((dir.r_d.matrix() + apply_A_hat_adjoint(p, ops, dir.dy_hat).matrix())).matrix());
    dir.schur = std::move(schur);
    return dir;
}

namespace detail {

/// Largest t keeping X + t dX positive definite, from the smallest eigenvalue
/// of the Cholesky-whitened step L^{-1} dX L^{-H}.
inline double fraction_to_boundary(const HermitianQuatMatrix& x, const HermitianQuatMatrix& dx) {
    const QuatMatrix l = decomp::chol_quat_dense(x);
    const int n = x.n();
    using solvers::TriangularSide;
    const QuatMatrix li_dx = solvers::triangular_solve(l, dx.matrix(), TriangularSide::lower);
    // right-solve against L^H via the adjoint: (L^{-1} (L^{-1} dX)^H)^H
    const QuatMatrix scaled = adjoint(solvers::triangular_solve(l, adjoint(li_dx), TriangularSide::lower));
    const Eigen::VectorXd ev = decomp::hermitian_eig(herm_part(scaled));
    const double lo = ev.minCoeff();
    if (lo >= 0.0) return 1.0;
    return std::min(1.0, 0.99 * (-1.0 / lo));
}

inline double combined_residual(const SdpProblem& p, const HatOperators& ops, const HermitianQuatMatrix& x,
                                const Eigen::VectorXd& y_hat, double mu) {
    const HermitianQuatMatrix xinv = hpd_inverse(x);
    const double rp = (ops.b_hat - apply_A_hat(p, ops, x.matrix())).norm();
    const double rd =
        (p.C.matrix() + apply_A_hat_adjoint(p, ops, y_hat).matrix() - xinv.matrix() * mu).frobenius_norm();
    return rp * rp + rd * rd;
}

}  // namespace detail

/// Fixed-mu barrier Newton solve. Steps use the fraction-to-boundary rule
/// t = min(1, 0.99 t_boundary), Armijo backtracking (factor 0.5, slope 1e-4,
/// at most 20 halvings) on phi = ||r_p||^2 + ||r_d||_F^2, and an equality
/// snap after each accepted step. Convergence: max(||r_p||, ||r_d||_F) <= tol,
/// with the dual test relaxed to the floating-point floor of evaluating
/// mu X^{-1} once cond(X) makes tol unattainable (late path stages).
inline BarrierState solve_barrier_fixed_mu(const SdpProblem& p, const HatOperators& ops, const HermitianQuatMatrix& x0,
                                           double mu, double tol = 1e-10, int max_newton = 50,
                                           const Eigen::VectorXd* y0 = nullptr) {
    HermitianQuatMatrix x = x0;
    Eigen::VectorXd y_hat = y0 ? *y0 : Eigen::VectorXd::Zero(p.m());

    BarrierState st{x, y_hat, mu, x, false, 0, 0.0, 0.0};
    for (int it = 0; it <= max_newton; ++it) {
        const NewtonDirection dir = newton_step(p, ops, x, y_hat, mu);
        st.primal_residual = dir.r_p.norm();
        st.dual_residual = dir.r_d.frobenius_norm();
        if (st.primal_residual <= tol && st.dual_residual <= std::max(tol, dir.dual_floor)) {
            st.converged = true;
            break;
        }
        if (it == max_newton) break;  // budget exhausted, return best effort

        const double t_max = detail::fraction_to_boundary(x, dir.dX);
        const double phi0 = st.primal_residual * st.primal_residual + st.dual_residual * st.dual_residual;
        double t = t_max;
        bool accepted = false;
        for (int halving = 0; halving < 20; ++halving) {
            const HermitianQuatMatrix x_try = herm_part(x.matrix() + dir.dX.matrix() * t);
            const Eigen::VectorXd y_try = y_hat + t * dir.dy_hat;
            if (detail::is_positive_definite(x_try)) {
                const double phi = detail::combined_residual(p, ops, x_try, y_try, mu);
                if (phi <= (1.0 - 1e-4 * t) * phi0) {
                    x = equality_snap(p, ops, x_try);
                    y_hat = y_try;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!accepted) break;  // line search stalled; report current residuals
        st.newton_iterations = it + 1;
    }

    st.X = x;
    st.y_hat = y_hat;
    st.mu = mu;
    st.S = herm_part(detail::hpd_inverse(x).matrix() * mu);
    return st;
}

/// Per-stage record of the continuation path.
struct PathRecord {
    double mu = 0.0;
    double objective = 0.0;
    double feasibility = 0.0;  // ||bhat - Ahat(X)||_2
    double relerr = std::numeric_limits<double>::quiet_NaN();  // from the hook, when given
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int newton_iterations = 0;
};

struct PathResult {
    BarrierState state;
    std::vector<PathRecord> history;
};

/// Log-det barrier path following in hat space: fixed-mu solves with
/// geometric decay mu <- max(beta_mu mu, eps_gap), warm-started from the
/// previous stage (optional multiplier warm start yhat = Ahat(mu X^{-1} - C)).
/// An optional relerr hook is evaluated on every stage iterate and recorded.
inline PathResult solve_barrier_path(const SdpProblem& p, const HermitianQuatMatrix& x0, double mu0, double beta_mu,
                                     double eps_gap, double tol = 1e-10, int max_newton = 50,
                                     bool warm_start_multiplier = true,
                                     const std::function<double(const HermitianQuatMatrix&)>& relerr_hook = {}) {
    if (mu0 <= 0.0 || beta_mu <= 0.0 || beta_mu >= 1.0 || eps_gap <= 0.0 || eps_gap >= mu0)
        throw std::invalid_argument("solve_barrier_path: need mu0 > eps_gap > 0 and beta_mu in (0, 1)");

    const HatOperators ops = build_hat_operators(p);
    PathResult out{BarrierState{x0, Eigen::VectorXd::Zero(p.m()), mu0, x0, false, 0, 0.0, 0.0}, {}};
    HermitianQuatMatrix x = x0;
    Eigen::VectorXd y_hat = Eigen::VectorXd::Zero(p.m());
    double mu = mu0;

    for (int stage = 0;; ++stage) {
        if (warm_start_multiplier) {
            const HermitianQuatMatrix xinv = detail::hpd_inverse(x);
            y_hat = apply_A_hat(p, ops, herm_part(xinv.matrix() * mu - p.C.matrix()).matrix());
        }
        BarrierState st = solve_barrier_fixed_mu(p, ops, x, mu, tol, max_newton, &y_hat);
        if (!st.converged)
            throw std::runtime_error("solve_barrier_path: Newton stage " + std::to_string(stage) +
                                     " failed at mu = " + std::to_string(mu));
        x = st.X;
        y_hat = st.y_hat;

        const Eigen::VectorXd ev = decomp::hermitian_eig(x);
        PathRecord rec{mu,
                       real_inner(p.C.matrix(), x.matrix()),
                       st.primal_residual,
                       std::numeric_limits<double>::quiet_NaN(),
                       ev.minCoeff(),
                       ev.maxCoeff(),
                       st.newton_iterations};
        if (relerr_hook) rec.relerr = relerr_hook(x);
        out.history.push_back(rec);
        out.state = std::move(st);
        if (mu <= eps_gap) break;
        mu = std::max(beta_mu * mu, eps_gap);
    }
    return out;
}

/// Certified known-optimum instance: complementary primal/dual projectors
/// X* = V diag(I_r, 0) V^H and C = V diag(0, I_{n-r}) V^H, a 1/sqrt(n)-scaled
/// trace constraint pinning tr(X) = r, optional random trace-free extra
/// constraints with b_i = <H_i, X*>, and the strictly feasible warm start
/// X_feas = (1 - eps) X* + eps (r/n) I.
struct KnownOptimumInstance {
    SdpProblem problem;
    HermitianQuatMatrix x_star;
    HermitianQuatMatrix x_feas;
};

inline KnownOptimumInstance build_known_optimum_instance(int n, int r, int m_extra, double eps, Rng& rng) {
    if (r < 1 || r > n - 1) throw std::invalid_argument("build_known_optimum_instance: need 1 <= r <= n - 1");
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("build_known_optimum_instance: eps must lie in (0, 1)");

    const QuatMatrix v = decomp::qr_qua(gaussian_matrix(rng, n, n)).Q;
    QuatMatrix proj_r(n, n), proj_c(n, n);
    for (int i = 0; i < n; ++i) (i < r ? proj_r : proj_c).set(i, i, Quaternion::one());
    const HermitianQuatMatrix x_star = herm_part(v * proj_r * adjoint(v));
    const HermitianQuatMatrix cost = herm_part(v * proj_c * adjoint(v));

    std::vector<HermitianQuatMatrix> constraints;
    constraints.push_back(herm_part(QuatMatrix::identity(n) * (1.0 / std::sqrt(static_cast<double>(n)))));
    for (int i = 0; i < m_extra; ++i) {
        const HermitianQuatMatrix h = herm_part(gaussian_matrix(rng, n, n));
        const double alpha = real_inner(h.matrix(), QuatMatrix::identity(n)) / static_cast<double>(n);
        constraints.push_back(herm_part(h.matrix() - QuatMatrix::identity(n) * alpha));
    }
    Eigen::VectorXd b(constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i) b(static_cast<int>(i)) = real_inner(constraints[i].matrix(), x_star.matrix());

    const HermitianQuatMatrix x_feas = herm_part(x_star.matrix() * (1.0 - eps) +
                                                 QuatMatrix::identity(n) * (eps * static_cast<double>(r) / n));
    return {SdpProblem(std::move(constraints), std::move(b), cost), x_star, x_feas};
}

}  // namespace quatkit::optiq
