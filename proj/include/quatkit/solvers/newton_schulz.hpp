#pragma once

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "quatkit/quat_matrix.hpp"
#include "quatkit/solvers/solve_info.hpp"

namespace quatkit::solvers {

struct NsConfig {
    double gamma = 1.0;  // damping in (0, 1]
    int order = 2;       // hyperpower order p >= 2
    int max_iter = 100;
    double tol = 1e-8;   // threshold on E1 = ||A X A - A||_F
};

struct PenroseResiduals {
    double e1 = 0.0;  // ||A X A - A||_F
    double e2 = 0.0;  // ||X A X - X||_F
    double e3 = 0.0;  // ||(A X)^H - A X||_F
    double e4 = 0.0;  // ||(X A)^H - X A||_F
    double max() const { return std::max(std::max(e1, e2), std::max(e3, e4)); }
};

/// The four standard Penrose-type diagnostics of a pseudoinverse candidate.
inline PenroseResiduals penrose_residuals(const QuatMatrix& a, const QuatMatrix& x) {
    if (a.rows() != x.cols() || a.cols() != x.rows())
        throw std::invalid_argument("penrose_residuals: X must be shaped like A^H");
    PenroseResiduals r;
    const QuatMatrix ax = a * x;
    const QuatMatrix xa = x * a;
    r.e1 = (ax * a - a).frobenius_norm();
    r.e2 = (xa * x - x).frobenius_norm();
    r.e3 = (adjoint(ax) - ax).frobenius_norm();
    r.e4 = (adjoint(xa) - xa).frobenius_norm();
    return r;
}

namespace detail {

/// Largest singular value estimate from a few power-iteration steps on A^H A,
/// inflated by a 1% safety margin. Deterministic: the start vector is fixed.
inline double sigma_max_estimate(const QuatMatrix& a, int steps = 20) {
    QuatMatrix v(a.cols(), 1);
    for (int i = 0; i < a.cols(); ++i) v.set(i, 0, Quaternion(1.0 + 1e-3 * static_cast<double>(i % 7)));
    v = v * (1.0 / v.frobenius_norm());
    double lambda = 0.0;
    for (int it = 0; it < steps; ++it) {
        const QuatMatrix w = adjoint(a) * (a * v);
        lambda = w.frobenius_norm();  // ||A^H A v|| with unit v
        if (lambda == 0.0) return 0.0;
        v = w * (1.0 / lambda);
    }
    return std::sqrt(lambda) * 1.005;
}

struct NsState {
    QuatMatrix x;
    SolveInfo info;
};

/// Shared Newton-Schulz driver. For full column rank (m >= n) the update is
/// right-sided, X <- X + gamma F X with F = I - X A; otherwise left-sided,
/// X <- X + gamma X E with E = I - A X. For order p >= 2 the linear
/// correction becomes the truncated Neumann series of the deviation, giving
/// the exact residual recurrence E_{k+1} = E_k^p (gamma = 1).
inline NsState ns_iterate(const QuatMatrix& a, const NsConfig& cfg) {
    if (cfg.gamma <= 0.0 || cfg.gamma > 1.0) throw std::invalid_argument("ns_pinv: gamma must lie in (0, 1]");
    if (cfg.order < 2) throw std::invalid_argument("ns_pinv: order must be at least 2");
    const auto t0 = std::chrono::steady_clock::now();
    const bool right_side = a.rows() >= a.cols() && a.rows() != a.cols();

    const double sigma = sigma_max_estimate(a);
    if (sigma == 0.0) throw std::domain_error("ns_pinv: zero matrix has no full-rank side");
    const double alpha = 1.0 / (sigma * sigma);
    QuatMatrix x = adjoint(a) * alpha;

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    NsState st{x, {}};
    double e1 = (a * st.x * a - a).frobenius_norm();
    st.info.residual_history.push_back(e1);

    for (int k = 0; k < cfg.max_iter; ++k) {
        if (e1 <= cfg.tol) {
            st.info.converged = true;
            break;
        }
        if (right_side) {
            const QuatMatrix f = QuatMatrix::identity(a.cols()) - st.x * a;
            if (cfg.order == 2) {
                st.x = st.x + (f * st.x) * cfg.gamma;
            } else {
                QuatMatrix series = f;  // sum_{i=1}^{p-1} F^i via Horner
                for (int i = 0; i < cfg.order - 2; ++i) series = f * series + f;
                st.x = st.x + series * st.x;
            }
        } else {
            const QuatMatrix e = QuatMatrix::identity(a.rows()) - a * st.x;
            if (cfg.order == 2) {
                st.x = st.x + (st.x * e) * cfg.gamma;
            } else {
                QuatMatrix series = e;
                for (int i = 0; i < cfg.order - 2; ++i) series = e * series + e;
                st.x = st.x + st.x * series;
            }
        }
        if (!st.x.finite())
            throw std::runtime_error("ns_pinv: iterate diverged to non-finite values (last residual " +
                                     std::to_string(e1) + ")");
        e1 = (a * st.x * a - a).frobenius_norm();
        st.info.residual_history.push_back(e1);
        st.info.iterations = k + 1;
        if (e1 > 1e6 * scale) {
            st.info.diverged = true;
            break;
        }
    }
    st.info.converged = e1 <= cfg.tol;
    st.info.final_residual = e1;
    st.info.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return st;
}

}  // namespace detail

/// Newton-Schulz Moore-Penrose pseudoinverse (classical for gamma = 1,
/// damped otherwise). Initialization X_0 = alpha A^H with
/// alpha = 1 / sigma_max^2 from a short power iteration.
inline std::pair<QuatMatrix, SolveInfo> ns_pinv(const QuatMatrix& a, const NsConfig& cfg = {}) {
    NsConfig c = cfg;
    c.order = 2;
    detail::NsState st = detail::ns_iterate(a, c);
    return {std::move(st.x), std::move(st.info)};
}

/// Hyperpower variant of order p >= 2 (truncated Neumann series correction).
/// Damping is ignored for p > 2; p = 2 with gamma = 1 matches ns_pinv.
inline std::pair<QuatMatrix, SolveInfo> ns_pinv_higher_order(const QuatMatrix& a, const NsConfig& cfg) {
    detail::NsState st = detail::ns_iterate(a, cfg);
    return {std::move(st.x), std::move(st.info)};
}

}  // namespace quatkit::solvers
