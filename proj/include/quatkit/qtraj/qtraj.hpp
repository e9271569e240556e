#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatkit/quaternion.hpp"

namespace quatkit::qtraj {

/// Orientation keyframes q_i on S^3 at strictly increasing times in [0, 1]
/// with t_0 = 0 and t_last = 1.
struct KeyframeSequence {
    std::vector<double> times;
    std::vector<Quaternion> quats;

    void validate() const {
        if (times.size() != quats.size() || times.size() < 2)
            throw std::invalid_argument("KeyframeSequence: need matching times/quats with at least two keyframes");
        if (std::abs(times.front()) > 1e-12 || std::abs(times.back() - 1.0) > 1e-12)
            throw std::invalid_argument("KeyframeSequence: times must start at 0 and end at 1");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (times[i] <= times[i - 1]) throw std::invalid_argument("KeyframeSequence: times must be strictly increasing");
        for (const Quaternion& q : quats)
            if (std::abs(q.abs() - 1.0) > 1e-9) throw std::domain_error("KeyframeSequence: keyframes must be unit quaternions");
    }
};

struct SampledTrajectory {
    std::vector<double> times;
    std::vector<Quaternion> quats;
};

/// Sign unwrapping on S^3: whenever <q_{i-1}, q_i> < 0, replace q_i by -q_i.
/// The represented rotations are unchanged (double cover) and consecutive
/// R^4 dot products become nonnegative. Idempotent.
inline KeyframeSequence enforce_sign_continuity(KeyframeSequence seq) {
    seq.validate();
    for (std::size_t i = 1; i < seq.quats.size(); ++i)
        if (dot4(seq.quats[i - 1], seq.quats[i]) < 0.0) seq.quats[i] = -seq.quats[i];
    return seq;
}

/// Spherical linear interpolation along the shortest great-circle arc,
/// cos(theta) = <q0, q1>. Falls back to normalized linear interpolation when
/// theta < 1e-8 (removable sin singularity).
inline Quaternion slerp(const Quaternion& q0, const Quaternion& q1, double t) {
    const double c = std::clamp(dot4(q0, q1), -1.0, 1.0);
    const double theta = std::acos(c);
    Quaternion out;
    if (theta < 1e-8) {
        out = q0 * (1.0 - t) + q1 * t;
    } else {
        const double s = std::sin(theta);
        out = q0 * (std::sin((1.0 - t) * theta) / s) + q1 * (std::sin(t * theta) / s);
    }
    return out.normalized();
}

namespace detail {

/// Index of the keyframe interval containing t (clamped to the last one).
inline std::size_t locate_interval(const std::vector<double>& knots, double t) {
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    const std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - knots.begin()));
    return std::min(i - 1, knots.size() - 2);
}

inline void check_grid(const std::vector<double>& grid) {
    for (double t : grid)
        if (t < -1e-12 || t > 1.0 + 1e-12) throw std::invalid_argument("qtraj: sample grid must lie in [0, 1]");
}

}  // namespace detail

/// C^0 baseline: SLERP applied on each keyframe interval.
inline SampledTrajectory piecewise_slerp(const KeyframeSequence& seq, const std::vector<double>& grid) {
    seq.validate();
    detail::check_grid(grid);
    SampledTrajectory out;
    out.times = grid;
    out.quats.reserve(grid.size());
    for (double t : grid) {
        const std::size_t i = detail::locate_interval(seq.times, t);
        const double u = (t - seq.times[i]) / (seq.times[i + 1] - seq.times[i]);
        out.quats.push_back(slerp(seq.quats[i], seq.quats[i + 1], u));
    }
    return out;
}

/// SQUAD: spline-like interpolant with intermediate control quaternions
/// a_i = q_i exp(-(log(q_i^{-1} q_{i-1}) + log(q_i^{-1} q_{i+1})) / 4),
/// endpoints a_0 = q_0, a_n = q_n. Each segment blends two SLERP curves with
/// parameter 2u(1-u); keyframes are preserved exactly.
inline SampledTrajectory squad(const KeyframeSequence& seq, const std::vector<double>& grid) {
    seq.validate();
    detail::check_grid(grid);
    const std::size_t n = seq.quats.size();
    std::vector<Quaternion> ctrl(n);
    ctrl.front() = seq.quats.front();
    ctrl.back() = seq.quats.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Quaternion qinv = seq.quats[i].inverse();
        const Quaternion arm = (log(qinv * seq.quats[i - 1]) + log(qinv * seq.quats[i + 1])) * (-0.25);
        ctrl[i] = seq.quats[i] * exp(arm);
    }

    SampledTrajectory out;
    out.times = grid;
    out.quats.reserve(grid.size());
    for (double t : grid) {
        const std::size_t i = detail::locate_interval(seq.times, t);
        const double u = (t - seq.times[i]) / (seq.times[i + 1] - seq.times[i]);
        const Quaternion outer = slerp(seq.quats[i], seq.quats[i + 1], u);
        const Quaternion inner = slerp(ctrl[i], ctrl[i + 1], u);
        out.quats.push_back(slerp(outer, inner, 2.0 * u * (1.0 - u)));
    }
    return out;
}

namespace detail {

/// Natural cubic spline through (t_i, v_i) per component; second derivative
/// vanishes at both ends. Returns the spline second derivatives.
inline std::vector<std::array<double, 3>> natural_spline_m(const std::vector<double>& t,
                                                           const std::vector<std::array<double, 3>>& v) {
    const std::size_t n = t.size();
    std::vector<std::array<double, 3>> m(n, {0.0, 0.0, 0.0});
    if (n < 3) return m;
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0);
    std::vector<std::array<double, 3>> rhs(n, {0.0, 0.0, 0.0});
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
        a[i] = h0 / 6.0;
        b[i] = (h0 + h1) / 3.0;
        c[i] = h1 / 6.0;
        for (int d = 0; d < 3; ++d)
            rhs[i][d] = (v[i + 1][d] - v[i][d]) / h1 - (v[i][d] - v[i - 1][d]) / h0;
    }
    // Thomas algorithm on the interior unknowns
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double f = a[i] / b[i - 1];
        b[i] -= f * c[i - 1];
        for (int d = 0; d < 3; ++d) rhs[i][d] -= f * rhs[i - 1][d];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        for (int d = 0; d < 3; ++d) {
            double val = rhs[i][d];
            if (i + 2 < n) val -= c[i] * m[i + 1][d];
            m[i][d] = val / b[i];
        }
        if (i == 1) break;
    }
    return m;
}

inline std::array<double, 3> spline_eval(const std::vector<double>& t, const std::vector<std::array<double, 3>>& v,
                                         const std::vector<std::array<double, 3>>& m, double x) {
    const std::size_t i = locate_interval(t, x);
    const double h = t[i + 1] - t[i];
    const double a = (t[i + 1] - x) / h, b = (x - t[i]) / h;
    std::array<double, 3> out{};
    for (int d = 0; d < 3; ++d)
        out[d] = a * v[i][d] + b * v[i + 1][d] +
                 ((a * a * a - a) * m[i][d] + (b * b * b - b) * m[i + 1][d]) * h * h / 6.0;
    return out;
}

}  // namespace detail

/// Log-exp spline: keyframes are mapped to the logarithmic chart
/// p_i = log(q_ref^{-1} q_i), a natural cubic spline is fit through
/// (t_i, p_i) in R^3, and samples are mapped back via q_ref exp(p(t)).
inline SampledTrajectory logexp_spline(const KeyframeSequence& seq, const std::vector<double>& grid,
                                       const Quaternion* q_ref_opt = nullptr) {
    seq.validate();
    detail::check_grid(grid);
    const Quaternion q_ref = q_ref_opt ? *q_ref_opt : seq.quats.front();
    const Quaternion ref_inv = q_ref.inverse();

    const std::size_t n = seq.quats.size();
    std::vector<std::array<double, 3>> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Quaternion rel = ref_inv * seq.quats[i];
        if (rel.w <= -1.0 + 1e-6)
            throw std::domain_error("logexp_spline: keyframe " + std::to_string(i) +
                                    " lies at the log branch cut relative to the reference");
        const Quaternion l = log(rel.normalized());
        p[i] = {l.x, l.y, l.z};
    }
    const std::vector<std::array<double, 3>> m = detail::natural_spline_m(seq.times, p);

    SampledTrajectory out;
    out.times = grid;
    out.quats.reserve(grid.size());
    for (double t : grid) {
        const std::array<double, 3> v = detail::spline_eval(seq.times, p, m, t);
        out.quats.push_back(q_ref * exp(Quaternion{0.0, v[0], v[1], v[2]}));
    }
    return out;
}

/// Rotation of a 3-vector by a unit quaternion, x' = q x q^{-1}.
inline std::array<double, 3> rotate_vector(const Quaternion& q, const std::array<double, 3>& x) {
    if (std::abs(q.abs() - 1.0) > 1e-9) throw std::domain_error("rotate_vector: q must be a unit quaternion");
    const Quaternion r = q * Quaternion{0.0, x[0], x[1], x[2]} * q.conj();
    return {r.x, r.y, r.z};
}

struct AngularVelocitySample {
    double t_mid = 0.0;
    std::array<double, 3> omega{};
    double speed() const { return std::sqrt(omega[0] * omega[0] + omega[1] * omega[1] + omega[2] * omega[2]); }
};

/// Discrete angular velocity by the midpoint log-map rule,
/// omega(t_{k+1/2}) = (2 / dt) log(q_{k+1} q_k^{-1}); one sample per interval.
inline std::vector<AngularVelocitySample> angular_velocity(const SampledTrajectory& traj) {
    if (traj.times.size() < 2) throw std::invalid_argument("angular_velocity: need at least two samples");
    std::vector<AngularVelocitySample> out;
    out.reserve(traj.times.size() - 1);
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        if (dt <= 0.0) throw std::invalid_argument("angular_velocity: duplicate or decreasing sample times");
        Quaternion rel = traj.quats[k + 1] * traj.quats[k].inverse();
        if (rel.w < 0.0) rel = -rel;  // same rotation increment, principal branch
        const Quaternion l = log(rel.normalized());
        out.push_back({(traj.times[k] + traj.times[k + 1]) / 2.0, {2.0 * l.x / dt, 2.0 * l.y / dt, 2.0 * l.z / dt}});
    }
    return out;
}

struct SmoothnessDiagnostics {
    double accel_energy = 0.0;  // sum ||d omega / dt||^2 dt over interior midpoints
    double rms_speed = 0.0;
    double max_speed = 0.0;
    std::vector<double> knot_jumps;  // ||omega_right - omega_left|| at supplied knots
};

/// Kinematic smoothness summary of a sampled trajectory: discrete
/// angular-acceleration energy, RMS/max angular speed, and the estimated
/// angular-velocity jumps at the supplied knot times.
inline SmoothnessDiagnostics smoothness_diagnostics(const SampledTrajectory& traj,
                                                    const std::vector<double>& knot_times = {}) {
    if (traj.times.size() < 3) throw std::invalid_argument("smoothness_diagnostics: need at least three samples");
    const std::vector<AngularVelocitySample> om = angular_velocity(traj);
    SmoothnessDiagnostics d;
    double sq = 0.0;
    for (const auto& s : om) {
        sq += s.speed() * s.speed();
        d.max_speed = std::max(d.max_speed, s.speed());
    }
    d.rms_speed = std::sqrt(sq / static_cast<double>(om.size()));
    for (std::size_t k = 0; k + 1 < om.size(); ++k) {
        const double dt = om[k + 1].t_mid - om[k].t_mid;
        double acc2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double a = (om[k + 1].omega[c] - om[k].omega[c]) / dt;
            acc2 += a * a;
        }
        d.accel_energy += acc2 * dt;
    }
    for (double tk : knot_times) {
        // last midpoint strictly before the knot and first strictly after
        const AngularVelocitySample* left = nullptr;
        const AngularVelocitySample* right = nullptr;
        for (const auto& s : om) {
            if (s.t_mid < tk) left = &s;
            if (s.t_mid > tk) {
                right = &s;
                break;
            }
        }
        if (!left || !right) continue;
        double j2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double dj = right->omega[c] - left->omega[c];
            j2 += dj * dj;
        }
        d.knot_jumps.push_back(std::sqrt(j2));
    }
    return d;
}

}  // namespace quatkit::qtraj
