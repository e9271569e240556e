#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quatkit {

/// One element of the quaternion skew field H, with components along 1, i, j, k.
/// Multiplication follows the Hamilton convention i*j = k.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double real) : w(real) {}

    static constexpr Quaternion zero() { return {}; }
    static constexpr Quaternion one() { return Quaternion{1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_i() { return Quaternion{0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_j() { return Quaternion{0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion unit_k() { return Quaternion{0.0, 0.0, 0.0, 1.0}; }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }

    // Hamilton product; order matters.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

    constexpr bool operator==(const Quaternion& o) const = default;

    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double abs() const { return std::sqrt(norm2()); }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    Quaternion inverse() const {
        const double n2 = norm2();
        if (n2 <= 0.0) throw std::domain_error("Quaternion::inverse: zero quaternion has no inverse");
        return {w / n2, -x / n2, -y / n2, -z / n2};
    }

    Quaternion normalized() const {
        const double n = abs();
        if (n <= 0.0) throw std::domain_error("Quaternion::normalized: zero quaternion");
        return *this / n;
    }

    constexpr Quaternion vector_part() const { return {0.0, x, y, z}; }
    double vector_norm() const { return std::sqrt(x * x + y * y + z * z); }

    bool finite() const { return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

inline Quaternion conj(const Quaternion& q) { return q.conj(); }
inline double abs(const Quaternion& q) { return q.abs(); }

/// Euclidean dot product of the components in R^4; equals Re(conj(a) * b).
constexpr double dot4(const Quaternion& a, const Quaternion& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Quaternion exponential. For a pure v = alpha * vhat this is
/// cos(alpha) + vhat * sin(alpha); a nonzero scalar part contributes exp(w).
inline Quaternion exp(const Quaternion& q) {
    const double alpha = q.vector_norm();
    const double scale = std::exp(q.w);
    // sin(alpha)/alpha with its removable singularity at zero
    const double sinc = alpha > 1e-12 ? std::sin(alpha) / alpha : 1.0 - alpha * alpha / 6.0;
    return {scale * std::cos(alpha), scale * sinc * q.x, scale * sinc * q.y, scale * sinc * q.z};
}

/// Principal logarithm of a unit quaternion: arccos(q0) * qv / |qv|, log(1) = 0.
/// Throws if |q| != 1 or if q is numerically at the antipode (branch ambiguous).
inline Quaternion log(const Quaternion& q) {
    if (std::abs(q.abs() - 1.0) > 1e-9)
        throw std::domain_error("log: argument must be a unit quaternion");
    const double vn = q.vector_norm();
    if (vn <= 1e-9) {
        if (q.w < 0.0)
            throw std::domain_error("log: branch-ambiguous near the antipode q = -1");
        return {0.0, q.x, q.y, q.z};
    }
    const double angle = std::atan2(vn, q.w);
    const double s = angle / vn;
    return {0.0, s * q.x, s * q.y, s * q.z};
}

}  // namespace quatkit
