#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "quatkit/quaternion.hpp"

namespace quatkit {

/// Dense m x n quaternion matrix stored as four real row-major component
/// planes (w, x, y, z). The universal operand for decompositions and solvers.
/// Values are immutable by convention once handed to an algorithm; all
/// operations below are pure functions of their inputs.
class QuatMatrix {
public:
    QuatMatrix() = default;
    QuatMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), w_(size(), 0.0), x_(size(), 0.0), y_(size(), 0.0), z_(size(), 0.0) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("QuatMatrix: negative dimension");
    }

    static QuatMatrix identity(int n) {
        QuatMatrix a(n, n);
        for (int i = 0; i < n; ++i) a.w_[static_cast<std::size_t>(i) * n + i] = 1.0;
        return a;
    }
    static QuatMatrix zeros(int rows, int cols) { return QuatMatrix(rows, cols); }

    /// Builds a quaternion matrix whose w-plane is the given real matrix.
    static QuatMatrix from_real(const Eigen::MatrixXd& m) {
        QuatMatrix a(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) a.w_[a.idx(i, j)] = m(i, j);
        return a;
    }

    static QuatMatrix from_planes(const Eigen::MatrixXd& w, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                  const Eigen::MatrixXd& z) {
        if (x.rows() != w.rows() || y.rows() != w.rows() || z.rows() != w.rows() || x.cols() != w.cols() ||
            y.cols() != w.cols() || z.cols() != w.cols())
            throw std::invalid_argument("QuatMatrix::from_planes: plane shapes differ");
        QuatMatrix a(static_cast<int>(w.rows()), static_cast<int>(w.cols()));
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) {
                const std::size_t k = a.idx(i, j);
                a.w_[k] = w(i, j);
                a.x_[k] = x(i, j);
                a.y_[k] = y(i, j);
                a.z_[k] = z(i, j);
            }
        return a;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_); }
    bool same_shape(const QuatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    Quaternion at(int i, int j) const {
        const std::size_t k = idx(i, j);
        return {w_[k], x_[k], y_[k], z_[k]};
    }
    void set(int i, int j, const Quaternion& q) {
        const std::size_t k = idx(i, j);
        w_[k] = q.w;
        x_[k] = q.x;
        y_[k] = q.y;
        z_[k] = q.z;
    }

    double& w(int i, int j) { return w_[idx(i, j)]; }
    double& x(int i, int j) { return x_[idx(i, j)]; }
    double& y(int i, int j) { return y_[idx(i, j)]; }
    double& z(int i, int j) { return z_[idx(i, j)]; }
    double w(int i, int j) const { return w_[idx(i, j)]; }
    double x(int i, int j) const { return x_[idx(i, j)]; }
    double y(int i, int j) const { return y_[idx(i, j)]; }
    double z(int i, int j) const { return z_[idx(i, j)]; }

    const std::vector<double>& plane_w() const { return w_; }
    const std::vector<double>& plane_x() const { return x_; }
    const std::vector<double>& plane_y() const { return y_; }
    const std::vector<double>& plane_z() const { return z_; }

    Eigen::MatrixXd plane(int c) const {
        const std::vector<double>& p = c == 0 ? w_ : c == 1 ? x_ : c == 2 ? y_ : z_;
        Eigen::MatrixXd m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(i, j) = p[idx(i, j)];
        return m;
    }

    QuatMatrix operator+(const QuatMatrix& o) const {
        check_same_shape(o, "operator+");
        QuatMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < size(); ++k) {
            r.w_[k] = w_[k] + o.w_[k];
            r.x_[k] = x_[k] + o.x_[k];
            r.y_[k] = y_[k] + o.y_[k];
            r.z_[k] = z_[k] + o.z_[k];
        }
        return r;
    }
    QuatMatrix operator-(const QuatMatrix& o) const {
        check_same_shape(o, "operator-");
        QuatMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < size(); ++k) {
            r.w_[k] = w_[k] - o.w_[k];
            r.x_[k] = x_[k] - o.x_[k];
            r.y_[k] = y_[k] - o.y_[k];
            r.z_[k] = z_[k] - o.z_[k];
        }
        return r;
    }
    QuatMatrix operator-() const {
        QuatMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < size(); ++k) {
            r.w_[k] = -w_[k];
            r.x_[k] = -x_[k];
            r.y_[k] = -y_[k];
            r.z_[k] = -z_[k];
        }
        return r;
    }

    QuatMatrix operator*(double s) const {
        QuatMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < size(); ++k) {
            r.w_[k] = w_[k] * s;
            r.x_[k] = x_[k] * s;
            r.y_[k] = y_[k] * s;
            r.z_[k] = z_[k] * s;
        }
        return r;
    }

    /// Matrix product with entry-wise Hamilton accumulation, left-to-right order.
    QuatMatrix operator*(const QuatMatrix& b) const {
        if (cols_ != b.rows_)
            throw std::invalid_argument("QuatMatrix::operator*: inner dimensions differ (" + shape_string() +
                                        " vs " + b.shape_string() + ")");
        QuatMatrix c(rows_, b.cols_);
        const int n = b.cols_;
        for (int i = 0; i < rows_; ++i) {
            for (int k = 0; k < cols_; ++k) {
                const std::size_t ik = idx(i, k);
                const double aw = w_[ik], ax = x_[ik], ay = y_[ik], az = z_[ik];
                if (aw == 0.0 && ax == 0.0 && ay == 0.0 && az == 0.0) continue;
                const std::size_t brow = static_cast<std::size_t>(k) * n;
                const std::size_t crow = static_cast<std::size_t>(i) * n;
                const double* bw = b.w_.data() + brow;
                const double* bx = b.x_.data() + brow;
                const double* by = b.y_.data() + brow;
                const double* bz = b.z_.data() + brow;
                double* cw = c.w_.data() + crow;
                double* cx = c.x_.data() + crow;
                double* cy = c.y_.data() + crow;
                double* cz = c.z_.data() + crow;
                for (int j = 0; j < n; ++j) {
                    cw[j] += aw * bw[j] - ax * bx[j] - ay * by[j] - az * bz[j];
                    cx[j] += aw * bx[j] + ax * bw[j] + ay * bz[j] - az * by[j];
                    cy[j] += aw * by[j] - ax * bz[j] + ay * bw[j] + az * bx[j];
                    cz[j] += aw * bz[j] + ax * by[j] - ay * bx[j] + az * bw[j];
                }
            }
        }
        return c;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (std::size_t k = 0; k < size(); ++k) s += w_[k] * w_[k] + x_[k] * x_[k] + y_[k] * y_[k] + z_[k] * z_[k];
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (std::size_t k = 0; k < rows_ * static_cast<std::size_t>(cols_); ++k)
            m = std::max(m, std::sqrt(w_[k] * w_[k] + x_[k] * x_[k] + y_[k] * y_[k] + z_[k] * z_[k]));
        return m;
    }

    bool finite() const {
        for (std::size_t k = 0; k < size(); ++k)
            if (!std::isfinite(w_[k]) || !std::isfinite(x_[k]) || !std::isfinite(y_[k]) || !std::isfinite(z_[k]))
                return false;
        return true;
    }

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    bool operator==(const QuatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_ && x_ == o.x_ && y_ == o.y_ && z_ == o.z_;
    }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }
    void check_same_shape(const QuatMatrix& o, const char* op) const {
        if (!same_shape(o))
            throw std::invalid_argument(std::string("QuatMatrix::") + op + ": shape mismatch (" + shape_string() +
                                        " vs " + o.shape_string() + ")");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> w_, x_, y_, z_;
};

/// Conjugate transpose: (A^H)_ij = conj(A_ji).
inline QuatMatrix adjoint(const QuatMatrix& a) {
    QuatMatrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(j, i, a.at(i, j).conj());
    return r;
}

inline Quaternion trace(const QuatMatrix& a) {
    Quaternion t{};
    const int n = std::min(a.rows(), a.cols());
    for (int i = 0; i < n; ++i) t += a.at(i, i);
    return t;
}

/// Real inner product Re tr(A^H B) on matching shapes; <A, A> = ||A||_F^2.
inline double real_inner(const QuatMatrix& a, const QuatMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("real_inner: shape mismatch");
    double s = 0.0;
    const std::size_t n = a.size();
    const auto& aw = a.plane_w();
    const auto& ax = a.plane_x();
    const auto& ay = a.plane_y();
    const auto& az = a.plane_z();
    const auto& bw = b.plane_w();
    const auto& bx = b.plane_x();
    const auto& by = b.plane_y();
    const auto& bz = b.plane_z();
    for (std::size_t k = 0; k < n; ++k) s += aw[k] * bw[k] + ax[k] * bx[k] + ay[k] * by[k] + az[k] * bz[k];
    return s;
}

/// Entrywise Hamilton product.
inline QuatMatrix hadamard(const QuatMatrix& a, const QuatMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("hadamard: shape mismatch");
    QuatMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j) * b.at(i, j));
    return r;
}

/// Entrywise scaling by a real matrix (the 0/1 masks of sampling schemes).
inline QuatMatrix scale_by_mask(const QuatMatrix& a, const Eigen::MatrixXd& mask) {
    if (a.rows() != mask.rows() || a.cols() != mask.cols()) throw std::invalid_argument("scale_by_mask: shape mismatch");
    QuatMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j) * mask(i, j));
    return r;
}

/// Mask blend: observed entries come from m, the rest from x.
inline QuatMatrix mask_blend(const Eigen::MatrixXd& mask, const QuatMatrix& m, const QuatMatrix& x) {
    if (!m.same_shape(x)) throw std::invalid_argument("mask_blend: shape mismatch");
    QuatMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.set(i, j, mask(i, j) != 0.0 ? m.at(i, j) : x.at(i, j));
    return r;
}

/// Per-entry right scaling A_ij * q; the module convention used when solvers
/// combine basis vectors with scalar coefficients on the right.
inline QuatMatrix scale_right(const QuatMatrix& a, const Quaternion& q) {
    QuatMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j) * q);
    return r;
}

inline QuatMatrix scale_left(const Quaternion& q, const QuatMatrix& a) {
    QuatMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, q * a.at(i, j));
    return r;
}

inline QuatMatrix select_columns(const QuatMatrix& a, const std::vector<int>& cols) {
    QuatMatrix r(a.rows(), static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int i = 0; i < a.rows(); ++i) r.set(i, j, a.at(i, cols[j]));
    return r;
}

inline QuatMatrix select_rows(const QuatMatrix& a, const std::vector<int>& rows) {
    QuatMatrix r(static_cast<int>(rows.size()), a.cols());
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(rows[i], j));
    return r;
}

inline QuatMatrix column(const QuatMatrix& a, int j) {
    QuatMatrix r(a.rows(), 1);
    for (int i = 0; i < a.rows(); ++i) r.set(i, 0, a.at(i, j));
    return r;
}

inline void set_column(QuatMatrix& a, int j, const QuatMatrix& col) {
    if (col.rows() != a.rows() || col.cols() != 1) throw std::invalid_argument("set_column: shape mismatch");
    for (int i = 0; i < a.rows(); ++i) a.set(i, j, col.at(i, 0));
}

/// Quaternion right inner product of columns, sum conj(u_i) * v_i.
inline Quaternion column_dot(const QuatMatrix& u, const QuatMatrix& v) {
    if (u.rows() != v.rows() || u.cols() != 1 || v.cols() != 1) throw std::invalid_argument("column_dot: expects columns");
    Quaternion s{};
    for (int i = 0; i < u.rows(); ++i) s += u.at(i, 0).conj() * v.at(i, 0);
    return s;
}

/// Refinement of QuatMatrix with A = A^H enforced at construction
/// (tolerance 1e-12 relative to the Frobenius norm).
class HermitianQuatMatrix {
public:
    explicit HermitianQuatMatrix(QuatMatrix a) : m_(std::move(a)) {
        if (m_.rows() != m_.cols()) throw std::invalid_argument("HermitianQuatMatrix: matrix must be square");
        const double dev = (m_ - adjoint(m_)).frobenius_norm();
        if (dev > 1e-12 * std::max(1e-300, m_.frobenius_norm()))
            throw std::domain_error("HermitianQuatMatrix: input deviates from A = A^H beyond tolerance");
    }

    /// Projects onto the Hermitian part (A + A^H)/2 and wraps the result.
    static HermitianQuatMatrix project(const QuatMatrix& a) {
        if (a.rows() != a.cols()) throw std::invalid_argument("HermitianQuatMatrix::project: matrix must be square");
        QuatMatrix h = (a + adjoint(a)) * 0.5;
        // exact symmetry of the stored planes: diagonal made real
        for (int i = 0; i < h.rows(); ++i) {
            h.x(i, i) = 0.0;
            h.y(i, i) = 0.0;
            h.z(i, i) = 0.0;
        }
        return HermitianQuatMatrix(std::move(h), Unchecked{});
    }

    const QuatMatrix& matrix() const { return m_; }
    int n() const { return m_.rows(); }
    int rows() const { return m_.rows(); }
    int cols() const { return m_.cols(); }
    Quaternion at(int i, int j) const { return m_.at(i, j); }
    double frobenius_norm() const { return m_.frobenius_norm(); }

private:
    struct Unchecked {};
    HermitianQuatMatrix(QuatMatrix a, Unchecked) : m_(std::move(a)) {}
    QuatMatrix m_;
};

/// Hermitian projection (A + A^H)/2; idempotent, fixes Hermitian inputs.
inline HermitianQuatMatrix herm_part(const QuatMatrix& a) { return HermitianQuatMatrix::project(a); }

inline double real_inner(const HermitianQuatMatrix& a, const HermitianQuatMatrix& b) {
    return real_inner(a.matrix(), b.matrix());
}

}  // namespace quatkit
