#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "quatkit/quat_matrix.hpp"
#include "quatkit/restore/fft.hpp"
#include "quatkit/restore/image.hpp"
#include "quatkit/restore/psf.hpp"
#include "quatkit/rng.hpp"

namespace quatkit::restore {

namespace detail {

/// PSF embedded in an H x W plane with the kernel center wrapped to (0, 0),
/// so its spectrum carries no phase ramp.
inline Eigen::MatrixXd psf_embed(const Psf& psf, int h, int w) {
    const int size = 2 * psf.radius + 1;
    if (size > h || size > w) throw std::invalid_argument("psf_embed: kernel larger than image");
    Eigen::MatrixXd plane = Eigen::MatrixXd::Zero(h, w);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            const int ii = ((i - psf.radius) % h + h) % h;
            const int jj = ((j - psf.radius) % w + w) % w;
            plane(ii, jj) += psf.kernel(i, j);
        }
    return plane;
}

inline Eigen::MatrixXcd psf_spectrum(const Psf& psf, int h, int w) { return fft2(psf_embed(psf, h, w)); }

}  // namespace detail

/// Circular (periodic-boundary) convolution of the PSF with each of the four
/// component planes independently.
inline QuatImage apply_blur(const QuatImage& img, const Psf& psf) {
    const int h = img.height(), w = img.width();
    const int size = 2 * psf.radius + 1;
    if (size > h || size > w) throw std::invalid_argument("apply_blur: kernel larger than image");
    QuatImage out(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            Quaternion acc{};
            for (int di = -psf.radius; di <= psf.radius; ++di)
                for (int dj = -psf.radius; dj <= psf.radius; ++dj) {
                    const double kv = psf.kernel(di + psf.radius, dj + psf.radius);
                    if (kv == 0.0) continue;
                    const int si = ((i - di) % h + h) % h;
                    const int sj = ((j - dj) % w + w) % w;
                    acc += img.pixels.at(si, sj) * kv;
                }
            out.pixels.set(i, j, acc);
        }
    return out;
}

/// Additive white Gaussian noise at the requested SNR. The per-plane standard
/// deviation is ||X||_F 10^{-snr/20} / sqrt(4 H W); noise touches all four
/// planes. An infinite snr_db leaves the image unchanged.
inline QuatImage add_noise(const QuatImage& img, double snr_db, Rng& rng) {
    if (std::isinf(snr_db)) return img;
    if (!std::isfinite(snr_db)) throw std::invalid_argument("add_noise: snr_db must be finite or +inf");
    const int h = img.height(), w = img.width();
    const double sigma = img.pixels.frobenius_norm() * std::pow(10.0, -snr_db / 20.0) / std::sqrt(4.0 * h * w);
    QuatImage out = img;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const Quaternion q = out.pixels.at(i, j);
            out.pixels.set(i, j, {q.w + sigma * rng.gaussian(), q.x + sigma * rng.gaussian(),
                                  q.y + sigma * rng.gaussian(), q.z + sigma * rng.gaussian()});
        }
    return out;
}

/// Tikhonov-regularized deconvolution in the frequency domain:
/// Xhat = conj(hhat) Bhat / (|hhat|^2 + lambda) applied to each component
/// plane (the degradation is real, so one scalar filter serves all four).
inline QuatImage qslst_restore_fft(const QuatImage& observed, const Psf& psf, double lam) {
    if (lam < 0.0) throw std::invalid_argument("qslst_restore_fft: lambda must be nonnegative");
    const int h = observed.height(), w = observed.width();
    const Eigen::MatrixXcd hhat = detail::psf_spectrum(psf, h, w);
    if (lam == 0.0) {
        const double hmin = hhat.cwiseAbs().minCoeff();
        if (hmin < 1e-12)
            throw std::domain_error("qslst_restore_fft: lambda = 0 with a vanishing PSF frequency is ill-posed");
    }
    QuatImage out(h, w);
    Eigen::MatrixXd planes[4];
    for (int c = 0; c < 4; ++c) planes[c] = observed.pixels.plane(c);
    Eigen::MatrixXd restored[4];
    for (int c = 0; c < 4; ++c) {
        const Eigen::MatrixXcd bhat = fft2(planes[c]);
        Eigen::MatrixXcd xhat(h, w);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j)
                xhat(i, j) = std::conj(hhat(i, j)) * bhat(i, j) / (std::norm(hhat(i, j)) + lam);
        restored[c] = fft2(xhat, true).real();
    }
    out.pixels = QuatMatrix::from_planes(restored[0], restored[1], restored[2], restored[3]);
    return out;
}

/// Matrix-form reference restoration for a generic real degradation matrix A
/// acting on vectorized planes: solves (A^T A + lambda I) x_p = A^T b_p per
/// component plane through a pseudoinverse path (rank-deficient T tolerated).
inline QuatImage qslst_restore_matrix(const QuatImage& observed, const Eigen::MatrixXd& a_mat, double lam) {
    const int h = observed.height(), w = observed.width();
    const int n = h * w;
    if (a_mat.rows() != n || a_mat.cols() != n)
        throw std::invalid_argument("qslst_restore_matrix: degradation matrix must be (H W) x (H W)");
    const Eigen::MatrixXd t = a_mat.transpose() * a_mat + lam * Eigen::MatrixXd::Identity(n, n);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> pinv(t);

    QuatImage out(h, w);
    Eigen::MatrixXd restored[4];
    for (int c = 0; c < 4; ++c) {
        const Eigen::MatrixXd plane = observed.pixels.plane(c);
        Eigen::VectorXd b(n);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) b(i * w + j) = plane(i, j);
        const Eigen::VectorXd x = pinv.solve(a_mat.transpose() * b);
        restored[c].resize(h, w);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) restored[c](i, j) = x(i * w + j);
    }
    out.pixels = QuatMatrix::from_planes(restored[0], restored[1], restored[2], restored[3]);
    return out;
}

/// Builds the dense circulant degradation matrix of a PSF under periodic
/// boundary conditions (row-major vectorization); the matrix counterpart of
/// apply_blur for cross-validation at small sizes.
inline Eigen::MatrixXd blur_matrix(const Psf& psf, int h, int w) {
    const Eigen::MatrixXd plane = detail::psf_embed(psf, h, w);
    const int n = h * w;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            for (int si = 0; si < h; ++si)
                for (int sj = 0; sj < w; ++sj) {
                    const double kv = plane(((i - si) % h + h) % h, ((j - sj) % w + w) % w);
                    if (kv != 0.0) a(i * w + j, si * w + sj) = kv;
                }
    return a;
}

/// Frequency-domain Newton-Schulz approximation of the QSLST filter: a scalar
/// iteration per frequency approximating 1/(|hhat|^2 + lambda) with
/// t <- t (2 - a t) (order 2) or t <- t (3 - 3 a t + (a t)^2) (order 3),
/// started from t_0 = 1 / max_a. Converges to the qslst_restore_fft output.
inline QuatImage ns_fft_restore(const QuatImage& observed, const Psf& psf, double lam, int iters, int order) {
    if (lam <= 0.0) throw std::invalid_argument("ns_fft_restore: lambda must be positive");
    if (order != 2 && order != 3) throw std::invalid_argument("ns_fft_restore: order must be 2 or 3");
    if (iters < 1) throw std::invalid_argument("ns_fft_restore: iters must be at least 1");
    const int h = observed.height(), w = observed.width();
    const Eigen::MatrixXcd hhat = detail::psf_spectrum(psf, h, w);

    Eigen::MatrixXd a(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) a(i, j) = std::norm(hhat(i, j)) + lam;
    const double t0 = 1.0 / a.maxCoeff();
    Eigen::MatrixXd t = Eigen::MatrixXd::Constant(h, w, t0);
    for (int k = 0; k < iters; ++k)
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) {
                const double at = a(i, j) * t(i, j);
                t(i, j) = order == 2 ? t(i, j) * (2.0 - at) : t(i, j) * (3.0 - 3.0 * at + at * at);
            }

    QuatImage out(h, w);
    Eigen::MatrixXd restored[4];
    for (int c = 0; c < 4; ++c) {
        const Eigen::MatrixXcd bhat = fft2(observed.pixels.plane(c));
        Eigen::MatrixXcd xhat(h, w);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) xhat(i, j) = std::conj(hhat(i, j)) * t(i, j) * bhat(i, j);
        restored[c] = fft2(xhat, true).real();
    }
    out.pixels = QuatMatrix::from_planes(restored[0], restored[1], restored[2], restored[3]);
    return out;
}

}  // namespace quatkit::restore
