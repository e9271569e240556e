#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

namespace quatkit::restore {

/// Real point-spread function on a (2r+1) x (2r+1) support, nonnegative and
/// normalized to unit sum.
struct Psf {
    Eigen::MatrixXd kernel;
    int radius = 0;
};

/// Isotropic Gaussian PSF, kernel[i][j] ~ exp(-((i-r)^2 + (j-r)^2)/(2 sigma^2)).
inline Psf gaussian_psf(int radius, double sigma) {
    if (radius < 0 || sigma <= 0.0) throw std::invalid_argument("gaussian_psf: need radius >= 0 and sigma > 0");
    const int size = 2 * radius + 1;
    Eigen::MatrixXd k(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            const double di = i - radius, dj = j - radius;
            k(i, j) = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
        }
    k /= k.sum();
    return {k, radius};
}

/// Linear motion blur: a length-pixel segment at the given angle (radians),
/// rasterized to nearest pixels and normalized.
inline Psf motion_psf(int length, double angle) {
    if (length < 1) throw std::invalid_argument("motion_psf: length must be at least 1");
    const int radius = (length - 1 + 1) / 2;
    const int size = 2 * radius + 1;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(size, size);
    const double c = std::cos(angle), s = std::sin(angle);
    for (int t = 0; t < length; ++t) {
        const double offset = t - (length - 1) / 2.0;
        const int i = radius + static_cast<int>(std::lround(offset * s));
        const int j = radius + static_cast<int>(std::lround(offset * c));
        k(std::clamp(i, 0, size - 1), std::clamp(j, 0, size - 1)) += 1.0;
    }
    k /= k.sum();
    return {k, radius};
}

}  // namespace quatkit::restore
