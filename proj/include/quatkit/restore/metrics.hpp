#pragma once

#include <cmath>
#include <stdexcept>

#include "quatkit/restore/image.hpp"

namespace quatkit::restore {

/// Peak signal-to-noise ratio in dB, with the mean squared error taken over
/// the three color planes (the w plane is excluded under the RGB pure-
/// quaternion convention). Identical images report the 300 dB cap.
inline double psnr(const QuatImage& x, const QuatImage& y, double peak = 1.0) {
    if (!x.pixels.same_shape(y.pixels)) throw std::invalid_argument("psnr: shape mismatch");
    double mse = 0.0;
    const int h = x.height(), w = x.width();
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const Quaternion d = x.pixels.at(i, j) - y.pixels.at(i, j);
            mse += d.x * d.x + d.y * d.y + d.z * d.z;
        }
    mse /= 3.0 * h * w;
    if (mse <= 0.0) return 300.0;
    return std::min(300.0, 10.0 * std::log10(peak * peak / mse));
}

/// Relative Frobenius error ||X - Y||_F / ||Y||_F over all four planes.
inline double rel_error(const QuatImage& x, const QuatImage& y) {
    if (!x.pixels.same_shape(y.pixels)) throw std::invalid_argument("rel_error: shape mismatch");
    return (x.pixels - y.pixels).frobenius_norm() / y.pixels.frobenius_norm();
}

}  // namespace quatkit::restore
