#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace quatkit::restore {

namespace detail {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform. Forward uses e^{-i 2 pi k/n};
/// the inverse applies the conjugate twiddles and the 1/n scaling.
inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / len;
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& v : a) v /= static_cast<double>(n);
}

}  // namespace detail

/// Two-dimensional FFT of a real or complex plane (rows then columns).
/// Dimensions must be powers of two.
inline Eigen::MatrixXcd fft2(const Eigen::MatrixXcd& in, bool inverse = false) {
    const int rows = static_cast<int>(in.rows());
    const int cols = static_cast<int>(in.cols());
    Eigen::MatrixXcd out = in;
    std::vector<std::complex<double>> buf;
    buf.resize(cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) buf[j] = out(i, j);
        detail::fft_radix2(buf, inverse);
        for (int j = 0; j < cols; ++j) out(i, j) = buf[j];
    }
    buf.resize(rows);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) buf[i] = out(i, j);
        detail::fft_radix2(buf, inverse);
        for (int i = 0; i < rows; ++i) out(i, j) = buf[i];
    }
    return out;
}

inline Eigen::MatrixXcd fft2(const Eigen::MatrixXd& in, bool inverse = false) {
    return fft2(Eigen::MatrixXcd(in.cast<std::complex<double>>()), inverse);
}

}  // namespace quatkit::restore
