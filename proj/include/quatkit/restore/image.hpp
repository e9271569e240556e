#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "quatkit/quat_matrix.hpp"

namespace quatkit::restore {

/// H x W quaternion field encoding color pixels. The RGB convention stores
/// the channels in the (x, y, z) planes with a zero w plane (pure
/// quaternions); general quaternion-valued images are also allowed.
struct QuatImage {
    QuatMatrix pixels;

    QuatImage() = default;
    explicit QuatImage(QuatMatrix p) : pixels(std::move(p)) {}
    QuatImage(int h, int w) : pixels(h, w) {}

    int height() const { return pixels.rows(); }
    int width() const { return pixels.cols(); }
};

/// Builds a pure-quaternion image from three real channel planes.
inline QuatImage image_from_rgb(const Eigen::MatrixXd& r, const Eigen::MatrixXd& g, const Eigen::MatrixXd& b) {
    if (r.rows() != g.rows() || r.rows() != b.rows() || r.cols() != g.cols() || r.cols() != b.cols())
        throw std::invalid_argument("image_from_rgb: channel shapes differ");
    return QuatImage(QuatMatrix::from_planes(Eigen::MatrixXd::Zero(r.rows(), r.cols()), r, g, b));
}

// --- PPM (P6 binary and P3 ascii); values are clamped to [0, 1] at export
// --- time only, never inside solvers.

inline void write_ppm(const std::string& path, const QuatImage& img, bool binary = true) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::runtime_error("write_ppm: cannot open " + path);
    const int h = img.height(), w = img.width();
    os << (binary ? "P6" : "P3") << '\n' << w << ' ' << h << '\n' << 255 << '\n';
    const auto to_byte = [](double v) {
        return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    };
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const Quaternion q = img.pixels.at(i, j);
            const unsigned char rgb[3] = {to_byte(q.x), to_byte(q.y), to_byte(q.z)};
            if (binary)
                os.write(reinterpret_cast<const char*>(rgb), 3);
            else
                os << static_cast<int>(rgb[0]) << ' ' << static_cast<int>(rgb[1]) << ' ' << static_cast<int>(rgb[2])
                   << '\n';
        }
}

inline QuatImage read_ppm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_ppm: cannot open " + path);
    std::string magic;
    is >> magic;
    if (magic != "P6" && magic != "P3") throw std::runtime_error("read_ppm: unsupported format " + magic);
    const auto next_token = [&is]() {
        std::string tok;
        while (is >> tok) {
            if (tok[0] == '#') {
                std::string line;
                std::getline(is, line);
                continue;
            }
            return tok;
        }
        throw std::runtime_error("read_ppm: truncated header");
    };
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (maxval <= 0 || maxval > 255) throw std::runtime_error("read_ppm: unsupported max value");

    QuatImage img(h, w);
    if (magic == "P6") {
        is.get();  // single whitespace after the header
        std::vector<unsigned char> data(static_cast<std::size_t>(3) * w * h);
        is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
        if (is.gcount() != static_cast<std::streamsize>(data.size())) throw std::runtime_error("read_ppm: truncated data");
        std::size_t k = 0;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) {
                img.pixels.set(i, j, {0.0, data[k] / static_cast<double>(maxval), data[k + 1] / static_cast<double>(maxval),
                                      data[k + 2] / static_cast<double>(maxval)});
                k += 3;
            }
    } else {
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) {
                int r, g, b;
                if (!(is >> r >> g >> b)) throw std::runtime_error("read_ppm: truncated data");
                img.pixels.set(i, j, {0.0, r / static_cast<double>(maxval), g / static_cast<double>(maxval),
                                      b / static_cast<double>(maxval)});
            }
    }
    return img;
}

}  // namespace quatkit::restore
