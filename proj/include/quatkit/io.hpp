#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "quatkit/quat_matrix.hpp"

namespace quatkit {

/// Shortest decimal form that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- QMAT: `QMAT m n` header followed by 4*m*n reals, one entry per line in
// --- w,x,y,z order, entries row-major.

inline void write_qmat(std::ostream& os, const QuatMatrix& a) {
    os << "QMAT " << a.rows() << ' ' << a.cols() << '\n';
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Quaternion q = a.at(i, j);
            os << format_double(q.w) << ' ' << format_double(q.x) << ' ' << format_double(q.y) << ' '
               << format_double(q.z) << '\n';
        }
}

inline void write_qmat(const std::string& path, const QuatMatrix& a) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_qmat: cannot open " + path);
    write_qmat(os, a);
}

inline QuatMatrix read_qmat(std::istream& is) {
    std::string tag;
    int rows = 0, cols = 0;
    if (!(is >> tag >> rows >> cols) || tag != "QMAT") throw std::runtime_error("read_qmat: bad header");
    if (rows < 0 || cols < 0) throw std::runtime_error("read_qmat: bad dimensions");
    QuatMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            Quaternion q;
            if (!(is >> q.w >> q.x >> q.y >> q.z)) throw std::runtime_error("read_qmat: truncated data");
            a.set(i, j, q);
        }
    return a;
}

inline QuatMatrix read_qmat(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_qmat: cannot open " + path);
    return read_qmat(is);
}

// --- CSV with a mandatory header row; '.' decimal, comma separated.

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : os_(path) {
        if (!os_) throw std::runtime_error("CsvWriter: cannot open " + path);
        for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
        os_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
        os_ << '\n';
    }

    /// Mixed row: string cells are written verbatim.
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << '\n';
    }

private:
    std::ofstream os_;
};

// --- QSDP: `QSDP n m` header, then the cost C and the m constraint matrices
// --- in QMAT form, then the m entries of b.

struct QsdpFile {
    QuatMatrix C;
    std::vector<QuatMatrix> H;
    Eigen::VectorXd b;
};

inline void write_qsdp(const std::string& path, const QuatMatrix& C, const std::vector<QuatMatrix>& H,
                       const Eigen::VectorXd& b) {
    if (static_cast<int>(H.size()) != b.size()) throw std::invalid_argument("write_qsdp: |H| != |b|");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_qsdp: cannot open " + path);
    os << "QSDP " << C.rows() << ' ' << H.size() << '\n';
    write_qmat(os, C);
    for (const QuatMatrix& h : H) write_qmat(os, h);
    for (int i = 0; i < b.size(); ++i) os << format_double(b(i)) << '\n';
}

inline QsdpFile read_qsdp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_qsdp: cannot open " + path);
    std::string tag;
    int n = 0, m = 0;
    if (!(is >> tag >> n >> m) || tag != "QSDP") throw std::runtime_error("read_qsdp: bad header");
    QsdpFile f;
    f.C = read_qmat(is);
    f.H.reserve(m);
    for (int i = 0; i < m; ++i) f.H.push_back(read_qmat(is));
    f.b.resize(m);
    for (int i = 0; i < m; ++i)
        if (!(is >> f.b(i))) throw std::runtime_error("read_qsdp: truncated b vector");
    return f;
}

inline void ensure_directory(const std::string& dir) { std::filesystem::create_directories(dir); }

}  // namespace quatkit
