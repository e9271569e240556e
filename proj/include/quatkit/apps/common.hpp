#pragma once

#include <chrono>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "quatkit/io.hpp"

namespace quatkit::apps {

using json = nlohmann::json;

inline std::string join_path(const std::string& dir, const std::string& name) { return dir + "/" + name; }

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_json_file: cannot open " + path);
    os << j.dump(2) << '\n';
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace quatkit::apps
