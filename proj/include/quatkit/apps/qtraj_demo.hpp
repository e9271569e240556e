#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "quatkit/apps/common.hpp"
#include "quatkit/qtraj/qtraj.hpp"
#include "quatkit/rng.hpp"

namespace quatkit::apps {

struct QtrajDemoConfig {
    int num_keyframes = 5;
    int samples = 201;  // includes the keyframe times for the default spacing
    std::uint64_t seed = 0;
    std::string out_dir = "quatkit_out/qtraj_demo";

    json to_json() const {
        return {{"subcommand", "qtraj_demo"},
                {"num_keyframes", num_keyframes},
                {"samples", samples},
                {"seed", seed},
                {"out", out_dir}};
    }
};

/// Smooth synthetic keyframes from a slowly varying axis-angle construction,
/// sign-unwrapped.
inline qtraj::KeyframeSequence demo_keyframes(int count, Rng& rng) {
    qtraj::KeyframeSequence seq;
    const double amp = 0.7 + 0.5 * rng.uniform();
    const double rate = 1.0 + rng.uniform();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        seq.times.push_back(t);
        const double angle = amp * std::sin(rate * t + phase) + 1.1 * t;
        const double ux = std::cos(1.4 * t), uy = std::sin(1.4 * t), uz = 0.6;
        const double norm = std::sqrt(ux * ux + uy * uy + uz * uz);
        seq.quats.push_back(exp(Quaternion{0.0, ux / norm, uy / norm, uz / norm} * (angle / 2.0)));
    }
    return qtraj::enforce_sign_continuity(seq);
}

struct QtrajDemoResult {
    double max_keyframe_error = 0.0;
    double squad_max_knot_jump = 0.0;
    double slerp_max_knot_jump = 0.0;
};

inline QtrajDemoResult qtraj_demo_run(const QtrajDemoConfig& cfg) {
    ensure_directory(cfg.out_dir);
    Rng rng(cfg.seed);
    const qtraj::KeyframeSequence seq = demo_keyframes(cfg.num_keyframes, rng);

    std::vector<double> grid(cfg.samples);
    for (int i = 0; i < cfg.samples; ++i) grid[i] = static_cast<double>(i) / (cfg.samples - 1);

    const std::array<std::string, 3> names{"pw_slerp", "squad", "logexp"};
    const std::array<qtraj::SampledTrajectory, 3> trajs{qtraj::piecewise_slerp(seq, grid), qtraj::squad(seq, grid),
                                                        qtraj::logexp_spline(seq, grid)};
    const std::array<qtraj::SampledTrajectory, 3> at_keys{qtraj::piecewise_slerp(seq, seq.times),
                                                          qtraj::squad(seq, seq.times),
                                                          qtraj::logexp_spline(seq, seq.times)};

    std::array<std::vector<qtraj::AngularVelocitySample>, 3> omegas;
    for (int m = 0; m < 3; ++m) omegas[m] = qtraj::angular_velocity(trajs[m]);

    {
        CsvWriter csv(join_path(cfg.out_dir, "angular_speed.csv"), {"t_mid", names[0], names[1], names[2]});
        for (std::size_t k = 0; k < omegas[0].size(); ++k)
            csv.row(std::vector<double>{omegas[0][k].t_mid, omegas[0][k].speed(), omegas[1][k].speed(),
                                        omegas[2][k].speed()});
    }
    {
        CsvWriter csv(join_path(cfg.out_dir, "angular_accel.csv"), {"t_mid", names[0], names[1], names[2]});
        for (std::size_t k = 0; k + 1 < omegas[0].size(); ++k) {
            std::vector<double> row{(omegas[0][k].t_mid + omegas[0][k + 1].t_mid) / 2.0};
            for (int m = 0; m < 3; ++m) {
                const double dt = omegas[m][k + 1].t_mid - omegas[m][k].t_mid;
                double acc2 = 0.0;
                for (int c = 0; c < 3; ++c) {
                    const double a = (omegas[m][k + 1].omega[c] - omegas[m][k].omega[c]) / dt;
                    acc2 += a * a;
                }
                row.push_back(std::sqrt(acc2));
            }
            csv.row(row);
        }
    }

    QtrajDemoResult result;
    {
        CsvWriter csv(join_path(cfg.out_dir, "keyframe_errors.csv"), {"t_key", names[0], names[1], names[2]});
        for (std::size_t i = 0; i < seq.times.size(); ++i) {
            std::vector<double> row{seq.times[i]};
            for (int m = 0; m < 3; ++m) {
                const double err = std::min((at_keys[m].quats[i] - seq.quats[i]).abs(),
                                            (at_keys[m].quats[i] + seq.quats[i]).abs());
                row.push_back(err);
                result.max_keyframe_error = std::max(result.max_keyframe_error, err);
            }
            csv.row(row);
        }
    }
    {
        // trace of a fixed unit vector rotated by the interpolated orientations
        const std::array<double, 3> e3{0.0, 0.0, 1.0};
        CsvWriter csv(join_path(cfg.out_dir, "s2_trajectory.csv"),
                      {"t", "pw_slerp_x", "pw_slerp_y", "pw_slerp_z", "squad_x", "squad_y", "squad_z", "logexp_x",
                       "logexp_y", "logexp_z"});
        for (std::size_t k = 0; k < grid.size(); ++k) {
            std::vector<double> row{grid[k]};
            for (int m = 0; m < 3; ++m) {
                const auto v = qtraj::rotate_vector(trajs[m].quats[k], e3);
                row.insert(row.end(), v.begin(), v.end());
            }
            csv.row(row);
        }
    }

    const std::vector<double> interior(seq.times.begin() + 1, seq.times.end() - 1);
    json diagnostics;
    for (int m = 0; m < 3; ++m) {
        const qtraj::SmoothnessDiagnostics d = qtraj::smoothness_diagnostics(trajs[m], interior);
        double max_jump = 0.0;
        for (double j : d.knot_jumps) max_jump = std::max(max_jump, j);
        diagnostics[names[m]] = {{"accel_energy", d.accel_energy},
                                 {"rms_speed", d.rms_speed},
                                 {"max_speed", d.max_speed},
                                 {"max_knot_jump", max_jump}};
        if (names[m] == "squad") result.squad_max_knot_jump = max_jump;
        if (names[m] == "pw_slerp") result.slerp_max_knot_jump = max_jump;
    }
    write_json_file(join_path(cfg.out_dir, "summary.json"),
                    {{"config", cfg.to_json()},
                     {"diagnostics", diagnostics},
                     {"max_keyframe_error", result.max_keyframe_error}});
    return result;
}

}  // namespace quatkit::apps
