#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "quatkit/apps/common.hpp"
#include "quatkit/quat_matrix.hpp"
#include "quatkit/restore/image.hpp"
#include "quatkit/restore/metrics.hpp"
#include "quatkit/restore/psf.hpp"
#include "quatkit/restore/qslst.hpp"
#include "quatkit/rng.hpp"
#include "quatkit/solvers/newton_schulz.hpp"

namespace quatkit::apps {

struct CompletionConfig {
    int size = 256;
    double missing_fraction = 0.7;
    int iterations = 100;
    int rank1 = 60;
    int rank2 = 60;
    int ns_max_iter = 50;
    double ns_tol = 1e-8;
    bool denoise = true;  // light Gaussian smoothing of unobserved entries
    std::uint64_t seed = 0;
    std::string input_ppm;  // optional; synthetic low-rank field otherwise
    std::string out_dir = "quatkit_out/image_completion";

    json to_json() const {
        return {{"subcommand", "image_completion"}, {"size", size},          {"missing_fraction", missing_fraction},
                {"iterations", iterations},         {"rank1", rank1},        {"rank2", rank2},
                {"ns_max_iter", ns_max_iter},       {"ns_tol", ns_tol},      {"denoise", denoise},
                {"seed", seed},                     {"input", input_ppm},    {"out", out_dir}};
    }
};

/// Smooth random low-rank color field in [0.05, 0.95]; each channel is a
/// rank-4 combination of low-frequency cosine profiles.
inline restore::QuatImage synthetic_lowrank_image(Rng& rng, int size) {
    Eigen::MatrixXd channels[3];
    for (auto& ch : channels) {
        Eigen::MatrixXd left(size, 4), right(size, 4);
        for (int c = 0; c < 4; ++c) {
            const double fl = 0.5 + 1.5 * rng.uniform(), pl = 2.0 * std::numbers::pi * rng.uniform();
            const double fr = 0.5 + 1.5 * rng.uniform(), pr = 2.0 * std::numbers::pi * rng.uniform();
            for (int i = 0; i < size; ++i) {
                const double t = static_cast<double>(i) / size;
                left(i, c) = std::cos(2.0 * std::numbers::pi * fl * t + pl);
                right(i, c) = std::cos(2.0 * std::numbers::pi * fr * t + pr);
            }
        }
        ch = left * right.transpose();
        const double lo = ch.minCoeff(), hi = ch.maxCoeff();
        ch = ((ch.array() - lo) / std::max(hi - lo, 1e-12) * 0.9 + 0.05).matrix();
    }
    return restore::image_from_rgb(channels[0], channels[1], channels[2]);
}

/// Exact mask with the requested number of missing entries (zeros).
inline Eigen::MatrixXd random_mask(Rng& rng, int rows, int cols, double missing_fraction) {
    Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(rows, cols);
    const int missing = static_cast<int>(std::lround(missing_fraction * rows * cols));
    for (int idx : rng.sample_without_replacement(rows * cols, missing)) mask(idx / cols, idx % cols) = 0.0;
    return mask;
}

/// One CUR pass: uniformly sampled columns C and rows R of y, core
/// U = C^+ y R^+ with Newton-Schulz pseudoinverses.
inline QuatMatrix cur_lowrank(const QuatMatrix& y, int rank1, int rank2, Rng& rng,
                              const solvers::NsConfig& ns_cfg) {
    if (rank1 > y.cols() || rank2 > y.rows()) throw std::invalid_argument("cur_lowrank: rank exceeds sampled dimension");
    const QuatMatrix c = select_columns(y, rng.sample_without_replacement(y.cols(), rank1));
    const QuatMatrix r = select_rows(y, rng.sample_without_replacement(y.rows(), rank2));
    const QuatMatrix c_pinv = solvers::ns_pinv(c, ns_cfg).first;
    const QuatMatrix r_pinv = solvers::ns_pinv(r, ns_cfg).first;
    return c * (c_pinv * y * r_pinv) * r;
}

struct CompletionHistoryEntry {
    int iteration = 0;
    double psnr = 0.0;
    double rel_error = 0.0;
};

/// Alternating completion: X <- CUR(Y), Y <- mask*M + (1-mask)*X, with an
/// optional 3x3 Gaussian smoothing applied to the unobserved entries of X
/// between iterations. Returns the final estimate.
inline QuatMatrix run_completion_loop(const QuatMatrix& observed, const Eigen::MatrixXd& mask,
                                      const QuatMatrix& clean, const CompletionConfig& cfg, Rng& rng,
                                      std::vector<CompletionHistoryEntry>* history = nullptr) {
    solvers::NsConfig ns_cfg;
    ns_cfg.max_iter = cfg.ns_max_iter;
    ns_cfg.tol = cfg.ns_tol;
    const restore::Psf smooth = restore::gaussian_psf(1, 0.85);

    const Eigen::MatrixXd inverse_mask = Eigen::MatrixXd::Ones(mask.rows(), mask.cols()) - mask;
    QuatMatrix y = scale_by_mask(observed, mask);
    QuatMatrix x = y;
    for (int it = 0; it < cfg.iterations; ++it) {
        x = cur_lowrank(y, cfg.rank1, cfg.rank2, rng, ns_cfg);
        if (cfg.denoise) {
            const QuatMatrix smoothed = restore::apply_blur(restore::QuatImage(x), smooth).pixels;
            x = scale_by_mask(x, mask) + scale_by_mask(smoothed, inverse_mask);
        }
        y = mask_blend(mask, observed, x);
        if (history) {
            history->push_back({it + 1, restore::psnr(restore::QuatImage(x), restore::QuatImage(clean)),
                                (x - clean).frobenius_norm() / clean.frobenius_norm()});
        }
    }
    return x;
}

struct CompletionResult {
    double final_psnr = 0.0;
    double final_rel_error = 0.0;
    double wall_time = 0.0;
};

inline CompletionResult image_completion_run(const CompletionConfig& cfg) {
    if (cfg.missing_fraction <= 0.0 || cfg.missing_fraction >= 1.0)
        throw std::invalid_argument("image_completion: missing fraction must lie in (0, 1)");
    const Stopwatch timer;
    ensure_directory(cfg.out_dir);
    Rng rng(cfg.seed);

    const restore::QuatImage clean =
        cfg.input_ppm.empty() ? synthetic_lowrank_image(rng, cfg.size) : restore::read_ppm(cfg.input_ppm);
    const Eigen::MatrixXd mask = random_mask(rng, clean.height(), clean.width(), cfg.missing_fraction);

    std::vector<CompletionHistoryEntry> history;
    const QuatMatrix reconstructed = run_completion_loop(clean.pixels, mask, clean.pixels, cfg, rng, &history);

    restore::write_ppm(join_path(cfg.out_dir, "original.ppm"), clean);
    restore::write_ppm(join_path(cfg.out_dir, "masked.ppm"), restore::QuatImage(scale_by_mask(clean.pixels, mask)));
    restore::write_ppm(join_path(cfg.out_dir, "reconstructed.ppm"), restore::QuatImage(reconstructed));

    CsvWriter csv(join_path(cfg.out_dir, "psnr_history.csv"), {"iteration", "psnr", "rel_error"});
    for (const auto& h : history) csv.row(std::vector<double>{static_cast<double>(h.iteration), h.psnr, h.rel_error});

    CompletionResult result;
    result.final_psnr = history.empty() ? 0.0 : history.back().psnr;
    result.final_rel_error = history.empty() ? 0.0 : history.back().rel_error;
    result.wall_time = timer.seconds();

    json summary = {{"config", cfg.to_json()},
                    {"final_psnr", result.final_psnr},
                    {"final_rel_error", result.final_rel_error},
                    {"wall_time_seconds", result.wall_time}};
    write_json_file(join_path(cfg.out_dir, "summary.json"), summary);
    return result;
}

}  // namespace quatkit::apps
