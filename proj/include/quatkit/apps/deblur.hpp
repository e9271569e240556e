#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "quatkit/apps/common.hpp"
#include "quatkit/apps/completion.hpp"  // synthetic_lowrank_image
#include "quatkit/restore/image.hpp"
#include "quatkit/restore/metrics.hpp"
#include "quatkit/restore/psf.hpp"
#include "quatkit/restore/qslst.hpp"
#include "quatkit/rng.hpp"

namespace quatkit::apps {

struct DeblurConfig {
    int size = 64;
    double lam = 1e-6;
    double snr_db = std::numeric_limits<double>::infinity();  // no noise unless set
    int psf_radius = 4;
    double psf_sigma = 1.0;
    std::string ns_mode = "fftT";  // "fftT" or "off"
    int ns_iters = 25;
    int fftT_order = 2;
    bool matrix_variant = false;  // dense reference path, small sizes only
    std::vector<double> lam_grid;
    std::uint64_t seed = 0;
    std::string input_ppm;
    std::string out_dir = "quatkit_out/image_deblurring";

    json to_json() const {
        return {{"subcommand", "image_deblurring"},
                {"size", size},
                {"lam", lam},
                {"snr", std::isinf(snr_db) ? json(nullptr) : json(snr_db)},
                {"psf_radius", psf_radius},
                {"psf_sigma", psf_sigma},
                {"ns_mode", ns_mode},
                {"ns_iters", ns_iters},
                {"fftT_order", fftT_order},
                {"matrix_variant", matrix_variant},
                {"lam_grid", lam_grid},
                {"seed", seed},
                {"input", input_ppm},
                {"out", out_dir}};
    }
};

struct DeblurResult {
    double psnr_degraded = 0.0;
    double psnr_qslst = 0.0;
    double psnr_ns = 0.0;
    double rel_error_qslst = 0.0;
    double wall_time = 0.0;
};

inline DeblurResult deblur_run(const DeblurConfig& cfg) {
    const Stopwatch timer;
    ensure_directory(cfg.out_dir);
    Rng rng(cfg.seed);

    const restore::QuatImage clean =
        cfg.input_ppm.empty() ? synthetic_lowrank_image(rng, cfg.size) : restore::read_ppm(cfg.input_ppm);
    const restore::Psf psf = restore::gaussian_psf(cfg.psf_radius, cfg.psf_sigma);
    const restore::QuatImage blurred = restore::apply_blur(clean, psf);
    const restore::QuatImage degraded = restore::add_noise(blurred, cfg.snr_db, rng);

    restore::write_ppm(join_path(cfg.out_dir, "clean.ppm"), clean);
    restore::write_ppm(join_path(cfg.out_dir, "blurred.ppm"), blurred);
    restore::write_ppm(join_path(cfg.out_dir, "degraded.ppm"), degraded);

    DeblurResult result;
    result.psnr_degraded = restore::psnr(degraded, clean);

    const Stopwatch qslst_timer;
    const restore::QuatImage restored = restore::qslst_restore_fft(degraded, psf, cfg.lam);
    const double qslst_seconds = qslst_timer.seconds();
    restore::write_ppm(join_path(cfg.out_dir, "restored_qslst.ppm"), restored);
    result.psnr_qslst = restore::psnr(restored, clean);
    result.rel_error_qslst = restore::rel_error(restored, clean);

    json metrics = {{"config", cfg.to_json()},
                    {"psnr_degraded", result.psnr_degraded},
                    {"psnr_qslst", result.psnr_qslst},
                    {"rel_error_qslst", result.rel_error_qslst},
                    {"rel_error_degraded", restore::rel_error(degraded, clean)},
                    {"qslst_seconds", qslst_seconds}};

    if (cfg.ns_mode == "fftT") {
        const Stopwatch ns_timer;
        const restore::QuatImage ns_restored =
            restore::ns_fft_restore(degraded, psf, std::max(cfg.lam, 1e-15), cfg.ns_iters, cfg.fftT_order);
        metrics["ns_seconds"] = ns_timer.seconds();
        restore::write_ppm(join_path(cfg.out_dir, "restored_ns.ppm"), ns_restored);
        result.psnr_ns = restore::psnr(ns_restored, clean);
        metrics["psnr_ns"] = result.psnr_ns;
        metrics["rel_error_ns"] = restore::rel_error(ns_restored, clean);
    }

    if (cfg.matrix_variant) {
        if (clean.height() * clean.width() > 1024)
            throw std::invalid_argument("deblur: the matrix variant is limited to 32x32 and smaller");
        const Eigen::MatrixXd a = restore::blur_matrix(psf, clean.height(), clean.width());
        const restore::QuatImage mat_restored = restore::qslst_restore_matrix(degraded, a, cfg.lam);
        restore::write_ppm(join_path(cfg.out_dir, "restored_matrix.ppm"), mat_restored);
        metrics["psnr_matrix"] = restore::psnr(mat_restored, clean);
        metrics["fft_vs_matrix_max_abs"] = (restored.pixels - mat_restored.pixels).max_abs();
    }

    if (!cfg.lam_grid.empty()) {
        CsvWriter scan(join_path(cfg.out_dir, "lam_scan.csv"), {"lambda", "psnr", "rel_error"});
        for (double lam : cfg.lam_grid) {
            const restore::QuatImage x = restore::qslst_restore_fft(degraded, psf, lam);
            scan.row(std::vector<double>{lam, restore::psnr(x, clean), restore::rel_error(x, clean)});
        }
    }

    result.wall_time = timer.seconds();
    metrics["wall_time_seconds"] = result.wall_time;
    write_json_file(join_path(cfg.out_dir, "metrics.json"), metrics);
    return result;
}

}  // namespace quatkit::apps
