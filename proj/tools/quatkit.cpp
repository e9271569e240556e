// quatkit command-line harness: demos and benchmarks with deterministic
// seeds and CSV/JSON/PPM outputs.

#include <cstdio>
#include <exception>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "quatkit/apps/benchmarks.hpp"
#include "quatkit/apps/completion.hpp"
#include "quatkit/apps/deblur.hpp"
#include "quatkit/apps/lorenz.hpp"
#include "quatkit/apps/optiq_demo.hpp"
#include "quatkit/apps/qtraj_demo.hpp"

namespace apps = quatkit::apps;

int main(int argc, char** argv) {
    CLI::App app{"quatkit: quaternion linear algebra demos and benchmarks"};
    app.require_subcommand(1);

    apps::CompletionConfig completion;
    auto* cmd_completion = app.add_subcommand("image_completion", "CUR-based quaternion image completion");
    cmd_completion->add_option("--size", completion.size, "image side length (synthetic input)");
    cmd_completion->add_option("--missing", completion.missing_fraction, "fraction of masked pixels");
    cmd_completion->add_option("--iters", completion.iterations, "completion iterations");
    cmd_completion->add_option("--rank1", completion.rank1, "sampled column count");
    cmd_completion->add_option("--rank2", completion.rank2, "sampled row count");
    cmd_completion->add_option("--ns_iters", completion.ns_max_iter, "Newton-Schulz budget per pseudoinverse");
    cmd_completion->add_flag_callback("--no-denoise", [&completion] { completion.denoise = false; },
                                      "disable the inter-iteration Gaussian smoothing");
    cmd_completion->add_option("--input", completion.input_ppm, "input PPM image");
    cmd_completion->add_option("--seed", completion.seed, "random seed");
    cmd_completion->add_option("--out", completion.out_dir, "output directory");

    apps::DeblurConfig deblur;
    auto* cmd_deblur = app.add_subcommand("image_deblurring", "QSLST and NS frequency-domain deblurring");
    cmd_deblur->add_option("--image,--input", deblur.input_ppm, "input PPM image");
    cmd_deblur->add_option("--size", deblur.size, "image side length (synthetic input)");
    cmd_deblur->add_option("--lam", deblur.lam, "Tikhonov regularization parameter");
    cmd_deblur->add_option("--snr", deblur.snr_db, "additive noise SNR in dB (omit for noiseless)");
    cmd_deblur->add_option("--psf_radius", deblur.psf_radius, "Gaussian PSF radius");
    cmd_deblur->add_option("--psf_sigma", deblur.psf_sigma, "Gaussian PSF standard deviation");
    cmd_deblur->add_option("--ns_mode", deblur.ns_mode, "fftT to run the NS frequency inversion, off to skip");
    cmd_deblur->add_option("--ns_iters", deblur.ns_iters, "NS iterations per frequency");
    cmd_deblur->add_option("--fftT_order", deblur.fftT_order, "NS order (2 or 3)");
    cmd_deblur->add_flag("--matrix", deblur.matrix_variant, "also run the dense matrix reference (small sizes)");
    cmd_deblur->add_option("--lam-grid", deblur.lam_grid, "lambda sweep values for lam_scan.csv");
    cmd_deblur->add_option("--seed", deblur.seed, "random seed");
    cmd_deblur->add_option("--out", deblur.out_dir, "output directory");

    apps::LorenzConfig lorenz;
    auto* cmd_lorenz = app.add_subcommand("lorenz_signal", "Lorenz attractor filtering via Q-GMRES");
    cmd_lorenz->add_option("--num_points", lorenz.num_points, "trajectory length");
    cmd_lorenz->add_option("--snr", lorenz.snr_db, "observation SNR in dB");
    cmd_lorenz->add_option("--tol", lorenz.tol, "solver tolerance");
    cmd_lorenz->add_option("--seed", lorenz.seed, "random seed");
    cmd_lorenz->add_option("--out", lorenz.out_dir, "output directory");

    apps::LorenzBenchConfig lorenz_bench;
    auto* cmd_lorenz_bench = app.add_subcommand("lorenz_benchmark", "solver comparison on the Lorenz system");
    cmd_lorenz_bench->add_option("--points", lorenz_bench.sizes, "system sizes");
    cmd_lorenz_bench->add_option("--methods", lorenz_bench.methods, "methods: qgmres qgmres_lu newton lu");
    cmd_lorenz_bench->add_option("--seeds", lorenz_bench.seeds, "seeds per cell");
    cmd_lorenz_bench->add_option("--snr", lorenz_bench.snr_db, "observation SNR in dB");
    cmd_lorenz_bench->add_option("--seed", lorenz_bench.seed, "base random seed");
    cmd_lorenz_bench->add_option("--out", lorenz_bench.out_dir, "output directory");

    apps::QsvdBenchConfig qsvd_bench;
    auto* cmd_qsvd = app.add_subcommand("qsvd_bench", "Q-SVD accuracy and runtime benchmark");
    cmd_qsvd->add_option("--n-passes", qsvd_bench.n_passes, "pass budget of the pass-efficient variant");
    cmd_qsvd->add_option("--oversample", qsvd_bench.oversample, "sketch oversampling");
    cmd_qsvd->add_option("--n-iter", qsvd_bench.n_iter, "power iterations of the randomized variant");
    cmd_qsvd->add_flag("--quick", qsvd_bench.quick, "reduced sizes for smoke runs");
    cmd_qsvd->add_option("--seed", qsvd_bench.seed, "random seed");
    cmd_qsvd->add_option("--out", qsvd_bench.out_dir, "output directory");

    apps::NsBenchConfig ns_bench;
    auto* cmd_ns = app.add_subcommand("ns_compare", "Newton-Schulz pseudoinverse comparison");
    cmd_ns->add_option("--tol", ns_bench.tol, "target tolerance on E1");
    cmd_ns->add_option("--max_iter", ns_bench.max_iter, "iteration budget");
    cmd_ns->add_flag("--quick", ns_bench.quick, "reduced sizes for smoke runs");
    cmd_ns->add_option("--seed", ns_bench.seed, "base random seed");
    cmd_ns->add_option("--out", ns_bench.out_dir, "output directory");

    apps::QgmresBenchConfig qgmres_bench;
    auto* cmd_qgmres = app.add_subcommand("qgmres_bench", "Q-GMRES benchmark with and without LU preconditioning");
    cmd_qgmres->add_option("--sizes", qgmres_bench.sizes, "system sizes");
    cmd_qgmres->add_option("--seeds", qgmres_bench.seeds, "seeds per cell");
    cmd_qgmres->add_option("--tol", qgmres_bench.tol, "solver tolerance");
    cmd_qgmres->add_flag("--quick", qgmres_bench.quick, "reduced sizes for smoke runs");
    cmd_qgmres->add_option("--seed", qgmres_bench.seed, "base random seed");
    cmd_qgmres->add_option("--out", qgmres_bench.out_dir, "output directory");

    apps::QtrajDemoConfig qtraj_demo;
    auto* cmd_qtraj = app.add_subcommand("qtraj_demo", "rotation-trajectory interpolation comparison");
    cmd_qtraj->add_option("--keyframes", qtraj_demo.num_keyframes, "number of keyframes");
    cmd_qtraj->add_option("--samples", qtraj_demo.samples, "dense grid size");
    cmd_qtraj->add_option("--seed", qtraj_demo.seed, "random seed");
    cmd_qtraj->add_option("--out", qtraj_demo.out_dir, "output directory");

    apps::OptiqKnownConfig optiq_known;
    auto* cmd_optiq = app.add_subcommand("optiq_known", "certified known-optimum SDP regression");
    cmd_optiq->add_option("--n", optiq_known.n, "matrix dimension");
    cmd_optiq->add_option("--r", optiq_known.r, "optimum rank");
    cmd_optiq->add_option("--m_extra", optiq_known.m_extra, "extra trace-free constraints");
    cmd_optiq->add_option("--mu0", optiq_known.mu0, "initial barrier parameter");
    cmd_optiq->add_option("--beta_mu", optiq_known.beta_mu, "geometric decay factor");
    cmd_optiq->add_option("--eps_gap", optiq_known.eps_gap, "gap floor");
    cmd_optiq->add_option("--tol", optiq_known.tol, "Newton tolerance");
    cmd_optiq->add_option("--seed", optiq_known.seed, "random seed");
    cmd_optiq->add_option("--out", optiq_known.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_completion->parsed()) {
            const apps::CompletionResult r = apps::image_completion_run(completion);
            std::printf("image_completion: final PSNR %.2f dB, rel error %.3e (%.1f s)\n", r.final_psnr,
                        r.final_rel_error, r.wall_time);
        } else if (cmd_deblur->parsed()) {
            if (cmd_deblur->count("--snr") == 0) deblur.snr_db = std::numeric_limits<double>::infinity();
            const apps::DeblurResult r = apps::deblur_run(deblur);
            std::printf("image_deblurring: degraded %.2f dB, QSLST %.2f dB", r.psnr_degraded, r.psnr_qslst);
            if (deblur.ns_mode == "fftT") std::printf(", NS-FFT %.2f dB", r.psnr_ns);
            std::printf(" (%.1f s)\n", r.wall_time);
        } else if (cmd_lorenz->parsed()) {
            const apps::LorenzResult r = apps::lorenz_run(lorenz);
            std::printf("lorenz_signal: residual %.3e in %d iterations%s (%.1f s)\n", r.residual_rel, r.iterations,
                        r.preconditioned ? " (left LU)" : "", r.wall_time);
        } else if (cmd_lorenz_bench->parsed()) {
            apps::lorenz_benchmark_run(lorenz_bench);
            std::printf("lorenz_benchmark: results in %s\n", lorenz_bench.out_dir.c_str());
        } else if (cmd_qsvd->parsed()) {
            apps::qsvd_bench_run(qsvd_bench);
            std::printf("qsvd_bench: results in %s\n", qsvd_bench.out_dir.c_str());
        } else if (cmd_ns->parsed()) {
            apps::ns_bench_run(ns_bench);
            std::printf("ns_compare: results in %s\n", ns_bench.out_dir.c_str());
        } else if (cmd_qgmres->parsed()) {
            apps::qgmres_bench_run(qgmres_bench);
            std::printf("qgmres_bench: results in %s\n", qgmres_bench.out_dir.c_str());
        } else if (cmd_qtraj->parsed()) {
            const apps::QtrajDemoResult r = apps::qtraj_demo_run(qtraj_demo);
            std::printf("qtraj_demo: max keyframe error %.2e, knot jumps slerp %.3f / squad %.4f\n",
                        r.max_keyframe_error, r.slerp_max_knot_jump, r.squad_max_knot_jump);
        } else if (cmd_optiq->parsed()) {
            const apps::OptiqKnownResult r = apps::optiq_known_run(optiq_known);
            std::printf("optiq_known: final relerr %.3e, worst feasibility %.2e, objective %.3e\n", r.final_relerr,
                        r.worst_feasibility, r.final_objective);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "quatkit: %s\n", e.what());
        return 1;
    }
    return 0;
}
