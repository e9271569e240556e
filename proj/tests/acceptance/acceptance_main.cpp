// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. The first argument is the path to
// the quatkit CLI binary (used by the determinism criterion).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "quatkit/quatkit.hpp"
#include "quatkit/apps/benchmarks.hpp"
#include "quatkit/apps/qtraj_demo.hpp"

#include "../support/oracles.hpp"

using namespace quatkit;

namespace {

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", index, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

// --- 1. embedding homomorphism suite ---------------------------------------

bool criterion_embedding() {
    Rng rng(1001);
    for (int t = 0; t < 100; ++t) {
        const QuatMatrix a = gaussian_matrix(rng, 3, 3);
        const QuatMatrix b = gaussian_matrix(rng, 3, 3);
        const Eigen::MatrixXd prod_lhs = real_expand(a * b);
        const Eigen::MatrixXd prod_rhs = real_expand(a) * real_expand(b);
        if ((prod_lhs - prod_rhs).norm() > 1e-12 * prod_lhs.norm()) return false;
        if ((real_expand(adjoint(a)) - real_expand(a).transpose()).norm() != 0.0) return false;
        if (!(real_contract(real_expand(a)) == a)) return false;
    }
    return true;
}

// --- 2. decomposition residual suite ----------------------------------------

bool criterion_decompositions(std::string& detail) {
    Rng rng(1002);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        {
            const QuatMatrix x = gaussian_matrix(rng, 12, 8);
            const decomp::QrResult qr = decomp::qr_qua(x);
            worst = std::max(worst, (x - qr.Q * qr.R).frobenius_norm() / x.frobenius_norm());
            worst = std::max(worst, oracles::ortho_deviation(qr.Q));
        }
        {
            const QuatMatrix a = gaussian_matrix(rng, 10, 10);
            const decomp::LuResult lu = decomp::quaternion_lu(a);
            worst = std::max(worst,
                             (decomp::apply_lu_permutation(lu, a) - lu.L * lu.U).frobenius_norm() / a.frobenius_norm());
        }
        {
            const HermitianQuatMatrix a = oracles::random_hpd(rng, 8);
            const QuatMatrix l = decomp::chol_quat_dense(a);
            worst = std::max(worst, (l * adjoint(l) - a.matrix()).frobenius_norm() / a.frobenius_norm());
        }
        {
            const HermitianQuatMatrix a = oracles::random_hermitian(rng, 8);
            const decomp::TridiagResult td = decomp::tridiagonalize(a);
            const QuatMatrix sim = td.P * a.matrix() * adjoint(td.P);
            worst = std::max(worst,
                             (sim - QuatMatrix::from_real(td.dense())).frobenius_norm() / a.frobenius_norm());
        }
        {
            const QuatMatrix x = gaussian_matrix(rng, 9, 7);
            const decomp::QsvdResult svd = decomp::classical_qsvd_full(x);
            worst = std::max(worst, (x - decomp::qsvd_reconstruct(svd)).frobenius_norm() / x.frobenius_norm());
        }
    }
    detail = "worst residual " + format_double(worst);
    return worst <= 1e-9;
}

// --- 3. exact rank-10 recovery ----------------------------------------------

bool criterion_rank10(std::string& detail) {
    Rng rng(1003);
    const QuatMatrix x = gaussian_matrix(rng, 100, 10) * gaussian_matrix(rng, 10, 200);
    const auto err = [&x](const decomp::QsvdResult& r) {
        return (x - decomp::qsvd_reconstruct(r)).frobenius_norm() / x.frobenius_norm();
    };
    Rng r1(1), r2(2);
    const double e_classical = err(decomp::classical_qsvd(x, 10));
    const double e_rand = err(decomp::rand_qsvd(x, 10, 10, 2, r1));
    const double e_pass = err(decomp::pass_eff_qsvd(x, 10, 10, 4, r2));
    detail = "classical " + format_double(e_classical) + ", randomized " + format_double(e_rand) +
             ", pass-efficient " + format_double(e_pass);
    return e_classical <= 1e-8 && e_rand <= 1e-8 && e_pass <= 1e-8;
}

// --- 4. Newton-Schulz recurrences and Penrose residuals ----------------------

bool criterion_newton_schulz(std::string& detail) {
    Rng rng(1004);
    const auto noise_floor = [](const QuatMatrix& a, const QuatMatrix& x) {
        return 5e-14 * (1.0 + a.frobenius_norm() * x.frobenius_norm());
    };

    // gamma = 1 on a square invertible matrix: E_{k+1} = E_k^2
    {
        const QuatMatrix a = gaussian_matrix(rng, 4, 4) + QuatMatrix::identity(4) * 6.0;
        const double sigma = solvers::detail::sigma_max_estimate(a);
        QuatMatrix x = adjoint(a) * (1.0 / (sigma * sigma));
        const QuatMatrix eye = QuatMatrix::identity(4);
        for (int k = 0; k < 12; ++k) {
            const QuatMatrix e_k = eye - a * x;
            x = x + x * (eye - a * x);
            const QuatMatrix e_next = eye - a * x;
            const double e2 = e_k.frobenius_norm() * e_k.frobenius_norm();
            if ((e_next - e_k * e_k).frobenius_norm() > 1e-10 * e2 + noise_floor(a, x)) {
                detail = "order-2 recurrence failed at step " + std::to_string(k);
                return false;
            }
        }
    }
    // order 3: E_{k+1} = E_k^3
    {
        const QuatMatrix a = gaussian_matrix(rng, 4, 4) + QuatMatrix::identity(4) * 6.0;
        const double sigma = solvers::detail::sigma_max_estimate(a);
        QuatMatrix x = adjoint(a) * (1.0 / (sigma * sigma));
        const QuatMatrix eye = QuatMatrix::identity(4);
        for (int k = 0; k < 8; ++k) {
            const QuatMatrix e_k = eye - a * x;
            x = x + x * (e_k + e_k * e_k);
            const QuatMatrix e_next = eye - a * x;
            const double e3 = std::pow(e_k.frobenius_norm(), 3);
            if ((e_next - e_k * e_k * e_k).frobenius_norm() > 1e-9 * std::max(1.0, e3) + noise_floor(a, x)) {
                detail = "order-3 recurrence failed at step " + std::to_string(k);
                return false;
            }
        }
    }
    // damped gamma = 0.5 on full column rank: F_{k+1} = (1-g)F_k + g F_k^2
    {
        const QuatMatrix a = gaussian_matrix(rng, 8, 3);
        const double sigma = solvers::detail::sigma_max_estimate(a);
        QuatMatrix x = adjoint(a) * (1.0 / (sigma * sigma));
        const QuatMatrix eye = QuatMatrix::identity(3);
        for (int k = 0; k < 20; ++k) {
            const QuatMatrix f_k = eye - x * a;
            x = x + ((eye - x * a) * x) * 0.5;
            const QuatMatrix f_next = eye - x * a;
            const QuatMatrix predicted = f_k * 0.5 + (f_k * f_k) * 0.5;
            if ((f_next - predicted).frobenius_norm() >
                1e-10 * std::max(1.0, predicted.frobenius_norm()) + noise_floor(a, x)) {
                detail = "damped recurrence failed at step " + std::to_string(k);
                return false;
            }
        }
    }
    // Penrose residuals against the SVD pseudoinverse oracle
    double worst_ns = 0.0, worst_oracle = 0.0;
    solvers::NsConfig cfg;
    cfg.tol = 1e-10;
    cfg.max_iter = 300;
    for (int t = 0; t < 20; ++t) {
        const int m = 4 + t % 5, n = 3 + t % 3;
        const QuatMatrix a = t % 2 ? gaussian_matrix(rng, m, n) : gaussian_matrix(rng, n, m);
        const auto [x, info] = solvers::ns_pinv(a, cfg);
        worst_ns = std::max(worst_ns, solvers::penrose_residuals(a, x).max());
        worst_oracle = std::max(worst_oracle, solvers::penrose_residuals(a, oracles::svd_pinv(a)).max());
    }
    detail = "worst NS Penrose " + format_double(worst_ns) + ", oracle " + format_double(worst_oracle);
    return worst_ns <= 1e-8 && worst_oracle <= 1e-8;
}

// --- 5. Q-GMRES recovery and benchmark --------------------------------------

bool criterion_qgmres(std::string& detail) {
    Rng rng(1005);
    for (int n : {20, 50}) {
        const QuatMatrix a =
            gaussian_matrix(rng, n, n) + QuatMatrix::identity(n) * (3.0 * std::sqrt(static_cast<double>(n)));
        const QuatMatrix xs = gaussian_matrix(rng, n, 1);
        const QuatMatrix b = a * xs;
        solvers::QgmresOptions opts;
        opts.tol = 1e-12;
        opts.max_iter = n;
        const auto [x, info] = solvers::qgmres_solve(a, b, opts);
        if ((x - xs).frobenius_norm() / xs.frobenius_norm() > 1e-8) {
            detail = "recovery failed at n = " + std::to_string(n);
            return false;
        }
        for (std::size_t k = 1; k < info.residual_history.size(); ++k)
            if (info.residual_history[k] > info.residual_history[k - 1] + 1e-12 * info.residual_history.front()) {
                detail = "residual history not nonincreasing at n = " + std::to_string(n);
                return false;
            }
        solvers::QgmresOptions prec = opts;
        prec.preconditioner = solvers::Preconditioner::left_lu;
        const auto [xp, infop] = solvers::qgmres_solve(a, b, prec);
        if (infop.iterations > 2 || !infop.converged) {
            detail = "preconditioned solve took " + std::to_string(infop.iterations) + " iterations";
            return false;
        }
    }

    // benchmark grid: preconditioned mean iterations <= plain in every scenario
    for (const std::string& scenario : {"spd", "dense", "illcond"}) {
        double plain_sum = 0.0, prec_sum = 0.0;
        int count = 0;
        for (int n : {30, 60})
            for (int s = 0; s < 3; ++s) {
                Rng cell(2000 + 7919 * s + n);
                const QuatMatrix a = apps::qgmres_scenario_matrix(scenario, cell, n);
                const QuatMatrix xs = gaussian_matrix(cell, n, 1);
                const QuatMatrix b = a * xs;
                for (int variant = 0; variant < 2; ++variant) {
                    solvers::QgmresOptions opts;
                    opts.tol = 1e-10;
                    opts.max_iter = n;
                    if (variant) opts.preconditioner = solvers::Preconditioner::left_lu;
                    const auto [x, info] = solvers::qgmres_solve(a, b, opts);
                    const double rel = (x - xs).frobenius_norm() / xs.frobenius_norm();
                    if (info.converged && rel > 1e-6) {
                        detail = scenario + ": converged run with relative error " + format_double(rel);
                        return false;
                    }
                    (variant ? prec_sum : plain_sum) += info.iterations;
                }
                ++count;
            }
        if (prec_sum / count > plain_sum / count) {
            detail = scenario + ": preconditioned mean " + format_double(prec_sum / count) + " > plain mean " +
                     format_double(plain_sum / count);
            return false;
        }
    }
    return true;
}

// --- 6. QSLST cross-validation ----------------------------------------------

bool criterion_qslst(std::string& detail) {
    Rng rng(1006);
    const auto random_rgb = [&rng](int n) {
        Eigen::MatrixXd r(n, n), g(n, n), b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                r(i, j) = rng.uniform();
                g(i, j) = rng.uniform();
                b(i, j) = rng.uniform();
            }
        return restore::image_from_rgb(r, g, b);
    };

    for (int n : {8, 16}) {
        const restore::QuatImage clean = random_rgb(n);
        const restore::Psf psf = restore::gaussian_psf(1, 0.8);
        const restore::QuatImage blurred = restore::apply_blur(clean, psf);
        const Eigen::MatrixXd a = restore::blur_matrix(psf, n, n);
        const double diff = (restore::qslst_restore_fft(blurred, psf, 1e-3).pixels -
                             restore::qslst_restore_matrix(blurred, a, 1e-3).pixels)
                                .max_abs();
        if (diff > 1e-8) {
            detail = "fft/matrix disagreement " + format_double(diff) + " at n = " + std::to_string(n);
            return false;
        }
    }
    {
        const restore::QuatImage clean = random_rgb(16);
        const restore::Psf psf = restore::gaussian_psf(2, 1.0);
        const restore::QuatImage blurred = restore::apply_blur(clean, psf);
        const double err = restore::rel_error(restore::qslst_restore_fft(blurred, psf, 1e-12), clean);
        if (err > 1e-6) {
            detail = "noiseless deconvolution error " + format_double(err);
            return false;
        }
    }
    {
        const restore::QuatImage clean = random_rgb(64);
        const restore::Psf psf = restore::gaussian_psf(4, 1.0);
        const restore::QuatImage blurred = restore::apply_blur(clean, psf);
        const double lam = 1e-6;
        const double psnr_qslst = restore::psnr(restore::qslst_restore_fft(blurred, psf, lam), clean);
        const double psnr_ns = restore::psnr(restore::ns_fft_restore(blurred, psf, lam, 25, 2), clean);
        detail = "PSNR qslst " + format_double(psnr_qslst) + " vs ns " + format_double(psnr_ns);
        if (std::abs(psnr_qslst - psnr_ns) > 0.1) return false;
    }
    return true;
}

// --- 7. trajectory suite -----------------------------------------------------

bool criterion_trajectories(std::string& detail) {
    Rng rng(1007);
    apps::QtrajDemoConfig cfg;
    cfg.seed = 1007;
    cfg.out_dir = "acceptance_out/qtraj";
    const apps::QtrajDemoResult demo = apps::qtraj_demo_run(cfg);
    if (demo.max_keyframe_error > 1e-10) {
        detail = "keyframe error " + format_double(demo.max_keyframe_error);
        return false;
    }
    if (demo.squad_max_knot_jump > demo.slerp_max_knot_jump) {
        detail = "squad jumps " + format_double(demo.squad_max_knot_jump) + " exceed slerp " +
                 format_double(demo.slerp_max_knot_jump);
        return false;
    }

    // unit norm along dense samples of all three interpolants
    const qtraj::KeyframeSequence seq = apps::demo_keyframes(5, rng);
    std::vector<double> grid(301);
    for (int i = 0; i < 301; ++i) grid[i] = i / 300.0;
    for (int method = 0; method < 3; ++method) {
        const qtraj::SampledTrajectory traj = method == 0   ? qtraj::piecewise_slerp(seq, grid)
                                              : method == 1 ? qtraj::squad(seq, grid)
                                                            : qtraj::logexp_spline(seq, grid);
        for (const Quaternion& q : traj.quats)
            if (std::abs(q.abs() - 1.0) > 1e-9) {
                detail = "non-unit sample from method " + std::to_string(method);
                return false;
            }
    }

    // constant angular speed along a single geodesic
    qtraj::SampledTrajectory geo;
    const Quaternion q1 = exp(Quaternion{0, 0.48, 0.64, 0.6} * 0.65);
    for (int i = 0; i <= 400; ++i) {
        geo.times.push_back(i / 400.0);
        geo.quats.push_back(qtraj::slerp(Quaternion::one(), q1, i / 400.0));
    }
    double lo = 1e300, hi = 0.0;
    for (const auto& s : qtraj::angular_velocity(geo)) {
        lo = std::min(lo, s.speed());
        hi = std::max(hi, s.speed());
    }
    if (hi - lo > 1e-6) {
        detail = "geodesic speed spread " + format_double(hi - lo);
        return false;
    }
    return true;
}

// --- 8. certified known-optimum SDP -------------------------------------------

bool criterion_optiq(std::string& detail) {
    Rng rng(1008);
    const int n = 8, r = 3;
    const optiq::KnownOptimumInstance inst = optiq::build_known_optimum_instance(n, r, 2, 1e-2, rng);
    const optiq::PathResult path = optiq::solve_barrier_path(inst.problem, inst.x_feas, 1e-1, 0.5, 1e-8, 1e-10, 50);
    for (const optiq::PathRecord& rec : path.history) {
        if (rec.feasibility > 1e-10) {
            detail = "feasibility " + format_double(rec.feasibility) + " at mu = " + format_double(rec.mu);
            return false;
        }
        if (rec.mu <= 1e-3) {
            const double scaled_obj = rec.objective / rec.mu;
            if (scaled_obj < 0.5 * (n - r) || scaled_obj > 2.0 * (n - r)) {
                detail = "objective scaling " + format_double(scaled_obj) + " at mu = " + format_double(rec.mu);
                return false;
            }
            const double scaled_eig = rec.lambda_min / rec.mu;
            if (scaled_eig < 0.1 || scaled_eig > 10.0) {
                detail = "spectral separation " + format_double(scaled_eig) + " at mu = " + format_double(rec.mu);
                return false;
            }
        }
    }
    const double relerr =
        (path.state.X.matrix() - inst.x_star.matrix()).frobenius_norm() / inst.x_star.frobenius_norm();
    detail = "final relative error " + format_double(relerr);
    return relerr <= 1e-5;
}

// --- 9. logdet oracle ----------------------------------------------------------

bool criterion_logdet(std::string& detail) {
    Rng rng(1009);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const HermitianQuatMatrix x = oracles::random_hpd(rng, 4 + t % 5);
        worst = std::max(worst, std::abs(optiq::logdet_hpd(x) - oracles::complex_embedding_logdet(x.matrix())));
    }
    detail = "worst deviation " + format_double(worst);
    return worst <= 1e-9;
}

// --- 10. CLI determinism ---------------------------------------------------------

bool run_cli(const std::string& binary, const std::string& args) {
    const std::string cmd = binary + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
}

std::vector<std::filesystem::path> csv_files(const std::string& dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv") out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

bool identical_files(const std::filesystem::path& a, const std::filesystem::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

bool criterion_determinism(const std::string& binary, std::string& detail) {
    const std::string base = "acceptance_out/determinism";
    std::filesystem::remove_all(base);
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"image_completion", "--size 32 --missing 0.3 --iters 6 --rank1 8 --rank2 8 --seed 11"},
        {"image_deblurring", "--size 32 --lam 1e-4 --snr 30 --seed 11 --lam-grid 1e-6 1e-4 1e-2"},
        {"lorenz_signal", "--num_points 60 --seed 11"},
        {"lorenz_benchmark", "--points 40 --seeds 1 --seed 11"},
        {"qsvd_bench", "--quick --seed 11"},
        {"ns_compare", "--quick --seed 11"},
        {"qgmres_bench", "--quick --seed 11"},
        {"qtraj_demo", "--seed 11"},
        {"optiq_known", "--seed 11"},
    };
    for (const auto& [sub, args] : runs) {
        const std::string dir_a = base + "/" + sub + "_a";
        const std::string dir_b = base + "/" + sub + "_b";
        if (!run_cli(binary, sub + " " + args + " --out " + dir_a) ||
            !run_cli(binary, sub + " " + args + " --out " + dir_b)) {
            detail = sub + ": CLI run failed";
            return false;
        }
        const auto files_a = csv_files(dir_a);
        const auto files_b = csv_files(dir_b);
        if (files_a.empty() || files_a.size() != files_b.size()) {
            detail = sub + ": CSV outputs missing";
            return false;
        }
        for (std::size_t i = 0; i < files_a.size(); ++i)
            if (!identical_files(files_a[i], files_b[i])) {
                detail = sub + ": " + files_a[i].filename().string() + " differs between reruns";
                return false;
            }
    }
    detail = std::to_string(runs.size()) + " subcommands byte-identical";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::create_directories("acceptance_out");
    std::string detail;

    report(1, "embedding homomorphism suite (100 pairs, 1e-12)", criterion_embedding());

    detail.clear();
    report(2, "decomposition residual suite (QR/LU/Cholesky/tridiagonal/Q-SVD, 1e-9)", criterion_decompositions(detail),
           detail);

    detail.clear();
    report(3, "exact rank-10 recovery (1e-8, all three Q-SVD variants)", criterion_rank10(detail), detail);

    detail.clear();
    report(4, "Newton-Schulz recurrences and Penrose residuals", criterion_newton_schulz(detail), detail);

    detail.clear();
    report(5, "Q-GMRES recovery and preconditioning benchmark", criterion_qgmres(detail), detail);

    detail.clear();
    report(6, "QSLST cross-validation (fft/matrix, deconvolution, NS filter)", criterion_qslst(detail), detail);

    detail.clear();
    report(7, "trajectory suite (keyframes, unit norm, geodesic speed, knot jumps)", criterion_trajectories(detail),
           detail);

    detail.clear();
    report(8, "certified known-optimum SDP path", criterion_optiq(detail), detail);

    detail.clear();
    report(9, "logdet complex-embedding oracle (50 instances, 1e-9)", criterion_logdet(detail), detail);

    detail.clear();
    if (argc > 1) {
        report(10, "CLI determinism (fixed seed, byte-identical CSVs)", criterion_determinism(argv[1], detail), detail);
    } else {
        report(10, "CLI determinism", false, "quatkit binary path not supplied");
    }

    if (failures == 0) std::printf("acceptance: all criteria passed\n");
    return failures;
}
