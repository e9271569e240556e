#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "quatkit/apps/common.hpp"
#include "quatkit/decomp/qr.hpp"
#include "quatkit/decomp/qsvd.hpp"
#include "quatkit/quat_matrix.hpp"
#include "quatkit/rng.hpp"
#include "quatkit/solvers/newton_schulz.hpp"
#include "quatkit/solvers/qgmres.hpp"

namespace quatkit::apps {

/// Rectangular matrix with geometrically decaying singular values built from
/// random orthonormal factors.
inline QuatMatrix decaying_matrix(Rng& rng, int m, int n, double decay) {
    QuatMatrix us = decomp::qr_qua(gaussian_matrix(rng, m, n)).Q;
    for (int j = 0; j < n; ++j) {
        const double s = std::pow(decay, j);
        for (int i = 0; i < m; ++i) us.set(i, j, us.at(i, j) * s);
    }
    return us * adjoint(decomp::qr_qua(gaussian_matrix(rng, n, n)).Q);
}

/// Hermitian matrix with a prescribed log-spaced spectrum in [lo, hi].
inline HermitianQuatMatrix hermitian_with_spectrum(Rng& rng, int n, double lo, double hi) {
    const QuatMatrix q = decomp::qr_qua(gaussian_matrix(rng, n, n)).Q;
    QuatMatrix qs = q;
    for (int j = 0; j < n; ++j) {
        const double s = lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(j) / (n - 1));
        for (int i = 0; i < n; ++i) qs.set(i, j, qs.at(i, j) * s);
    }
    return herm_part(qs * adjoint(q));
}

// ---------------------------------------------------------------- Q-SVD

struct QsvdBenchConfig {
    int oversample = 10;
    int n_iter = 2;
    int n_passes = 2;
    bool quick = false;  // shrink the matrix sizes for smoke runs
    std::uint64_t seed = 0;
    std::string out_dir = "quatkit_out/qsvd_bench";

    json to_json() const {
        return {{"subcommand", "qsvd_bench"}, {"oversample", oversample}, {"n_iter", n_iter},
                {"n_passes", n_passes},       {"quick", quick},           {"seed", seed},
                {"out", out_dir}};
    }
};

inline void qsvd_bench_run(const QsvdBenchConfig& cfg) {
    ensure_directory(cfg.out_dir);
    CsvWriter csv(join_path(cfg.out_dir, "qsvd_bench.csv"),
                  {"test", "method", "m", "n", "rank", "n_passes", "rel_error"});
    json timings = json::array();

    const auto record = [&](const std::string& test, const std::string& method, const QuatMatrix& x, int rank,
                            const decomp::QsvdResult& svd, double seconds) {
        const double err = (x - decomp::qsvd_reconstruct(svd)).frobenius_norm() / x.frobenius_norm();
        csv.row(std::vector<std::string>{test, method, std::to_string(x.rows()), std::to_string(x.cols()),
                                         std::to_string(rank), std::to_string(cfg.n_passes), format_double(err)});
        timings.push_back({{"test", test}, {"method", method}, {"m", x.rows()}, {"n", x.cols()}, {"seconds", seconds}});
    };
    const auto run_all = [&](const std::string& test, const QuatMatrix& x, int rank) {
        Rng r1(cfg.seed + 11), r2(cfg.seed + 13);
        Stopwatch t0;
        record(test, "classical", x, rank, decomp::classical_qsvd(x, rank), t0.seconds());
        Stopwatch t1;
        record(test, "randomized", x, rank, decomp::rand_qsvd(x, rank, cfg.oversample, cfg.n_iter, r1), t1.seconds());
        Stopwatch t2;
        record(test, "pass_efficient", x, rank, decomp::pass_eff_qsvd(x, rank, cfg.oversample, cfg.n_passes, r2),
               t2.seconds());
    };

    // exact low-rank recovery sanity check
    {
        Rng rng(cfg.seed + 1);
        const QuatMatrix x = gaussian_matrix(rng, 100, 10) * gaussian_matrix(rng, 10, 200);
        run_all("exact_rank10", x, 10);
    }
    // approximation error as a function of the target rank
    {
        Rng rng(cfg.seed + 2);
        const int m = cfg.quick ? 120 : 300, n = cfg.quick ? 80 : 200;
        const QuatMatrix x = decaying_matrix(rng, m, n, 0.95);
        const std::vector<int> ranks = cfg.quick ? std::vector<int>{5, 10, 20, 40} : std::vector<int>{5, 10, 20, 40, 60, 80, 100};
        for (int rank : ranks) run_all("error_vs_rank", x, rank);
    }
    // runtime scaling at fixed rank (desk-scale cap 600 x 450)
    {
        const std::vector<std::pair<int, int>> sizes = cfg.quick
                                                           ? std::vector<std::pair<int, int>>{{100, 80}, {200, 150}}
                                                           : std::vector<std::pair<int, int>>{{100, 80}, {200, 150}, {400, 300}, {600, 450}};
        for (const auto& [m, n] : sizes) {
            Rng rng(cfg.seed + 3 + m);
            const QuatMatrix x = decaying_matrix(rng, m, n, 0.9);
            run_all("runtime", x, 20);
        }
    }
    write_json_file(join_path(cfg.out_dir, "summary.json"), {{"config", cfg.to_json()}, {"timings", timings}});
}

// ---------------------------------------------------------------- Newton-Schulz

struct NsBenchConfig {
    double tol = 1e-8;
    int max_iter = 300;
    bool quick = false;
    std::uint64_t seed = 0;
    std::string out_dir = "quatkit_out/ns_compare";

    json to_json() const {
        return {{"subcommand", "ns_compare"}, {"tol", tol}, {"max_iter", max_iter},
                {"quick", quick},             {"seed", seed}, {"out", out_dir}};
    }
};

inline void ns_bench_run(const NsBenchConfig& cfg) {
    ensure_directory(cfg.out_dir);
    CsvWriter csv(join_path(cfg.out_dir, "ns_compare.csv"),
                  {"method", "family", "m", "n", "seed", "iterations", "e1", "e2", "e3", "e4", "success"});
    CsvWriter hist(join_path(cfg.out_dir, "ns_histories.csv"), {"method", "family", "m", "n", "seed", "iter", "e1"});
    json timings = json::array();

    struct Cell {
        std::string family;
        int m, n;
    };
    std::vector<Cell> cells = {{"dense", 20, 20}, {"dense", 40, 30}, {"illcond", 30, 20}, {"illcond", 60, 40}};
    if (cfg.quick) cells = {{"dense", 12, 12}, {"illcond", 16, 10}};
    const int n_seeds = cfg.quick ? 1 : 3;

    for (const Cell& cell : cells)
        for (int s = 0; s < n_seeds; ++s) {
            Rng rng(cfg.seed + 100 * s + cell.m + cell.n);
            const QuatMatrix a = cell.family == "dense" ? gaussian_matrix(rng, cell.m, cell.n)
                                                        : decaying_matrix(rng, cell.m, cell.n, 0.7);
            for (const std::string& method : {"ns_gamma1", "ns_gamma05", "ns_order3"}) {
                solvers::NsConfig ns;
                ns.tol = cfg.tol;
                ns.max_iter = cfg.max_iter;
                if (method == "ns_gamma05") ns.gamma = 0.5;
                if (method == "ns_order3") ns.order = 3;
                const Stopwatch timer;
                const auto [x, info] = method == "ns_order3" ? solvers::ns_pinv_higher_order(a, ns)
                                                             : solvers::ns_pinv(a, ns);
                const solvers::PenroseResiduals pr = solvers::penrose_residuals(a, x);
                csv.row(std::vector<std::string>{method, cell.family, std::to_string(cell.m), std::to_string(cell.n),
                                                 std::to_string(s), std::to_string(info.iterations),
                                                 format_double(pr.e1), format_double(pr.e2), format_double(pr.e3),
                                                 format_double(pr.e4), info.converged ? "1" : "0"});
                for (std::size_t k = 0; k < info.residual_history.size(); ++k)
                    hist.row(std::vector<std::string>{method, cell.family, std::to_string(cell.m),
                                                      std::to_string(cell.n), std::to_string(s), std::to_string(k),
                                                      format_double(info.residual_history[k])});
                timings.push_back({{"method", method},
                                   {"family", cell.family},
                                   {"m", cell.m},
                                   {"n", cell.n},
                                   {"seed", s},
                                   {"seconds", timer.seconds()}});
            }
        }
    write_json_file(join_path(cfg.out_dir, "summary.json"), {{"config", cfg.to_json()}, {"timings", timings}});
}

// ---------------------------------------------------------------- Q-GMRES

struct QgmresBenchConfig {
    std::vector<int> sizes{30, 60};
    int seeds = 3;
    double tol = 1e-10;
    bool quick = false;
    std::uint64_t seed = 0;
    std::string out_dir = "quatkit_out/qgmres_bench";

    json to_json() const {
        return {{"subcommand", "qgmres_bench"}, {"sizes", sizes}, {"seeds", seeds},
                {"tol", tol},                   {"quick", quick}, {"seed", seed},
                {"out", out_dir}};
    }
};

/// Builds the scenario system matrix: SPD (controlled spectrum in [1, 100]),
/// DENSE (random with a stabilizing diagonal shift), ILL-COND (Hermitian with
/// prescribed decay over three decades).
inline QuatMatrix qgmres_scenario_matrix(const std::string& scenario, Rng& rng, int n) {
    if (scenario == "spd") return hermitian_with_spectrum(rng, n, 1.0, 100.0).matrix();
    if (scenario == "dense")
        return gaussian_matrix(rng, n, n) + QuatMatrix::identity(n) * (2.0 * std::sqrt(static_cast<double>(n)));
    if (scenario == "illcond") return hermitian_with_spectrum(rng, n, 1e-3, 1.0).matrix();
    throw std::invalid_argument("qgmres_bench: unknown scenario " + scenario);
}

inline void qgmres_bench_run(const QgmresBenchConfig& cfg) {
    ensure_directory(cfg.out_dir);
    CsvWriter csv(join_path(cfg.out_dir, "qgmres_bench.csv"),
                  {"scenario", "method", "n", "seed", "iterations", "rel_error", "residual", "success"});
    json timings = json::array();

    const std::vector<int> sizes = cfg.quick ? std::vector<int>{16} : cfg.sizes;
    const int n_seeds = cfg.quick ? 1 : cfg.seeds;
    for (const std::string& scenario : {"spd", "dense", "illcond"})
        for (int n : sizes)
            for (int s = 0; s < n_seeds; ++s) {
                Rng rng(cfg.seed + 7919 * s + n);
                const QuatMatrix a = qgmres_scenario_matrix(scenario, rng, n);
                const QuatMatrix xs = gaussian_matrix(rng, n, 1);
                const QuatMatrix b = a * xs;
                for (const std::string& method : {"plain", "left_lu"}) {
                    solvers::QgmresOptions opts;
                    opts.tol = cfg.tol;
                    opts.max_iter = n;
                    if (method == "left_lu") opts.preconditioner = solvers::Preconditioner::left_lu;
                    const Stopwatch timer;
                    const auto [x, info] = solvers::qgmres_solve(a, b, opts);
                    const double rel = (x - xs).frobenius_norm() / xs.frobenius_norm();
                    csv.row(std::vector<std::string>{scenario, method, std::to_string(n), std::to_string(s),
                                                     std::to_string(info.iterations), format_double(rel),
                                                     format_double(info.final_residual), info.converged ? "1" : "0"});
                    timings.push_back({{"scenario", scenario},
                                       {"method", method},
                                       {"n", n},
                                       {"seed", s},
                                       {"seconds", timer.seconds()}});
                }
            }
    write_json_file(join_path(cfg.out_dir, "summary.json"), {{"config", cfg.to_json()}, {"timings", timings}});
}

}  // namespace quatkit::apps
