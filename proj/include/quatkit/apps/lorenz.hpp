#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "quatkit/apps/common.hpp"
#include "quatkit/decomp/lu.hpp"
#include "quatkit/quat_matrix.hpp"
#include "quatkit/rng.hpp"
#include "quatkit/solvers/newton_schulz.hpp"
#include "quatkit/solvers/qgmres.hpp"
#include "quatkit/solvers/triangular.hpp"

namespace quatkit::apps {

struct LorenzParams {
    double sigma = 10.0;
    double beta = 8.0 / 3.0;
    double rho = 28.0;
};

/// Fixed-step RK4 integration of the Lorenz system from (1, 1, 1).
inline std::vector<std::array<double, 3>> integrate_lorenz(int num_points, double dt = 0.01,
                                                           const LorenzParams& p = {}) {
    const auto f = [&p](const std::array<double, 3>& s) {
        return std::array<double, 3>{p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1],
                                     s[0] * s[1] - p.beta * s[2]};
    };
    std::vector<std::array<double, 3>> out;
    out.reserve(num_points);
    std::array<double, 3> s{1.0, 1.0, 1.0};
    out.push_back(s);
    for (int i = 1; i < num_points; ++i) {
        const auto k1 = f(s);
        std::array<double, 3> tmp;
        for (int c = 0; c < 3; ++c) tmp[c] = s[c] + 0.5 * dt * k1[c];
        const auto k2 = f(tmp);
        for (int c = 0; c < 3; ++c) tmp[c] = s[c] + 0.5 * dt * k2[c];
        const auto k3 = f(tmp);
        for (int c = 0; c < 3; ++c) tmp[c] = s[c] + dt * k3[c];
        const auto k4 = f(tmp);
        for (int c = 0; c < 3; ++c) s[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        out.push_back(s);
    }
    return out;
}

/// Pure-quaternion encoding q(t) = x i + y j + z k as an N x 1 column.
inline QuatMatrix encode_pure_signal(const std::vector<std::array<double, 3>>& states) {
    QuatMatrix q(static_cast<int>(states.size()), 1);
    for (int i = 0; i < q.rows(); ++i) q.set(i, 0, {0.0, states[i][0], states[i][1], states[i][2]});
    return q;
}

/// Lower-triangular quaternion Toeplitz system from shifted copies of the
/// signal: A[i][l] = s_{i-l} for i >= l.
inline QuatMatrix toeplitz_from_signal(const QuatMatrix& s) {
    const int n = s.rows();
    QuatMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l <= i; ++l) a.set(i, l, s.at(i - l, 0));
    return a;
}

/// Additive Gaussian noise on the three vector components at the given SNR.
inline QuatMatrix add_signal_noise(const QuatMatrix& q, double snr_db, Rng& rng) {
    if (std::isinf(snr_db)) return q;
    const double sigma = q.frobenius_norm() * std::pow(10.0, -snr_db / 20.0) / std::sqrt(3.0 * q.rows());
    QuatMatrix s = q;
    for (int i = 0; i < s.rows(); ++i) {
        const Quaternion v = s.at(i, 0);
        s.set(i, 0, {v.w, v.x + sigma * rng.gaussian(), v.y + sigma * rng.gaussian(), v.z + sigma * rng.gaussian()});
    }
    return s;
}

struct LorenzConfig {
    int num_points = 100;
    double dt = 0.01;
    double snr_db = 20.0;
    double tol = 1e-10;
    int precondition_above = 200;  // automatic left LU beyond this size
    std::uint64_t seed = 0;
    std::string out_dir = "quatkit_out/lorenz_signal";

    json to_json() const {
        return {{"subcommand", "lorenz_signal"}, {"num_points", num_points}, {"dt", dt},   {"snr", snr_db},
                {"tol", tol},                    {"seed", seed},             {"out", out_dir}};
    }
};

struct LorenzResult {
    double residual_rel = 0.0;
    int iterations = 0;
    bool preconditioned = false;
    double wall_time = 0.0;
};

inline LorenzResult lorenz_run(const LorenzConfig& cfg) {
    if (cfg.num_points < 10) throw std::invalid_argument("lorenz_signal: need at least 10 points");
    const Stopwatch timer;
    ensure_directory(cfg.out_dir);
    Rng rng(cfg.seed);
    const LorenzParams params;

    const auto states = integrate_lorenz(cfg.num_points, cfg.dt, params);
    const QuatMatrix clean = encode_pure_signal(states);
    const QuatMatrix noisy = add_signal_noise(clean, cfg.snr_db, rng);
    const QuatMatrix a = toeplitz_from_signal(noisy);

    solvers::QgmresOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.num_points;
    opts.preconditioner =
        cfg.num_points > cfg.precondition_above ? solvers::Preconditioner::left_lu : solvers::Preconditioner::none;
    bool preconditioner_singular = false;
    auto solved = [&] {
        if (opts.preconditioner == solvers::Preconditioner::left_lu) {
            try {
                return solvers::qgmres_solve(a, clean, opts);
            } catch (const std::domain_error&) {
                // numerically singular LU factor; long Toeplitz systems from
                // this signal can be rank deficient in double precision
                preconditioner_singular = true;
                opts.preconditioner = solvers::Preconditioner::none;
            }
        }
        return solvers::qgmres_solve(a, clean, opts);
    }();
    const QuatMatrix& h = solved.first;
    const solvers::SolveInfo& info = solved.second;
    const QuatMatrix reconstructed = a * h;

    const auto write_traj = [&](const std::string& name, const QuatMatrix& sig) {
        CsvWriter csv(join_path(cfg.out_dir, name), {"t", "x", "y", "z"});
        for (int i = 0; i < sig.rows(); ++i) {
            const Quaternion v = sig.at(i, 0);
            csv.row(std::vector<double>{i * cfg.dt, v.x, v.y, v.z});
        }
    };
    write_traj("trajectory_clean.csv", clean);
    write_traj("trajectory_noisy.csv", noisy);
    write_traj("trajectory_reconstructed.csv", reconstructed);

    LorenzResult result;
    result.residual_rel = (reconstructed - clean).frobenius_norm() / clean.frobenius_norm();
    result.iterations = info.iterations;
    result.preconditioned = opts.preconditioner == solvers::Preconditioner::left_lu;
    result.wall_time = timer.seconds();

    write_json_file(join_path(cfg.out_dir, "summary.json"),
                    {{"config", cfg.to_json()},
                     {"lorenz_parameters", {{"sigma", params.sigma}, {"beta", params.beta}, {"rho", params.rho}}},
                     {"residual_rel", result.residual_rel},
                     {"iterations", result.iterations},
                     {"converged", info.converged},
                     {"preconditioned", result.preconditioned},
                     {"preconditioner_singular", preconditioner_singular},
                     {"wall_time_seconds", result.wall_time}});
    return result;
}

struct LorenzBenchConfig {
    std::vector<int> sizes{50, 100, 200};
    std::vector<std::string> methods{"qgmres", "qgmres_lu", "newton", "lu"};
    int seeds = 2;
    double snr_db = 20.0;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    std::string out_dir = "quatkit_out/lorenz_benchmark";

    json to_json() const {
        return {{"subcommand", "lorenz_benchmark"}, {"sizes", sizes}, {"methods", methods},
                {"seeds", seeds},                   {"snr", snr_db},  {"tol", tol},
                {"seed", seed},                     {"out", out_dir}};
    }
};

/// Compares Q-GMRES (plain and LU-preconditioned), Newton-Schulz
/// pseudoinverse solves, and direct LU solves on the same filter
/// identification task.
inline void lorenz_benchmark_run(const LorenzBenchConfig& cfg) {
    ensure_directory(cfg.out_dir);
    CsvWriter csv(join_path(cfg.out_dir, "lorenz_benchmark.csv"),
                  {"method", "n", "seed", "iterations", "residual_rel", "success"});
    json timings = json::array();

    for (int n : cfg.sizes)
        for (int s = 0; s < cfg.seeds; ++s) {
            Rng rng(cfg.seed + 1000 * s + n);
            const QuatMatrix clean = encode_pure_signal(integrate_lorenz(n));
            const QuatMatrix noisy = add_signal_noise(clean, cfg.snr_db, rng);
            const QuatMatrix a = toeplitz_from_signal(noisy);

            for (const std::string& method : cfg.methods) {
                const Stopwatch timer;
                QuatMatrix h(n, 1);
                int iterations = 0;
                bool failed = false;
                try {
                if (method == "qgmres" || method == "qgmres_lu") {
                    solvers::QgmresOptions opts;
                    opts.tol = cfg.tol;
                    opts.max_iter = n;
                    if (method == "qgmres_lu") opts.preconditioner = solvers::Preconditioner::left_lu;
                    auto [x, info] = solvers::qgmres_solve(a, clean, opts);
                    h = x;
                    iterations = info.iterations;
                } else if (method == "newton") {
                    solvers::NsConfig ns;
                    ns.tol = cfg.tol * clean.frobenius_norm();
                    ns.max_iter = 200;
                    auto [pinv, info] = solvers::ns_pinv(a, ns);
                    h = pinv * clean;
                    iterations = info.iterations;
                } else if (method == "lu") {
                    const decomp::LuResult lu = decomp::quaternion_lu(a);
                    const QuatMatrix pb = decomp::apply_lu_permutation(lu, clean);
                    h = solvers::triangular_solve(lu.U, solvers::triangular_solve(lu.L, pb, solvers::TriangularSide::lower),
                                                  solvers::TriangularSide::upper);
                    iterations = 1;
                } else {
                    throw std::invalid_argument("lorenz_benchmark: unknown method " + method);
                }
                } catch (const std::domain_error&) {
                    failed = true;  // numerically singular factor at this size
                } catch (const std::runtime_error&) {
                    failed = true;  // solver divergence
                }
                const double residual =
                    failed ? std::numeric_limits<double>::infinity()
                           : (a * h - clean).frobenius_norm() / clean.frobenius_norm();
                csv.row(std::vector<std::string>{method, std::to_string(n), std::to_string(s),
                                                 std::to_string(iterations), format_double(residual),
                                                 residual <= 1e-6 ? "1" : "0"});
                timings.push_back({{"method", method}, {"n", n}, {"seed", s}, {"seconds", timer.seconds()}});
            }
        }
    write_json_file(join_path(cfg.out_dir, "summary.json"), {{"config", cfg.to_json()}, {"timings", timings}});
}

}  // namespace quatkit::apps
