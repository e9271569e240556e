#pragma once

#include <string>
#include <vector>

#include "quatkit/apps/common.hpp"
#include "quatkit/optiq/optiq.hpp"
#include "quatkit/rng.hpp"

namespace quatkit::apps {

struct OptiqKnownConfig {
    int n = 8;
    int r = 3;
    int m_extra = 2;
    double eps_feas = 1e-2;  // warm-start interpolation parameter
    double mu0 = 1e-1;
    double beta_mu = 0.5;
    double eps_gap = 1e-8;
    double tol = 1e-10;
    int max_newton = 50;
    std::uint64_t seed = 0;
    std::string out_dir = "quatkit_out/optiq_known";

    json to_json() const {
        return {{"subcommand", "optiq_known"}, {"n", n},           {"r", r},
                {"m_extra", m_extra},          {"eps", eps_feas},  {"mu0", mu0},
                {"beta_mu", beta_mu},          {"eps_gap", eps_gap}, {"tol", tol},
                {"max_newton", max_newton},    {"seed", seed},     {"out", out_dir}};
    }
};

struct OptiqKnownResult {
    double final_relerr = 0.0;
    double final_objective = 0.0;
    double worst_feasibility = 0.0;
    std::vector<optiq::PathRecord> history;
};

/// Certified known-optimum regression run: builds the projector instance,
/// follows the barrier path, and exports the per-stage diagnostics together
/// with the problem data and the final/optimal matrices.
inline OptiqKnownResult optiq_known_run(const OptiqKnownConfig& cfg) {
    ensure_directory(cfg.out_dir);
    Rng rng(cfg.seed);
    const optiq::KnownOptimumInstance inst =
        optiq::build_known_optimum_instance(cfg.n, cfg.r, cfg.m_extra, cfg.eps_feas, rng);

    const double x_star_norm = inst.x_star.frobenius_norm();
    const auto relerr_hook = [&](const HermitianQuatMatrix& x) {
        return (x.matrix() - inst.x_star.matrix()).frobenius_norm() / x_star_norm;
    };
    const optiq::PathResult path = optiq::solve_barrier_path(inst.problem, inst.x_feas, cfg.mu0, cfg.beta_mu,
                                                             cfg.eps_gap, cfg.tol, cfg.max_newton, true, relerr_hook);

    CsvWriter csv(join_path(cfg.out_dir, "history.csv"),
                  {"mu", "obj", "feas", "relerr", "lambda_min", "lambda_max", "newton_iters"});
    OptiqKnownResult result;
    for (const optiq::PathRecord& rec : path.history) {
        csv.row(std::vector<double>{rec.mu, rec.objective, rec.feasibility, rec.relerr, rec.lambda_min, rec.lambda_max,
                                    static_cast<double>(rec.newton_iterations)});
        result.worst_feasibility = std::max(result.worst_feasibility, rec.feasibility);
    }
    result.history = path.history;
    result.final_relerr = path.history.back().relerr;
    result.final_objective = path.history.back().objective;

    std::vector<QuatMatrix> raw;
    for (const auto& h : inst.problem.H) raw.push_back(h.matrix());
    write_qsdp(join_path(cfg.out_dir, "problem.qsdp"), inst.problem.C.matrix(), raw, inst.problem.b);
    write_qmat(join_path(cfg.out_dir, "x_star.qmat"), inst.x_star.matrix());
    write_qmat(join_path(cfg.out_dir, "x_final.qmat"), path.state.X.matrix());

    write_json_file(join_path(cfg.out_dir, "summary.json"),
                    {{"config", cfg.to_json()},
                     {"stages", path.history.size()},
                     {"final_relerr", result.final_relerr},
                     {"final_objective", result.final_objective},
                     {"worst_feasibility", result.worst_feasibility},
                     {"final_mu", path.history.back().mu}});
    return result;
}

}  // namespace quatkit::apps
