#pragma once

#include <vector>

namespace quatkit::solvers {

/// Iteration diagnostics shared by the iterative solvers.
struct SolveInfo {
    int iterations = 0;
    std::vector<double> residual_history;  // initial residual plus one entry per iteration
    double final_residual = 0.0;
    bool converged = false;
    double wall_time = 0.0;  // seconds
    bool breakdown = false;  // Krylov breakdown (Q-GMRES)
    bool diverged = false;   // runaway residual growth
};

}  // namespace quatkit::solvers
