#pragma once

#include <string>

#include "cdg/assembly.hpp"

namespace cdg {

enum class SolverMethod { Auto, DirectLU, GMRES };
enum class Preconditioner { None, Diagonal, ILU0 };

struct SolverConfig {
    SolverMethod method = SolverMethod::Auto;  // Auto: LU up to 20000 dofs, then GMRES
    double tol = 1e-12;                        // relative residual target
    int max_iter = 2000;
    int restart = 60;
    Preconditioner precond = Preconditioner::ILU0;
};

struct SolveReport {
    bool converged = false;
    std::string method;     // "lu" or "gmres"
    int iterations = 0;     // 0 for the direct path
    double residual = 0.0;  // achieved relative residual
};

struct SolveResult {
    Eigen::VectorXd x;
    SolveReport report;
};

/// Solve the assembled system. Throws std::invalid_argument on dimension
/// mismatch and std::runtime_error on a structurally singular factorization;
/// iterative nonconvergence is reported, not thrown.
SolveResult solve(const SparseSystem& system, const SolverConfig& config = {});

}  // namespace cdg
