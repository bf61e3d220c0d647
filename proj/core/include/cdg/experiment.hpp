#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdg/decomposition.hpp"
#include "cdg/exact.hpp"
#include "cdg/solver.hpp"

namespace cdg {

/// Parameters of the boundary-layer benchmark harness.
struct ExperimentConfig {
    int n = 32;
    double eps = 1e-6;
    double sigma = 10.0;
    double tau = 1.0;
    int k = 1;
    std::vector<int> m_list;  // cG block sides to sweep; empty = 0..n
    SolverConfig solver;
    std::string out_dir = "out";
    double eps_max = 0.0;     // 0 = eps
    std::uint64_t seed = 0x5eed5u;
    int fine_data_quad = 8;   // boundary-data quadrature near the layer lines

    std::vector<int> resolved_m_list() const;
    ProblemSpec problem() const { return make_layer_problem(eps, sigma, eps_max); }
    std::string to_json() const;
};

/// Everything one decomposition case produces: the three solves, their energy
/// norms, pairwise differences, errors against the exact solution, and the
/// admissibility reports.
struct CaseResult {
    int m = -1;                 // cG block side; -1 for an explicit element set
    int dofs_cdg = 0;
    int dofs_dg = 0;
    double pct_of_dg = 0.0;

    SolveReport solve_dg, solve_decoupled, solve_standard;
    NormReport norm_dg, norm_decoupled, norm_standard;

    ErrorNorms diff_decoupled_dg;      // cdG (decoupled) vs dG
    ErrorNorms diff_standard_dg;       // cdG (standard) vs dG
    ErrorNorms diff_variants;          // decoupled vs standard
    ErrorNorms err_dg, err_decoupled, err_standard;  // vs exact solution

    InterfaceReport interface_report;
    PecletReport peclet_report;
    RhoReport rho_report;
    double sigma_ratio = 0.0;          // empirical min B_d(w,w)/||w||_d^2

    bool failed = false;               // a solve did not converge
    std::string failure;

    std::string to_json() const;
};

/// Solve the dG reference plus both cdG variants on the block decomposition
/// of side m (m = 0 pure dG, m = n pure cG), or on an explicit cG element
/// set. Solver failures are recorded in the result, not thrown.
CaseResult run_case(const ExperimentConfig& config, int m);
CaseResult run_case(const ExperimentConfig& config, const std::vector<bool>& cg_elements);

/// Dof-count and difference-norm sweep over config.m_list; writes table1.csv
/// (m, dofs, % of dG dofs, sqrt(eps)-weighted H1 differences) when out_dir is
/// nonempty.
std::vector<CaseResult> run_table1(const ExperimentConfig& config);

/// Full difference/error-norm sweep; writes figure4.csv.
std::vector<CaseResult> run_figure4(const ExperimentConfig& config);

/// H2 norms of the layer remainder over a grid of (eps, delta); writes
/// figure3.csv rows "eps,delta,h2_norm".
struct Figure3Row {
    double eps = 0.0;
    double delta = 0.0;
    double h2 = 0.0;
};
std::vector<Figure3Row> run_figure3(const std::vector<double>& eps_list,
                                    const std::vector<double>& delta_list,
                                    const std::string& out_dir = "");

/// The one-extra-element counterexample: the (n-1)-block decomposition plus
/// the single element [0.5, 0.5 + h] x [0, h] added to the cG region. The
/// interface check fails there and the cdG/dG difference jumps by orders of
/// magnitude. Requires n = 32.
CaseResult run_violation_case(const ExperimentConfig& config);

/// Admissibility reports only (no solves) for the block case m.
struct CheckResult {
    InterfaceReport interface_report;
    PecletReport peclet_report;
    RhoReport rho_report;
    double sigma_ratio = 0.0;
    bool all_pass = false;
    std::string to_json() const;
};
CheckResult run_check(const ExperimentConfig& config, int m);

/// Write a manifest (config, seed, per-case verdicts and residuals) to
/// out_dir/manifest.json.
void write_manifest(const ExperimentConfig& config, const std::vector<CaseResult>& cases,
                    const std::string& path);

}  // namespace cdg
