#include "cdg/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "cdg/function.hpp"

namespace cdg {

namespace {

using nlohmann::json;

json report_json(const InterfaceReport& r) {
    return {{"pass", r.pass},
            {"min_margin", r.min_margin},
            {"max_feasible_sigma", r.max_feasible_sigma},
            {"n_interface_edges", r.edges.size()}};
}

json report_json(const PecletReport& r) {
    return {{"pass", r.pass},
            {"min_peclet", r.min_peclet},
            {"min_peclet_at_eps_max", r.min_peclet_at_eps_max},
            {"max_h_over_b", r.max_h_over_b},
            {"max_h", r.max_h}};
}

json report_json(const RhoReport& r) { return {{"pass", r.pass}, {"rho", r.rho}}; }

json solve_json(const SolveReport& r) {
    return {{"converged", r.converged},
            {"method", r.method},
            {"iterations", r.iterations},
            {"residual", r.residual}};
}

json errors_json(const ErrorNorms& e) {
    return {{"l2", e.l2}, {"h1_eps", e.h1_eps}, {"jump", e.jump}};
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw std::runtime_error("cannot open output file " + name + " in " + dir);
    out.precision(17);
    return out;
}

// One mesh + problem + dG reference solve, shared across a sweep.
class Harness {
public:
    explicit Harness(const ExperimentConfig& cfg)
        : cfg_(cfg),
          mesh_(build_structured_mesh(cfg.n)),
          spec_(cfg.problem()),
          exact_(cfg.eps),
          dg_decomp_(decompose(mesh_, std::vector<bool>(mesh_.n_elements(), false), spec_.b)),
          dg_space_(build_space(mesh_, dg_decomp_, SpaceKind::DG, cfg.k)) {
        double reach = 4.0 * std::sqrt(cfg.eps);
        opts_.fine_data_quad = cfg.fine_data_quad;
        opts_.fine_data_edge = [reach](const Mesh& mesh, int edge) {
            Point a = mesh.vertices[mesh.edges[edge].v0];
            Point b = mesh.vertices[mesh.edges[edge].v1];
            return std::min(a.x, b.x) <= reach || std::min(a.y, b.y) <= reach;
        };
        SparseSystem sys =
            assemble_system(dg_space_, dg_decomp_, spec_, DiffusionVariant::Standard, opts_);
        dg_result_ = solve(sys, cfg_.solver);
        dg_fn_ = DiscreteFunction(dg_space_, dg_result_.x);
    }

    const DofSpace& dg_space() const { return dg_space_; }
    const DiscreteFunction& dg_solution() const { return dg_fn_; }

    CaseResult run(const std::vector<bool>& cg_elements, int m_label) const {
        CaseResult r;
        r.m = m_label;
        Decomposition decomp = decompose(mesh_, cg_elements, spec_.b);
        DofSpace space = build_space(mesh_, decomp, SpaceKind::CDG, cfg_.k);
        r.dofs_cdg = space.n_dofs;
        r.dofs_dg = dg_space_.n_dofs;
        r.pct_of_dg = 100.0 * r.dofs_cdg / r.dofs_dg;

        r.interface_report =
            check_interface_assumption(decomp, spec_.b, spec_.eps_max, spec_.sigma);
        r.peclet_report = check_peclet(mesh_, spec_.b, spec_.eps, spec_.eps_max, &decomp);
        r.rho_report = check_rho(spec_.c, spec_.b, mesh_);
        SparseMatrix diff_std =
            assemble_diffusion(space, decomp, spec_, DiffusionVariant::Standard, opts_);
        r.sigma_ratio = sigma_diagnostic(diff_std, space, decomp, spec_, 20, cfg_.seed);

        r.solve_dg = dg_result_.report;
        ExactFn exact = exact_.exact_fn();
        r.err_dg = error_norms(dg_fn_, exact, spec_.eps);
        r.norm_dg = sdg_norm(dg_fn_, decomp, spec_, cfg_.tau);

        DiscreteFunction sol[2];
        DiffusionVariant variants[2] = {DiffusionVariant::Decoupled, DiffusionVariant::Standard};
        for (int v = 0; v < 2; ++v) {
            try {
                SparseSystem sys = assemble_system(space, decomp, spec_, variants[v], opts_);
                SolveResult res = solve(sys, cfg_.solver);
                (v == 0 ? r.solve_decoupled : r.solve_standard) = res.report;
                if (!res.report.converged) {
                    r.failed = true;
                    r.failure += (v == 0 ? "decoupled" : "standard");
                    r.failure += " solve did not converge; ";
                }
                sol[v] = DiscreteFunction(space, res.x);
            } catch (const std::exception& e) {
                r.failed = true;
                r.failure += e.what();
                r.failure += "; ";
            }
        }
        if (r.failed && (sol[0].space == nullptr || sol[1].space == nullptr)) return r;

        r.norm_decoupled = sdg_norm(sol[0], decomp, spec_, cfg_.tau);
        r.norm_standard = sdg_norm(sol[1], decomp, spec_, cfg_.tau);
        r.err_decoupled = error_norms(sol[0], exact, spec_.eps);
        r.err_standard = error_norms(sol[1], exact, spec_.eps);

        DiscreteFunction dec_dg = inject(sol[0], dg_space_);
        DiscreteFunction std_dg = inject(sol[1], dg_space_);
        r.diff_decoupled_dg = difference_norms(dec_dg, dg_fn_, spec_.eps);
        r.diff_standard_dg = difference_norms(std_dg, dg_fn_, spec_.eps);
        r.diff_variants = difference_norms(dec_dg, std_dg, spec_.eps);
        return r;
    }

    CaseResult run(int m) const { return run(cg_block(mesh_, m), m); }

private:
    ExperimentConfig cfg_;
    Mesh mesh_;
    ProblemSpec spec_;
    LayerSolution exact_;
    Decomposition dg_decomp_;
    DofSpace dg_space_;
    AssemblyOptions opts_;
    SolveResult dg_result_;
    DiscreteFunction dg_fn_;
};

void write_table1_csv(const std::string& dir, const std::vector<CaseResult>& cases) {
    auto out = open_out(dir, "table1.csv");
    out << "m,dofs,pct_of_dg,h1_eps_diff_decoupled,h1_eps_diff_standard\n";
    for (const CaseResult& c : cases)
        out << c.m << ',' << c.dofs_cdg << ',' << c.pct_of_dg << ',' << c.diff_decoupled_dg.h1_eps
            << ',' << c.diff_standard_dg.h1_eps << '\n';
}

void write_figure4_csv(const std::string& dir, const std::vector<CaseResult>& cases) {
    auto out = open_out(dir, "figure4.csv");
    out << "m,dofs,"
           "l2_diff_decoupled,h1_eps_diff_decoupled,jump_diff_decoupled,"
           "l2_diff_standard,h1_eps_diff_standard,jump_diff_standard,"
           "l2_err_decoupled,h1_eps_err_decoupled,jump_err_decoupled,"
           "l2_err_dg,h1_eps_err_dg,jump_err_dg\n";
    for (const CaseResult& c : cases)
        out << c.m << ',' << c.dofs_cdg << ','                                      //
            << c.diff_decoupled_dg.l2 << ',' << c.diff_decoupled_dg.h1_eps << ','   //
            << c.diff_decoupled_dg.jump << ','                                      //
            << c.diff_standard_dg.l2 << ',' << c.diff_standard_dg.h1_eps << ','     //
            << c.diff_standard_dg.jump << ','                                       //
            << c.err_decoupled.l2 << ',' << c.err_decoupled.h1_eps << ','           //
            << c.err_decoupled.jump << ','                                          //
            << c.err_dg.l2 << ',' << c.err_dg.h1_eps << ',' << c.err_dg.jump << '\n';
}

}  // namespace

std::vector<int> ExperimentConfig::resolved_m_list() const {
    if (!m_list.empty()) return m_list;
    std::vector<int> all(n + 1);
    for (int m = 0; m <= n; ++m) all[m] = m;
    return all;
}

std::string ExperimentConfig::to_json() const {
    json j{{"n", n},
           {"eps", eps},
           {"sigma", sigma},
           {"tau", tau},
           {"k", k},
           {"m_list", resolved_m_list()},
           {"eps_max", eps_max > 0.0 ? eps_max : eps},
           {"seed", seed},
           {"fine_data_quad", fine_data_quad},
           {"out_dir", out_dir},
           {"solver",
            {{"method", solver.method == SolverMethod::GMRES      ? "gmres"
                        : solver.method == SolverMethod::DirectLU ? "lu"
                                                                  : "auto"},
             {"tol", solver.tol},
             {"max_iter", solver.max_iter},
             {"restart", solver.restart}}}};
    return j.dump(2);
}

std::string CaseResult::to_json() const {
    json j{{"m", m},
           {"dofs_cdg", dofs_cdg},
           {"dofs_dg", dofs_dg},
           {"pct_of_dg", pct_of_dg},
           {"failed", failed},
           {"failure", failure},
           {"solves",
            {{"dg", solve_json(solve_dg)},
             {"decoupled", solve_json(solve_decoupled)},
             {"standard", solve_json(solve_standard)}}},
           {"checks",
            {{"interface", report_json(interface_report)},
             {"peclet", report_json(peclet_report)},
             {"rho", report_json(rho_report)},
             {"sigma_ratio", sigma_ratio}}},
           {"differences",
            {{"decoupled_vs_dg", errors_json(diff_decoupled_dg)},
             {"standard_vs_dg", errors_json(diff_standard_dg)},
             {"decoupled_vs_standard", errors_json(diff_variants)}}},
           {"errors",
            {{"dg", errors_json(err_dg)},
             {"decoupled", errors_json(err_decoupled)},
             {"standard", errors_json(err_standard)}}}};
    return j.dump(2);
}

std::string CheckResult::to_json() const {
    json j{{"all_pass", all_pass},
           {"interface", report_json(interface_report)},
           {"peclet", report_json(peclet_report)},
           {"rho", report_json(rho_report)},
           {"sigma_ratio", sigma_ratio}};
    return j.dump(2);
}

CaseResult run_case(const ExperimentConfig& config, int m) {
    return Harness(config).run(m);
}

CaseResult run_case(const ExperimentConfig& config, const std::vector<bool>& cg_elements) {
    return Harness(config).run(cg_elements, -1);
}

std::vector<CaseResult> run_table1(const ExperimentConfig& config) {
    Harness harness(config);
    std::vector<CaseResult> cases;
    for (int m : config.resolved_m_list()) cases.push_back(harness.run(m));
    if (!config.out_dir.empty()) {
        write_table1_csv(config.out_dir, cases);
        write_manifest(config, cases,
                       (std::filesystem::path(config.out_dir) / "manifest.json").string());
    }
    return cases;
}

std::vector<CaseResult> run_figure4(const ExperimentConfig& config) {
    Harness harness(config);
    std::vector<CaseResult> cases;
    for (int m : config.resolved_m_list()) cases.push_back(harness.run(m));
    if (!config.out_dir.empty()) {
        write_figure4_csv(config.out_dir, cases);
        write_manifest(config, cases,
                       (std::filesystem::path(config.out_dir) / "manifest.json").string());
    }
    return cases;
}

std::vector<Figure3Row> run_figure3(const std::vector<double>& eps_list,
                                    const std::vector<double>& delta_list,
                                    const std::string& out_dir) {
    std::vector<Figure3Row> rows;
    for (double eps : eps_list)
        for (double delta : delta_list)
            rows.push_back({eps, delta, h2_norm_u_eps(delta, eps)});
    if (!out_dir.empty()) {
        auto out = open_out(out_dir, "figure3.csv");
        out << "eps,delta,h2_norm\n";
        for (const Figure3Row& r : rows)
            out << r.eps << ',' << r.delta << ',' << r.h2 << '\n';
    }
    return rows;
}

CaseResult run_violation_case(const ExperimentConfig& config) {
    if (config.n != 32)
        throw std::invalid_argument("run_violation_case: the counterexample is fixed to n = 32");
    Harness harness(config);
    Mesh mesh = build_structured_mesh(config.n);  // for index arithmetic only
    std::vector<bool> mask = cg_block(mesh, config.n - 1);
    // one extra cG element halfway along the outflow boundary: [0.5,0.5+h]x[0,h]
    mask[mesh.element_index(config.n / 2, 0)] = true;
    return harness.run(mask, -1);
}

CheckResult run_check(const ExperimentConfig& config, int m) {
    Mesh mesh = build_structured_mesh(config.n);
    ProblemSpec spec = config.problem();
    Decomposition decomp = decompose(mesh, cg_block(mesh, m), spec.b);
    DofSpace space = build_space(mesh, decomp, SpaceKind::CDG, config.k);

    CheckResult r;
    r.interface_report = check_interface_assumption(decomp, spec.b, spec.eps_max, spec.sigma);
    r.peclet_report = check_peclet(mesh, spec.b, spec.eps, spec.eps_max, &decomp);
    r.rho_report = check_rho(spec.c, spec.b, mesh);
    SparseMatrix diff_std = assemble_diffusion(space, decomp, spec, DiffusionVariant::Standard);
    r.sigma_ratio = sigma_diagnostic(diff_std, space, decomp, spec, 20, config.seed);
    r.all_pass = r.interface_report.pass && r.peclet_report.pass && r.rho_report.pass &&
                 r.sigma_ratio >= 0.5 - 1e-9;
    return r;
}

void write_manifest(const ExperimentConfig& config, const std::vector<CaseResult>& cases,
                    const std::string& path) {
    json j;
    j["config"] = json::parse(config.to_json());
    auto& arr = j["cases"] = json::array();
    for (const CaseResult& c : cases) arr.push_back(json::parse(c.to_json()));
    std::filesystem::create_directories(std::filesystem::path(path).parent_path().string().empty()
                                            ? "."
                                            : std::filesystem::path(path).parent_path().string());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << '\n';
}

}  // namespace cdg
