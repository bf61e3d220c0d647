#include "cdg/norms.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "cdg/projection.hpp"
#include "cdg/quadrature.hpp"

namespace cdg {

namespace {

int default_quad(const DofSpace& space, int quad_points) {
    return quad_points > 0 ? quad_points : 2 * (space.k + 1);
}

// Jump of v at edge parameter t: trace(elem[0]) - trace(elem[1]) along the
// stored normal; on the boundary the jump convention [v] = v n makes the
// squared jump just the squared trace.
double edge_jump(const DiscreteFunction& v, const Mesh& mesh, int edge, double t) {
    const Edge& ed = mesh.edges[edge];
    Point ref0 = edge_side_ref(mesh.side_of(ed.elem[0], edge), t);
    double j = v.value(ed.elem[0], ref0);
    if (!ed.is_boundary()) {
        Point ref1 = edge_side_ref(mesh.side_of(ed.elem[1], edge), t);
        j -= v.value(ed.elem[1], ref1);
    }
    return j;
}

// max-magnitude velocity component over a corner-inclusive element grid
double b_linf(const VectorField& b, const Mesh& mesh, int e, const std::vector<double>& pts) {
    double bmax = 0.0;
    for (double ty : pts)
        for (double tx : pts) {
            Point v = b.value(mesh.map_to_physical(e, {tx, ty}));
            bmax = std::max({bmax, std::abs(v.x), std::abs(v.y)});
        }
    return bmax;
}

Eigen::VectorXd random_member(const DofSpace& space, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd w(space.n_dofs);
    for (int i = 0; i < space.n_dofs; ++i) w[i] = gauss(rng);
    for (int d : space.constrained_dofs) w[d] = 0.0;  // homogeneous analysis setting
    return w;
}

}  // namespace

std::string NormReport::to_json() const {
    nlohmann::json j{{"d2", d2},
                     {"ar2", ar2},
                     {"triple2", triple2},
                     {"streamline2", streamline2},
                     {"sdg2", sdg2},
                     {"tau", tau}};
    return j.dump();
}

std::string NormReport::csv_header() { return "d2,ar2,triple2,streamline2,sdg2,tau"; }

std::string NormReport::csv_row() const {
    std::ostringstream out;
    out.precision(17);
    out << d2 << ',' << ar2 << ',' << triple2 << ',' << streamline2 << ',' << sdg2 << ',' << tau;
    return out.str();
}

NormReport triple_norm(const DiscreteFunction& v, const Decomposition&,
                       const ProblemSpec& spec, int quad_points) {
    const DofSpace& space = *v.space;
    const Mesh& mesh = *space.mesh;
    int q = default_quad(space, quad_points);
    QuadratureRule2D vol = gauss_rule_2d(q);
    QuadratureRule1D edge = gauss_rule(q);

    NormReport report;
    double jac = 0.25 * mesh.hx * mesh.hy;
    for (int e = 0; e < mesh.n_elements(); ++e)
        for (int i = 0; i < vol.size(); ++i) {
            double w = vol.weights[i] * jac;
            Point p = mesh.map_to_physical(e, vol.points[i]);
            Point g = v.gradient(e, vol.points[i]);
            double val = v.value(e, vol.points[i]);
            report.d2 += w * spec.eps * dot(g, g);
            report.ar2 += w * spec.c_b(p) * val * val;
        }

    for (int ed = 0; ed < mesh.n_edges(); ++ed) {
        double jedge = 0.5 * mesh.edges[ed].length;
        double pen = spec.eps * spec.sigma / mesh.edges[ed].h;
        Point nrm = mesh.edges[ed].normal;
        for (int i = 0; i < edge.size(); ++i) {
            double w = edge.weights[i] * jedge;
            double jump = edge_jump(v, mesh, ed, edge.points[i]);
            double bn = dot(spec.b.value(mesh.edge_point(ed, edge.points[i])), nrm);
            report.d2 += w * pen * jump * jump;
            report.ar2 += w * 0.5 * std::abs(bn) * jump * jump;
        }
    }
    report.triple2 = report.d2 + report.ar2;
    report.sdg2 = report.triple2;
    return report;
}

NormReport sdg_norm(const DiscreteFunction& v, const Decomposition& decomp,
                    const ProblemSpec& spec, double tau, int quad_points) {
    if (!(tau > 0.0)) throw std::invalid_argument("sdg_norm: tau must be positive");
    NormReport report = triple_norm(v, decomp, spec, quad_points);
    report.tau = tau;

    const DofSpace& space = *v.space;
    const Mesh& mesh = *space.mesh;
    const TensorBasis& basis = *space.basis;
    int q = default_quad(space, quad_points);
    QuadratureRule2D vol = gauss_rule_2d(q);
    std::vector<double> corner_pts = lobatto_nodes(kMaxDegree);
    double jac = 0.25 * mesh.hx * mesh.hy;

    ElementwiseFn streamline_deriv = [&](int e, Point ref) {
        Point p = mesh.map_to_physical(e, ref);
        return dot(spec.b.value(p), v.gradient(e, ref));
    };

    std::vector<double> phi(basis.size());
    for (int e = 0; e < mesh.n_elements(); ++e) {
        if (decomp.is_cg(e)) continue;  // projection vanishes there
        double bmax = b_linf(spec.b, mesh, e, corner_pts);
        double hE = mesh.h_elem[e];
        double tau_e = tau * std::min(bmax > 0.0 ? hE / bmax
                                                 : std::numeric_limits<double>::infinity(),
                                      hE * hE / spec.eps);
        std::vector<double> local = project_local(streamline_deriv, mesh, e, basis, q);
        for (int i = 0; i < vol.size(); ++i) {
            basis.values(vol.points[i], phi.data());
            double s = 0.0;
            for (int l = 0; l < basis.size(); ++l) s += local[l] * phi[l];
            report.streamline2 += vol.weights[i] * jac * tau_e * s * s;
        }
    }
    report.sdg2 = report.triple2 + report.streamline2;
    return report;
}

double coercivity_ratio(const SparseMatrix& A, const DofSpace& space, const Decomposition& decomp,
                        const ProblemSpec& spec, int n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_samples; ++s) {
        DiscreteFunction w(space, random_member(space, rng));
        double energy = w.coeffs.dot(A * w.coeffs);
        double t2 = triple_norm(w, decomp, spec).triple2;
        if (t2 > 0.0) min_ratio = std::min(min_ratio, energy / t2);
    }
    return min_ratio;
}

double sigma_diagnostic(const SparseMatrix& diffusion, const DofSpace& space,
                        const Decomposition& decomp, const ProblemSpec& spec, int n_samples,
                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_samples; ++s) {
        DiscreteFunction w(space, random_member(space, rng));
        double energy = w.coeffs.dot(diffusion * w.coeffs);
        double d2 = triple_norm(w, decomp, spec).d2 / spec.eps;  // eps-free d-norm
        if (d2 > 0.0) min_ratio = std::min(min_ratio, energy / d2);
    }
    return min_ratio;
}

ErrorNorms error_norms(const DiscreteFunction& v, const ExactFn& exact, double eps,
                       int quad_points) {
    const DofSpace& space = *v.space;
    const Mesh& mesh = *space.mesh;
    int q = quad_points > 0 ? quad_points : 8;
    QuadratureRule2D vol = gauss_rule_2d(q);
    QuadratureRule1D edge = gauss_rule(q);

    double l2 = 0.0, h1 = 0.0, jump2 = 0.0;
    double jac = 0.25 * mesh.hx * mesh.hy;
    for (int e = 0; e < mesh.n_elements(); ++e)
        for (int i = 0; i < vol.size(); ++i) {
            double w = vol.weights[i] * jac;
            Point p = mesh.map_to_physical(e, vol.points[i]);
            double dv = v.value(e, vol.points[i]) - exact.value(p);
            Point dg = v.gradient(e, vol.points[i]) - exact.gradient(p);
            l2 += w * dv * dv;
            h1 += w * dot(dg, dg);
        }

    // interior edges see only v's jumps (the exact solution is continuous);
    // on the boundary the error trace (v - exact) n is what jumps
    for (int ed = 0; ed < mesh.n_edges(); ++ed) {
        double jedge = 0.5 * mesh.edges[ed].length;
        bool boundary = mesh.edges[ed].is_boundary();
        for (int i = 0; i < edge.size(); ++i) {
            double j = edge_jump(v, mesh, ed, edge.points[i]);
            if (boundary) j -= exact.value(mesh.edge_point(ed, edge.points[i]));
            jump2 += edge.weights[i] * jedge * j * j;
        }
    }

    ErrorNorms norms;
    norms.l2 = std::sqrt(l2);
    norms.h1_eps = std::sqrt(eps * h1);
    norms.jump = std::sqrt(jump2);
    return norms;
}

ErrorNorms difference_norms(const DiscreteFunction& a, const DiscreteFunction& b, double eps) {
    const Mesh& mesh = *a.space->mesh;
    if (b.space->mesh != &mesh || a.space->k != b.space->k)
        throw std::invalid_argument("difference_norms: functions must share mesh and degree");
    ExactFn zero{[](Point) { return 0.0; }, [](Point) { return Point{0.0, 0.0}; }};

    if (a.space == b.space) {
        DiscreteFunction d(*a.space, a.coeffs - b.coeffs);
        return error_norms(d, zero, eps, 2 * (a.space->k + 1));
    }

    // inject both into a scratch dG superspace over the same mesh
    Decomposition all_dg = decompose(mesh, std::vector<bool>(mesh.n_elements(), false),
                                     constant_field({0.0, 0.0}));
    DofSpace dg = build_space(mesh, all_dg, SpaceKind::DG, a.space->k);
    DiscreteFunction da = inject(a, dg);
    DiscreteFunction db = inject(b, dg);
    DiscreteFunction d(dg, da.coeffs - db.coeffs);
    return error_norms(d, zero, eps, 2 * (dg.k + 1));
}

}  // namespace cdg
