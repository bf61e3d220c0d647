#include "cdg/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "cdg/quadrature.hpp"

namespace cdg {

namespace {

constexpr double kZeroFlow = 1e-14;
constexpr double kSignTol = 1e-12;

// Signed b.n samples along an edge; returns (min, max) over quadrature points.
std::pair<double, double> bdotn_range(const Mesh& mesh, int edge, const VectorField& b,
                                      const QuadratureRule1D& rule) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    Point nrm = mesh.edges[edge].normal;
    for (double t : rule.points) {
        Point p = mesh.edge_point(edge, t);
        double s = dot(b.value(p), nrm);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return {lo, hi};
}

}  // namespace

int Decomposition::n_cg_elements() const {
    return static_cast<int>(std::count(element_region.begin(), element_region.end(), Region::CG));
}

int Decomposition::n_dg_elements() const {
    return static_cast<int>(element_region.size()) - n_cg_elements();
}

std::vector<int> Decomposition::interface_edges() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edge_class.size()); ++e)
        if (edge_class[e] == EdgeClass::Interface) out.push_back(e);
    return out;
}

Decomposition decompose(const Mesh& mesh, const std::vector<bool>& cg_elements,
                        const VectorField& b, int quad_points) {
    if (static_cast<int>(cg_elements.size()) != mesh.n_elements())
        throw std::invalid_argument("decompose: element set size mismatch");

    Decomposition d;
    d.mesh = &mesh;
    d.element_region.resize(mesh.n_elements());
    for (int e = 0; e < mesh.n_elements(); ++e)
        d.element_region[e] = cg_elements[e] ? Region::CG : Region::DG;

    int ne = mesh.n_edges();
    d.edge_class.resize(ne);
    d.downwind_side.assign(ne, -1);
    d.inflow.assign(ne, false);
    d.interface_normal.assign(ne, Point{});

    QuadratureRule1D rule = gauss_rule(quad_points);
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = mesh.edges[e];
        auto [lo, hi] = bdotn_range(mesh, e, b, rule);
        double mag = std::max(std::abs(lo), std::abs(hi));
        if (mag > kZeroFlow && lo < -kSignTol * mag && hi > kSignTol * mag)
            throw SignAssumptionViolation("decompose: b.n changes sign within an edge");

        if (ed.is_boundary()) {
            bool cg = d.is_cg(ed.elem[0]);
            d.edge_class[e] = cg ? EdgeClass::BoundaryCG : EdgeClass::BoundaryDG;
            d.inflow[e] = mag <= kZeroFlow || hi <= kSignTol * mag;  // b.n <= 0 convention
            if (mag > kZeroFlow && d.inflow[e]) d.downwind_side[e] = 0;
        } else {
            bool cg0 = d.is_cg(ed.elem[0]);
            bool cg1 = d.is_cg(ed.elem[1]);
            if (cg0 && cg1)
                d.edge_class[e] = EdgeClass::InteriorCG;
            else if (!cg0 && !cg1)
                d.edge_class[e] = EdgeClass::InteriorDG;
            else {
                d.edge_class[e] = EdgeClass::Interface;
                // stored normal points out of elem[0]
                d.interface_normal[e] = cg0 ? ed.normal : Point{-ed.normal.x, -ed.normal.y};
            }
            if (mag > kZeroFlow)
                // flow leaves elem[0] when b.n > 0, so elem[1] is downwind
                d.downwind_side[e] = hi > 0.0 ? 1 : 0;
        }
    }
    return d;
}

Decomposition decompose(const Mesh& mesh, const std::function<bool(Point)>& cg_region,
                        const VectorField& b, int quad_points) {
    std::vector<bool> mask(mesh.n_elements());
    for (int e = 0; e < mesh.n_elements(); ++e) mask[e] = cg_region(mesh.element_center(e));
    return decompose(mesh, mask, b, quad_points);
}

std::vector<bool> cg_block(const Mesh& mesh, int s) {
    if (s < 0 || s > mesh.n) throw std::invalid_argument("cg_block: s must be in [0,n]");
    std::vector<bool> mask(mesh.n_elements(), false);
    for (int ey = mesh.n - s; ey < mesh.n; ++ey)
        for (int ex = mesh.n - s; ex < mesh.n; ++ex) mask[mesh.element_index(ex, ey)] = true;
    return mask;
}

InterfaceReport check_interface_assumption(const Decomposition& decomp, const VectorField& b,
                                           double eps_max, double sigma, int quad_points) {
    const Mesh& mesh = *decomp.mesh;
    InterfaceReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    report.max_feasible_sigma = std::numeric_limits<double>::infinity();
    QuadratureRule1D rule = gauss_rule(quad_points);

    for (int e : decomp.interface_edges()) {
        const Edge& ed = mesh.edges[e];
        Point nc = decomp.interface_normal[e];
        double min_bn = std::numeric_limits<double>::infinity();
        for (double t : rule.points) {
            Point p = mesh.edge_point(e, t);
            min_bn = std::min(min_bn, dot(b.value(p), nc));
        }
        InterfaceEdgeMargin m;
        m.edge = e;
        m.min_b_dot_nc = min_bn;
        m.rhs = eps_max * sigma / std::pow(ed.h, 1.5);
        m.margin = 0.25 * min_bn - m.rhs;
        report.edges.push_back(m);
        report.min_margin = std::min(report.min_margin, m.margin);
        report.max_feasible_sigma =
            std::min(report.max_feasible_sigma, 0.25 * min_bn * std::pow(ed.h, 1.5) / eps_max);
        if (!(m.margin > 0.0)) report.pass = false;
    }
    if (report.edges.empty()) {
        report.min_margin = 0.0;
        report.max_feasible_sigma = 0.0;
        report.pass = true;  // vacuous
    }
    return report;
}

PecletReport check_peclet(const Mesh& mesh, const VectorField& b, double eps, double eps_max,
                          const Decomposition* decomp, int sample_points) {
    PecletReport report;
    report.min_peclet = std::numeric_limits<double>::infinity();
    report.min_peclet_at_eps_max = std::numeric_limits<double>::infinity();
    report.max_h = 0.0;
    report.max_h_over_b = 0.0;

    // corner-inclusive sample grid; Gauss points alone miss the corner where
    // an affine |b| peaks
    std::vector<double> pts = lobatto_nodes(std::clamp(sample_points - 1, 1, 4));
    bool peclet_ok = true;

    for (int e = 0; e < mesh.n_elements(); ++e) {
        double bmax = 0.0;
        for (double ty : pts)
            for (double tx : pts) {
                Point v = b.value(mesh.map_to_physical(e, {tx, ty}));
                bmax = std::max({bmax, std::abs(v.x), std::abs(v.y)});
            }
        double hE = mesh.h_elem[e];
        double peclet = bmax * hE / (2.0 * eps);
        if (peclet < report.min_peclet) {
            report.min_peclet = peclet;
            report.argmin_element = e;
        }
        double peclet_max_eps = bmax * hE / (2.0 * eps_max);
        report.min_peclet_at_eps_max = std::min(report.min_peclet_at_eps_max, peclet_max_eps);
        if (!(peclet_max_eps > std::sqrt(hE))) peclet_ok = false;
        report.max_h = std::max(report.max_h, hE);
        bool in_dg = decomp == nullptr || !decomp->is_cg(e);
        if (in_dg && bmax > 0.0) report.max_h_over_b = std::max(report.max_h_over_b, hE / bmax);
    }
    report.pass = peclet_ok && std::max(report.max_h_over_b, report.max_h) <= 1.0;
    return report;
}

RhoReport check_rho(const ScalarField& c, const VectorField& b, const Mesh& mesh,
                    int quad_points) {
    RhoReport report;
    report.rho = std::numeric_limits<double>::infinity();
    QuadratureRule2D rule = gauss_rule_2d(quad_points);
    for (int e = 0; e < mesh.n_elements(); ++e)
        for (const Point& ref : rule.points) {
            Point p = mesh.map_to_physical(e, ref);
            report.rho = std::min(report.rho, c(p) - 0.5 * b.divergence(p));
        }
    report.pass = report.rho > 0.0;
    return report;
}

std::string decomposition_to_json(const Decomposition& decomp) {
    nlohmann::json j;
    auto& regions = j["element_region"] = nlohmann::json::array();
    for (Region r : decomp.element_region) regions.push_back(r == Region::CG ? "cG" : "dG");
    static const char* names[] = {"interior-cG", "interior-dG", "interface", "boundary-cG",
                                  "boundary-dG"};
    auto& classes = j["edge_class"] = nlohmann::json::array();
    for (EdgeClass c : decomp.edge_class) classes.push_back(names[static_cast<int>(c)]);
    auto& inflow = j["inflow"] = nlohmann::json::array();
    for (size_t e = 0; e < decomp.edge_class.size(); ++e)
        if (decomp.mesh->edges[e].is_boundary())
            inflow.push_back({{"edge", e}, {"inflow", static_cast<bool>(decomp.inflow[e])}});
    return j.dump(2);
}

}  // namespace cdg
