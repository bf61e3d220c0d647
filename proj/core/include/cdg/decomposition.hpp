#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdg/mesh.hpp"
#include "cdg/problem.hpp"

namespace cdg {

enum class Region { CG, DG };

/// Edge classes of the split skeleton. Interface edges (one cG and one dG
/// neighbor) belong to the dG skeleton by convention.
enum class EdgeClass { InteriorCG, InteriorDG, Interface, BoundaryCG, BoundaryDG };

/// Thrown when b.n changes sign within a single edge, which breaks the
/// upwind trace classification.
class SignAssumptionViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element / edge labeling of a mesh split into a cG and a dG sub-mesh,
/// together with the flow data the upwind discretization needs.
/// Immutable once built.
class Decomposition {
public:
    const Mesh* mesh = nullptr;
    std::vector<Region> element_region;
    std::vector<EdgeClass> edge_class;
    /// Adjacency slot (0 or 1) of the downwind element, i.e. the element
    /// whose inflow boundary contains the edge; -1 where b.n == 0.
    std::vector<int> downwind_side;
    /// Boundary edges with b.n <= 0 everywhere (inflow convention).
    std::vector<bool> inflow;
    /// Unit normal pointing from the cG to the dG side; meaningful on
    /// Interface edges only.
    std::vector<Point> interface_normal;

    bool is_cg(int e) const { return element_region[e] == Region::CG; }
    int n_cg_elements() const;
    int n_dg_elements() const;
    std::vector<int> interface_edges() const;

    /// Edges of the dG skeleton: interior-dG, interface, and dG boundary.
    bool in_dg_skeleton(int edge) const {
        EdgeClass c = edge_class[edge];
        return c == EdgeClass::InteriorDG || c == EdgeClass::Interface || c == EdgeClass::BoundaryDG;
    }
};

/// Label every element with `cg_region` and classify the skeleton. The sign
/// of b.n is sampled at `quad_points` Gauss points per edge; a sign change
/// beyond 1e-12 relative tolerance throws SignAssumptionViolation, and
/// |b.n| <= 1e-14 everywhere counts as inflow.
Decomposition decompose(const Mesh& mesh, const std::function<bool(Point)>& cg_region,
                        const VectorField& b, int quad_points = 4);

/// Same, from an explicit element set.
Decomposition decompose(const Mesh& mesh, const std::vector<bool>& cg_elements,
                        const VectorField& b, int quad_points = 4);

/// Top-right block of s-by-s cG elements, T_cG = [1 - s*h, 1]^2 scaled to the
/// mesh domain; s = 0 is pure dG, s = n pure cG.
std::vector<bool> cg_block(const Mesh& mesh, int s);

// ---------------------------------------------------------------------------
// Admissibility checks. All are report-only: they never throw on failure.
// ---------------------------------------------------------------------------

/// Non-characteristic interface condition: on every interface edge,
///   (1/4) b.n^C > eps_max * sigma / h_e^{3/2}  at every quadrature point.
struct InterfaceEdgeMargin {
    int edge = -1;
    double min_b_dot_nc = 0.0;  // min over quadrature points
    double rhs = 0.0;           // eps_max * sigma * h_e^{-3/2}
    double margin = 0.0;        // min of (1/4) b.n^C - rhs
};

struct InterfaceReport {
    bool pass = true;  // vacuously true when there are no interface edges
    double min_margin = 0.0;
    /// Largest sigma for which every interface edge would still pass.
    double max_feasible_sigma = 0.0;
    std::vector<InterfaceEdgeMargin> edges;
};

InterfaceReport check_interface_assumption(const Decomposition& decomp, const VectorField& b,
                                           double eps_max, double sigma, int quad_points = 4);

/// Pre-asymptotic regime: local mesh Peclet number ||b||_inf(E) h_E / (2 eps)
/// exceeds sqrt(h_E) on every element at eps = eps_max, and
/// max{ h_E / ||b||_inf(E) over the dG elements, h } <= 1.
/// ||b||_inf(E) is the max magnitude of a velocity component, sampled on a
/// corner-inclusive Gauss-Lobatto grid.
struct PecletReport {
    bool pass = false;
    double min_peclet = 0.0;       // at the given eps
    double min_peclet_at_eps_max = 0.0;
    double max_h_over_b = 0.0;     // over the dG elements (or all, without decomp)
    double max_h = 0.0;
    int argmin_element = -1;
};

PecletReport check_peclet(const Mesh& mesh, const VectorField& b, double eps, double eps_max,
                          const Decomposition* decomp = nullptr, int sample_points = 5);

/// Reaction positivity: rho = min over sample points of c - div(b)/2 > 0.
struct RhoReport {
    bool pass = false;
    double rho = 0.0;
};

RhoReport check_rho(const ScalarField& c, const VectorField& b, const Mesh& mesh,
                    int quad_points = 4);

/// Debug export of the decomposition (element regions, edge classes) as JSON.
std::string decomposition_to_json(const Decomposition& decomp);

}  // namespace cdg
