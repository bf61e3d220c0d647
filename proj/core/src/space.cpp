#include "cdg/space.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace cdg {

namespace {

// Nodes of shared-region elements are identified through an exact integer
// lattice key: element (ex,ey), local 1d indices (ix,iy) map to the global
// node (ex*k + ix, ey*k + iy). Two nodes coincide geometrically iff their
// keys agree, so no floating-point comparisons are involved.
inline long long node_key(int n, int k, int ex, int ey, int ix, int iy) {
    long long gx = static_cast<long long>(ex) * k + ix;
    long long gy = static_cast<long long>(ey) * k + iy;
    return gy * (static_cast<long long>(n) * k + 1) + gx;
}

}  // namespace

DofSpace build_space(const Mesh& mesh, const Decomposition& decomp, SpaceKind kind, int k,
                     DirichletMode mode) {
    if (k < 1 || k > kMaxDegree) throw std::invalid_argument("build_space: k must be in [1,4]");
    if (decomp.mesh != &mesh) throw std::invalid_argument("build_space: decomposition/mesh mismatch");

    DofSpace space;
    space.mesh = &mesh;
    space.decomp = &decomp;
    space.kind = kind;
    space.k = k;
    space.dirichlet_mode = mode;
    space.basis = std::make_shared<TensorBasis>(k);

    auto in_shared_region = [&](int e) {
        switch (kind) {
            case SpaceKind::CG: return true;
            case SpaceKind::DG: return false;
            case SpaceKind::CDG: return decomp.is_cg(e);
        }
        return false;
    };

    int per_elem = space.dofs_per_element();
    space.element_dofs.assign(mesh.n_elements(), std::vector<int>(per_elem, -1));
    std::unordered_map<long long, int> shared;
    shared.reserve(mesh.n_elements() * per_elem);

    int next = 0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        auto [ex, ey] = mesh.element_coords(e);
        bool share = in_shared_region(e);
        for (int iy = 0; iy <= k; ++iy)
            for (int ix = 0; ix <= k; ++ix) {
                int l = iy * (k + 1) + ix;
                int dof;
                if (share) {
                    long long key = node_key(mesh.n, k, ex, ey, ix, iy);
                    auto [it, inserted] = shared.try_emplace(key, next);
                    dof = it->second;
                    if (inserted) ++next;
                } else {
                    dof = next++;
                }
                space.element_dofs[e][l] = dof;
            }
    }
    space.n_dofs = next;

    space.dof_position.resize(space.n_dofs);
    for (int e = 0; e < mesh.n_elements(); ++e)
        for (int l = 0; l < per_elem; ++l)
            space.dof_position[space.element_dofs[e][l]] =
                mesh.map_to_physical(e, space.basis->node(l));

    // continuity pattern of the basis across each edge
    space.shared_across.assign(mesh.n_edges(), false);
    for (int edge = 0; edge < mesh.n_edges(); ++edge) {
        const Edge& ed = mesh.edges[edge];
        if (ed.is_boundary()) continue;
        space.shared_across[edge] = in_shared_region(ed.elem[0]) && in_shared_region(ed.elem[1]);
    }

    // strong Dirichlet dofs: the on-edge nodes of cG boundary edges
    space.is_constrained.assign(space.n_dofs, false);
    if (mode == DirichletMode::StrongOnCGBoundary) {
        for (int edge = 0; edge < mesh.n_edges(); ++edge) {
            if (decomp.edge_class[edge] != EdgeClass::BoundaryCG) continue;
            int e = mesh.edges[edge].elem[0];
            if (!in_shared_region(e)) continue;  // space is broken there; impose weakly
            Point n_out = mesh.outward_normal(e, edge);
            for (int l = 0; l < per_elem; ++l) {
                Point ref = space.basis->node(l);
                bool on_edge = (n_out.x < -0.5 && ref.x == -1.0) || (n_out.x > 0.5 && ref.x == 1.0) ||
                               (n_out.y < -0.5 && ref.y == -1.0) || (n_out.y > 0.5 && ref.y == 1.0);
                if (on_edge) space.is_constrained[space.element_dofs[e][l]] = true;
            }
        }
        for (int d = 0; d < space.n_dofs; ++d)
            if (space.is_constrained[d]) space.constrained_dofs.push_back(d);
    }

    return space;
}

DofSpace build_space(const Mesh& mesh, const Decomposition& decomp, SpaceKind kind, int k) {
    return build_space(mesh, decomp, kind, k,
                       kind == SpaceKind::DG ? DirichletMode::None
                                             : DirichletMode::StrongOnCGBoundary);
}

}  // namespace cdg
