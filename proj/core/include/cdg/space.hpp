#pragma once

#include <memory>
#include <vector>

#include "cdg/basis.hpp"
#include "cdg/decomposition.hpp"
#include "cdg/mesh.hpp"

namespace cdg {

enum class SpaceKind { CG, DG, CDG };

enum class DirichletMode { StrongOnCGBoundary, None };

/// Global degree-of-freedom map for the continuous, discontinuous, or hybrid
/// Q_k space on a decomposed mesh.
///
/// Nodes of elements in the "shared" region (all elements for CG, the cG
/// elements for CDG, none for DG) are identified by position, so functions
/// are continuous exactly across the cG skeleton; dG elements always carry
/// their own (k+1)^2 coefficients and nothing is shared across the interface.
/// Dof counts consequently satisfy
///   DG: (k+1)^2 n^2,  CG: (k n + 1)^2,
///   CDG with an s x s cG block: (k s + 1)^2 + (k+1)^2 (n^2 - s^2),
/// with Dirichlet-constrained dofs included in the count.
class DofSpace {
public:
    const Mesh* mesh = nullptr;
    const Decomposition* decomp = nullptr;
    SpaceKind kind = SpaceKind::DG;
    int k = 1;
    DirichletMode dirichlet_mode = DirichletMode::None;

    int n_dofs = 0;
    std::vector<std::vector<int>> element_dofs;
    std::vector<Point> dof_position;
    std::vector<int> constrained_dofs;   // sorted; values prescribed at assembly time
    std::vector<bool> is_constrained;
    std::vector<bool> shared_across;     // per edge: basis continuous across it

    std::shared_ptr<const TensorBasis> basis;

    int dofs_per_element() const { return (k + 1) * (k + 1); }

    /// True when the space imposes Dirichlet values strongly on this
    /// (necessarily BoundaryCG) edge, so weak boundary terms are skipped there.
    bool strong_boundary(int edge) const {
        return dirichlet_mode == DirichletMode::StrongOnCGBoundary &&
               decomp->edge_class[edge] == EdgeClass::BoundaryCG;
    }
};

/// Build the dof map. Throws std::invalid_argument for k outside {1,...,4}
/// or a decomposition over a different mesh.
DofSpace build_space(const Mesh& mesh, const Decomposition& decomp, SpaceKind kind, int k,
                     DirichletMode mode);

/// Convenience: default Dirichlet mode per kind (strong for CG/CDG, none for DG).
DofSpace build_space(const Mesh& mesh, const Decomposition& decomp, SpaceKind kind, int k);

}  // namespace cdg
