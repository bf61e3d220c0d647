#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <string>

#include "cdg/function.hpp"
#include "cdg/problem.hpp"
#include "cdg/space.hpp"

namespace cdg {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Interior-penalty diffusion variants: Standard keeps penalty and
/// consistency terms on every skeleton edge; Decoupled drops them on the
/// cG/dG interface, leaving only advective coupling there.
enum class DiffusionVariant { Standard, Decoupled };

struct AssemblyOptions {
    /// Gauss points per direction for volume and edge terms; 0 = 2(k+1).
    int quad_points = 0;
    /// Quadrature for boundary-data (rhs) edge integrals on edges selected
    /// by fine_data_edge; 0 disables the bump.
    int fine_data_quad = 0;
    std::function<bool(const Mesh&, int)> fine_data_edge;
};

/// Assembled linear system. Rows of constrained dofs are identity rows with
/// the prescribed boundary value on the right-hand side; everything else is
/// the bilinear form. Triplets are accumulated in canonical sorted order, so
/// the result is bit-reproducible.
struct SparseSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
    const DofSpace* space = nullptr;
};

/// Advection form: sum_E (b.grad w, what)_E
///   - sum over interior edges of (b.[w], upwind trace of what)_e
///   - sum over inflow boundary edges of (b.n w, what)_e.
/// The upwind trace is taken from the downwind element (the one whose inflow
/// boundary contains the edge); this is the unique reading under which
/// B_a(w,w) + B_r(w,w) equals the weighted-L2 + |b.n| jump energy identity.
SparseMatrix assemble_advection(const DofSpace& space, const Decomposition& decomp,
                                const ProblemSpec& spec, const AssemblyOptions& opts = {});

/// Reaction mass form sum_E (c w, what)_E.
SparseMatrix assemble_reaction(const DofSpace& space, const ProblemSpec& spec,
                               const AssemblyOptions& opts = {});

/// Symmetric interior-penalty diffusion form (without the eps factor):
/// broken stiffness + sigma/h_e penalty and consistency terms over the
/// skeleton. Decoupled omits every interface-edge term. Edges where the
/// space imposes Dirichlet values strongly carry no face terms; on the
/// remaining boundary edges jump{v} = v n and average{grad v} = grad v.
SparseMatrix assemble_diffusion(const DofSpace& space, const Decomposition& decomp,
                                const ProblemSpec& spec, DiffusionVariant variant,
                                const AssemblyOptions& opts = {});

/// Full system eps * diffusion + advection + reaction with right-hand side
///   (f, what) + Nitsche lifting of g on weakly-imposed boundary edges
///   + inflow lifting -(b.n g, what), then strong rows for constrained dofs.
SparseSystem assemble_system(const DofSpace& space, const Decomposition& decomp,
                             const ProblemSpec& spec, DiffusionVariant variant,
                             const AssemblyOptions& opts = {});

/// MatrixMarket coordinate-format export.
void write_matrix_market(const SparseMatrix& m, const std::string& path);

}  // namespace cdg
