#pragma once

#include <functional>

#include "cdg/function.hpp"

namespace cdg {

/// A function evaluable element by element: (element, reference point) -> value.
/// Broken functions (gradients of discrete functions, one-sided data) fit this.
using ElementwiseFn = std::function<double(int, Point)>;

/// L2-orthogonal projection onto the discontinuous part of the cdG space:
/// the result matches the moments of v against every basis function of the
/// dG elements and vanishes identically on the cG region. The projection
/// decouples into per-element mass solves since the target space has no
/// continuity constraints on the dG sub-mesh. Per element it is
/// non-expansive in L2.
///
/// `space` must be a CDG (or DG) space over decomp's mesh; the coefficient
/// vector returned lives in that space.
DiscreteFunction project_dg_part(const ElementwiseFn& v, const Decomposition& decomp,
                                 const DofSpace& space, int quad_points = 0);

DiscreteFunction project_dg_part(const ScalarField& v, const Decomposition& decomp,
                                 const DofSpace& space, int quad_points = 0);

DiscreteFunction project_dg_part(const DiscreteFunction& v, const Decomposition& decomp,
                                 const DofSpace& space, int quad_points = 0);

/// Local projection coefficients of a single dG element (the building block
/// of project_dg_part, exposed for norm evaluation).
std::vector<double> project_local(const ElementwiseFn& v, const Mesh& mesh, int element,
                                  const TensorBasis& basis, int quad_points);

}  // namespace cdg
