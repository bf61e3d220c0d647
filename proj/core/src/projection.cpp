#include "cdg/projection.hpp"

#include <Eigen/Dense>

#include "cdg/quadrature.hpp"

namespace cdg {

std::vector<double> project_local(const ElementwiseFn& v, const Mesh& mesh, int element,
                                  const TensorBasis& basis, int quad_points) {
    int nb = basis.size();
    QuadratureRule2D rule = gauss_rule_2d(quad_points);

    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(nb);
    double jac = 0.25 * mesh.hx * mesh.hy;
    double phi[(kMaxDegree + 1) * (kMaxDegree + 1)];
    for (int q = 0; q < rule.size(); ++q) {
        basis.values(rule.points[q], phi);
        double w = rule.weights[q] * jac;
        double vq = v(element, rule.points[q]);
        for (int i = 0; i < nb; ++i) {
            load[i] += w * vq * phi[i];
            for (int j = 0; j < nb; ++j) mass(i, j) += w * phi[i] * phi[j];
        }
    }
    Eigen::VectorXd c = mass.ldlt().solve(load);
    return {c.data(), c.data() + nb};
}

DiscreteFunction project_dg_part(const ElementwiseFn& v, const Decomposition& decomp,
                                 const DofSpace& space, int quad_points) {
    if (space.mesh != decomp.mesh)
        throw std::invalid_argument("project_dg_part: decomposition/space mesh mismatch");
    int q = quad_points > 0 ? quad_points : 2 * (space.k + 1);

    DiscreteFunction out(space);
    for (int e = 0; e < space.mesh->n_elements(); ++e) {
        if (decomp.is_cg(e)) continue;  // projection vanishes on the cG region
        std::vector<double> local = project_local(v, *space.mesh, e, *space.basis, q);
        for (int l = 0; l < space.dofs_per_element(); ++l)
            out.coeffs[space.element_dofs[e][l]] = local[l];
    }
    return out;
}

DiscreteFunction project_dg_part(const ScalarField& v, const Decomposition& decomp,
                                 const DofSpace& space, int quad_points) {
    const Mesh& mesh = *space.mesh;
    return project_dg_part(
        ElementwiseFn{[&](int e, Point ref) { return v(mesh.map_to_physical(e, ref)); }}, decomp,
        space, quad_points);
}

DiscreteFunction project_dg_part(const DiscreteFunction& v, const Decomposition& decomp,
                                 const DofSpace& space, int quad_points) {
    return project_dg_part(ElementwiseFn{[&](int e, Point ref) { return v.value(e, ref); }},
                           decomp, space, quad_points);
}

}  // namespace cdg
