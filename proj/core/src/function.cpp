#include "cdg/function.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace cdg {

double DiscreteFunction::value(int e, Point ref) const {
    const TensorBasis& basis = *space->basis;
    double phi[(kMaxDegree + 1) * (kMaxDegree + 1)];
    basis.values(ref, phi);
    const auto& dofs = space->element_dofs[e];
    double v = 0.0;
    for (int l = 0; l < basis.size(); ++l) v += coeffs[dofs[l]] * phi[l];
    return v;
}

Point DiscreteFunction::gradient(int e, Point ref) const {
    const TensorBasis& basis = *space->basis;
    Point dphi[(kMaxDegree + 1) * (kMaxDegree + 1)];
    basis.gradients(ref, dphi);
    const auto& dofs = space->element_dofs[e];
    Point g{0.0, 0.0};
    for (int l = 0; l < basis.size(); ++l) {
        g.x += coeffs[dofs[l]] * dphi[l].x;
        g.y += coeffs[dofs[l]] * dphi[l].y;
    }
    const Mesh& mesh = *space->mesh;
    return {g.x * 2.0 / mesh.hx, g.y * 2.0 / mesh.hy};
}

double DiscreteFunction::value_at(int e, Point phys) const {
    return value(e, space->mesh->map_to_reference(e, phys));
}

DiscreteFunction interpolate(const DofSpace& space, const ScalarField& v) {
    DiscreteFunction f(space);
    for (int d = 0; d < space.n_dofs; ++d) f.coeffs[d] = v(space.dof_position[d]);
    return f;
}

DiscreteFunction inject(const DiscreteFunction& f, const DofSpace& target) {
    const DofSpace& source = *f.space;
    if (source.mesh != target.mesh || source.k != target.k)
        throw std::invalid_argument("inject: spaces must share mesh and degree");

    DiscreteFunction out(target);
    std::vector<bool> written(target.n_dofs, false);
    double scale = 1.0 + f.coeffs.cwiseAbs().maxCoeff();
    for (int e = 0; e < source.mesh->n_elements(); ++e)
        for (int l = 0; l < source.dofs_per_element(); ++l) {
            double v = f.coeffs[source.element_dofs[e][l]];
            int d = target.element_dofs[e][l];
            if (written[d] && std::abs(out.coeffs[d] - v) > 1e-8 * scale)
                throw std::invalid_argument("inject: source is not a member of the target space");
            out.coeffs[d] = v;
            written[d] = true;
        }
    return out;
}

void write_sampled_csv(const DiscreteFunction& f, const std::string& path,
                       int samples_per_element) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_sampled_csv: cannot open " + path);
    out << "x,y,value\n";
    out.precision(17);
    int s = std::max(1, samples_per_element);
    const Mesh& mesh = *f.space->mesh;
    for (int e = 0; e < mesh.n_elements(); ++e)
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < s; ++i) {
                Point ref{-1.0 + (2.0 * i + 1.0) / s, -1.0 + (2.0 * j + 1.0) / s};
                Point p = mesh.map_to_physical(e, ref);
                out << p.x << ',' << p.y << ',' << f.value(e, ref) << '\n';
            }
}

}  // namespace cdg
