#pragma once

#include <Eigen/Dense>
#include <string>

#include "cdg/space.hpp"

namespace cdg {

/// A function in a DofSpace: coefficients against the nodal basis.
/// Traces from each side of an edge are well-defined through the owning
/// element's restriction.
struct DiscreteFunction {
    const DofSpace* space = nullptr;
    Eigen::VectorXd coeffs;

    DiscreteFunction() = default;
    explicit DiscreteFunction(const DofSpace& s)
        : space(&s), coeffs(Eigen::VectorXd::Zero(s.n_dofs)) {}
    DiscreteFunction(const DofSpace& s, Eigen::VectorXd c) : space(&s), coeffs(std::move(c)) {}

    /// Value at a reference point of element e.
    double value(int e, Point ref) const;
    /// Physical-coordinate gradient at a reference point of element e.
    Point gradient(int e, Point ref) const;
    /// Value at a physical point known to lie in element e.
    double value_at(int e, Point phys) const;
};

/// Interpolate a scalar field at the nodal points of the space.
DiscreteFunction interpolate(const DofSpace& space, const ScalarField& v);

/// Coefficient injection between nodal spaces over the same mesh and degree
/// (cG -> cdG -> dG embeddings). The injected function is pointwise identical
/// to the source. Throws std::invalid_argument if scattered values conflict,
/// i.e. the source is not actually a member of the target space.
DiscreteFunction inject(const DiscreteFunction& f, const DofSpace& target);

/// Sample on a uniform per-element grid and write CSV rows "x,y,value".
/// Sampling points are strictly inside elements so one-sided values of
/// discontinuous functions are well-defined.
void write_sampled_csv(const DiscreteFunction& f, const std::string& path,
                       int samples_per_element = 2);

}  // namespace cdg
