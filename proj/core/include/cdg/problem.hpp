#pragma once

#include <functional>
#include <stdexcept>

#include "cdg/geometry.hpp"

namespace cdg {

using ScalarField = std::function<double(Point)>;

/// Velocity field with an evaluable divergence (needed for c_b = c - div(b)/2).
struct VectorField {
    std::function<Point(Point)> value;
    std::function<double(Point)> divergence;
};

inline VectorField constant_field(Point b) {
    return {[b](Point) { return b; }, [](Point) { return 0.0; }};
}

/// Coefficients and data of the advection-diffusion-reaction problem
///   -eps * lap(u) + b . grad(u) + c u = f  in Omega,   u = g on the boundary,
/// plus the discretization parameters sigma (jump penalty) and eps_max
/// (upper diffusion bound used by the admissibility checks).
struct ProblemSpec {
    double eps = 1e-6;
    VectorField b;
    ScalarField c = [](Point) { return 0.0; };
    ScalarField f = [](Point) { return 0.0; };
    ScalarField g = [](Point) { return 0.0; };
    double sigma = 10.0;
    double eps_max = 1e-6;

    double c_b(Point p) const { return c(p) - 0.5 * b.divergence(p); }

    void validate() const {
        if (!(eps > 0.0)) throw std::invalid_argument("ProblemSpec: eps must be positive");
        if (!(sigma > 0.0)) throw std::invalid_argument("ProblemSpec: sigma must be positive");
        if (!(eps <= eps_max)) throw std::invalid_argument("ProblemSpec: eps must not exceed eps_max");
        if (!b.value || !b.divergence) throw std::invalid_argument("ProblemSpec: velocity field not set");
    }
};

}  // namespace cdg
