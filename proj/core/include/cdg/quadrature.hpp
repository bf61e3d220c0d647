#pragma once

#include <vector>

#include "cdg/geometry.hpp"

namespace cdg {

/// 1D quadrature rule on the reference interval [-1,1].
struct QuadratureRule1D {
    std::vector<double> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
};

/// Tensor-product rule on the reference square [-1,1]^2.
struct QuadratureRule2D {
    std::vector<Point> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
};

/// Gauss-Legendre rule with q points, exact for polynomials of degree 2q-1.
/// 1 <= q <= 16; out of range throws std::invalid_argument.
QuadratureRule1D gauss_rule(int q);

/// Tensor product of gauss_rule(q) with itself; exact for Q_{2q-1}.
QuadratureRule2D gauss_rule_2d(int q);

/// Gauss-Lobatto nodes in [-1,1] for Q_k nodal bases, k in {1,...,4}.
/// Endpoints are always included, which is what makes inter-element
/// continuity a matter of node identification.
std::vector<double> lobatto_nodes(int k);

}  // namespace cdg
