#pragma once

#include <vector>

#include "cdg/geometry.hpp"

namespace cdg {

inline constexpr int kMaxDegree = 4;

/// Tensor-product Lagrange basis of degree k on [-1,1]^2 with nodes at the
/// Gauss-Lobatto points. Local node l = iy*(k+1) + ix, ix fastest.
class TensorBasis {
public:
    explicit TensorBasis(int k);

    int degree() const { return k_; }
    int size() const { return (k_ + 1) * (k_ + 1); }
    const std::vector<double>& nodes_1d() const { return nodes_; }

    /// Reference coordinates of local node l.
    Point node(int l) const {
        return {nodes_[l % (k_ + 1)], nodes_[l / (k_ + 1)]};
    }

    double eval_1d(int i, double x) const;
    double deriv_1d(int i, double x) const;

    /// All shape values at a reference point; out must hold size() doubles.
    void values(Point ref, double* out) const;
    /// Reference-coordinate gradients (d/dxi, d/deta).
    void gradients(Point ref, Point* out) const;

private:
    int k_;
    std::vector<double> nodes_;
    std::vector<double> bary_w_;  // barycentric weights of the node set
};

}  // namespace cdg
