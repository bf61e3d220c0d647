#pragma once

#include <array>
#include <string>
#include <vector>

#include "cdg/geometry.hpp"

namespace cdg {

/// Convention for the element size h_E on axis-aligned cells.
/// AxisExtent (the default) uses the longest axis-aligned side; Diagonal
/// uses the geometric diameter sqrt(hx^2 + hy^2).
enum class HConvention { AxisExtent, Diagonal };

struct Edge {
    int v0 = -1, v1 = -1;          // vertex ids, ascending along the edge axis
    std::array<int, 2> elem{-1, -1};  // adjacent elements; elem[1] = -1 on the boundary
    Point normal;                  // unit normal out of elem[0] (domain-outward on boundary)
    double length = 0.0;
    double h = 0.0;                // min of adjacent element sizes h_E

    bool is_boundary() const { return elem[1] < 0; }
};

/// Structured axis-aligned quadrilateral mesh of a rectangle, n cells per
/// side. Vertices are ordered lexicographically (x fastest), elements
/// row-major, edges all horizontal then all vertical, each row-major.
/// Immutable once built.
class Mesh {
public:
    int n = 0;
    Rect domain;
    HConvention h_convention = HConvention::AxisExtent;

    std::vector<Point> vertices;
    std::vector<std::array<int, 4>> elements;     // [SW, SE, NE, NW]
    std::vector<Edge> edges;
    std::vector<std::array<int, 4>> element_edges;  // [south, east, north, west]
    std::vector<double> h_elem;

    double hx = 0.0, hy = 0.0;

    int n_elements() const { return static_cast<int>(elements.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }
    int n_interior_edges() const;
    int n_boundary_edges() const;

    int element_index(int ex, int ey) const { return ey * n + ex; }
    std::array<int, 2> element_coords(int e) const { return {e % n, e / n}; }
    Rect element_rect(int e) const;
    Point element_center(int e) const;

    /// Physical point of reference coordinates (xi, eta) in [-1,1]^2.
    Point map_to_physical(int e, Point ref) const;
    /// Inverse of map_to_physical; affine, so exact.
    Point map_to_reference(int e, Point phys) const;

    /// True if the edge runs along x (constant y).
    bool edge_is_horizontal(int edge) const { return edge < n * (n + 1); }
    /// Midpoint + half-extent parametrization: point at t in [-1,1].
    Point edge_point(int edge, double t) const;
    /// Outward unit normal of element `e` on one of its edges.
    Point outward_normal(int e, int edge) const;
    /// Which side (0 = south, 1 = east, 2 = north, 3 = west) of element `e`
    /// the edge is. Throws std::logic_error if not adjacent.
    int side_of(int e, int edge) const;
};

/// Reference coordinates of the point at edge parameter t on a given side.
inline Point edge_side_ref(int side, double t) {
    switch (side) {
        case 0: return {t, -1.0};
        case 1: return {1.0, t};
        case 2: return {t, 1.0};
        default: return {-1.0, t};
    }
}

/// Build the n-by-n structured mesh of `domain`.
/// Throws std::invalid_argument for n < 1 or a degenerate rectangle.
Mesh build_structured_mesh(int n, Rect domain = unit_square(),
                           HConvention conv = HConvention::AxisExtent);

/// Debug export: vertices, elements and edge data as a JSON string.
std::string mesh_to_json(const Mesh& mesh);

}  // namespace cdg
