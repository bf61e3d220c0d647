#include "cdg/mesh.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace cdg {

int Mesh::n_interior_edges() const {
    int count = 0;
    for (const Edge& e : edges)
        if (!e.is_boundary()) ++count;
    return count;
}

int Mesh::n_boundary_edges() const { return n_edges() - n_interior_edges(); }

Rect Mesh::element_rect(int e) const {
    auto [ex, ey] = element_coords(e);
    return {domain.x0 + ex * hx, domain.y0 + ey * hy, domain.x0 + (ex + 1) * hx,
            domain.y0 + (ey + 1) * hy};
}

Point Mesh::element_center(int e) const {
    Rect r = element_rect(e);
    return {0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)};
}

Point Mesh::map_to_physical(int e, Point ref) const {
    Rect r = element_rect(e);
    return {r.x0 + 0.5 * (ref.x + 1.0) * hx, r.y0 + 0.5 * (ref.y + 1.0) * hy};
}

Point Mesh::map_to_reference(int e, Point phys) const {
    Rect r = element_rect(e);
    return {2.0 * (phys.x - r.x0) / hx - 1.0, 2.0 * (phys.y - r.y0) / hy - 1.0};
}

Point Mesh::edge_point(int edge, double t) const {
    const Edge& e = edges[edge];
    Point a = vertices[e.v0], b = vertices[e.v1];
    return {0.5 * (a.x + b.x) + 0.5 * t * (b.x - a.x), 0.5 * (a.y + b.y) + 0.5 * t * (b.y - a.y)};
}

Point Mesh::outward_normal(int e, int edge) const {
    const Edge& ed = edges[edge];
    if (ed.elem[0] == e) return ed.normal;
    return {-ed.normal.x, -ed.normal.y};
}

int Mesh::side_of(int e, int edge) const {
    const auto& sides = element_edges[e];
    for (int s = 0; s < 4; ++s)
        if (sides[s] == edge) return s;
    throw std::logic_error("side_of: edge not adjacent to element");
}

Mesh build_structured_mesh(int n, Rect domain, HConvention conv) {
    if (n < 1) throw std::invalid_argument("build_structured_mesh: n must be >= 1");
    if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
        throw std::invalid_argument("build_structured_mesh: degenerate domain");

    Mesh m;
    m.n = n;
    m.domain = domain;
    m.h_convention = conv;
    m.hx = domain.width() / n;
    m.hy = domain.height() / n;

    m.vertices.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            m.vertices.push_back({domain.x0 + i * m.hx, domain.y0 + j * m.hy});

    auto vid = [n](int i, int j) { return j * (n + 1) + i; };

    m.elements.reserve(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m.elements.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});

    double h = conv == HConvention::Diagonal ? std::hypot(m.hx, m.hy) : std::max(m.hx, m.hy);
    m.h_elem.assign(n * n, h);

    // horizontal edges: lines j = 0..n, segments i = 0..n-1
    // vertical edges:   rows j = 0..n-1, columns i = 0..n
    m.edges.reserve(2 * n * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i < n; ++i) {
            Edge e;
            e.v0 = vid(i, j);
            e.v1 = vid(i + 1, j);
            e.length = m.hx;
            int below = j > 0 ? m.element_index(i, j - 1) : -1;
            int above = j < n ? m.element_index(i, j) : -1;
            if (below >= 0) {
                e.elem = {below, above};
                e.normal = {0.0, 1.0};
            } else {
                e.elem = {above, -1};
                e.normal = {0.0, -1.0};
            }
            e.h = h;
            m.edges.push_back(e);
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= n; ++i) {
            Edge e;
            e.v0 = vid(i, j);
            e.v1 = vid(i, j + 1);
            e.length = m.hy;
            int left = i > 0 ? m.element_index(i - 1, j) : -1;
            int right = i < n ? m.element_index(i, j) : -1;
            if (left >= 0) {
                e.elem = {left, right};
                e.normal = {1.0, 0.0};
            } else {
                e.elem = {right, -1};
                e.normal = {-1.0, 0.0};
            }
            e.h = h;
            m.edges.push_back(e);
        }

    auto hid = [n](int i, int j) { return j * n + i; };
    auto vid_edge = [n](int i, int j) { return n * (n + 1) + j * (n + 1) + i; };
    m.element_edges.reserve(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m.element_edges.push_back(
                {hid(i, j), vid_edge(i + 1, j), hid(i, j + 1), vid_edge(i, j)});

    return m;
}

std::string mesh_to_json(const Mesh& mesh) {
    nlohmann::json j;
    j["n"] = mesh.n;
    j["domain"] = {mesh.domain.x0, mesh.domain.y0, mesh.domain.x1, mesh.domain.y1};
    auto& verts = j["vertices"] = nlohmann::json::array();
    for (const Point& p : mesh.vertices) verts.push_back({p.x, p.y});
    j["elements"] = mesh.elements;
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const Edge& e : mesh.edges)
        edges.push_back({{"v", {e.v0, e.v1}},
                         {"elements", {e.elem[0], e.elem[1]}},
                         {"normal", {e.normal.x, e.normal.y}},
                         {"length", e.length},
                         {"h", e.h}});
    return j.dump(2);
}

}  // namespace cdg
