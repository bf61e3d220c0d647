#include "cdg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "cdg/quadrature.hpp"

namespace cdg {

namespace {

using Triplet = Eigen::Triplet<double>;
constexpr int kMaxB = (kMaxDegree + 1) * (kMaxDegree + 1);

int default_quad(const DofSpace& space, const AssemblyOptions& opts) {
    return opts.quad_points > 0 ? opts.quad_points : 2 * (space.k + 1);
}

// Reference-element tables of the basis at the volume rule and at the 1D
// edge rule for each of the four element sides (S, E, N, W). The mesh is
// uniform, so one table serves every element.
struct Tables {
    int nb = 0;
    QuadratureRule2D vol;
    std::vector<std::array<double, kMaxB>> vol_phi;
    std::vector<std::array<Point, kMaxB>> vol_dphi;  // physical gradients

    QuadratureRule1D edge;
    // [side][q][l]
    std::array<std::vector<std::array<double, kMaxB>>, 4> tr_phi;
    std::array<std::vector<std::array<Point, kMaxB>>, 4> tr_dphi;

    Tables(const DofSpace& space, int q) {
        const TensorBasis& basis = *space.basis;
        const Mesh& mesh = *space.mesh;
        nb = basis.size();
        double sx = 2.0 / mesh.hx, sy = 2.0 / mesh.hy;

        vol = gauss_rule_2d(q);
        vol_phi.resize(vol.size());
        vol_dphi.resize(vol.size());
        for (int i = 0; i < vol.size(); ++i) {
            basis.values(vol.points[i], vol_phi[i].data());
            basis.gradients(vol.points[i], vol_dphi[i].data());
            for (int l = 0; l < nb; ++l) {
                vol_dphi[i][l].x *= sx;
                vol_dphi[i][l].y *= sy;
            }
        }

        edge = gauss_rule(q);
        for (int side = 0; side < 4; ++side) {
            tr_phi[side].resize(edge.size());
            tr_dphi[side].resize(edge.size());
            for (int i = 0; i < edge.size(); ++i) {
                Point ref = edge_side_ref(side, edge.points[i]);
                basis.values(ref, tr_phi[side][i].data());
                basis.gradients(ref, tr_dphi[side][i].data());
                for (int l = 0; l < nb; ++l) {
                    tr_dphi[side][i][l].x *= sx;
                    tr_dphi[side][i][l].y *= sy;
                }
            }
        }
    }
};

void canonicalize(std::vector<Triplet>& trips) {
    std::stable_sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
        return a.row() != b.row() ? a.row() < b.row() : a.col() < b.col();
    });
}

SparseMatrix compress(int n, std::vector<Triplet> trips) {
    canonicalize(trips);
    SparseMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

// sum_E (b.grad w, what) - sum_{interior e} (b.[w], what from the downwind
// element) - sum_{inflow boundary} (b.n w, what)
std::vector<Triplet> advection_triplets(const DofSpace& space, const Decomposition& decomp,
                                        const ProblemSpec& spec, const Tables& tab) {
    const Mesh& mesh = *space.mesh;
    std::vector<Triplet> trips;
    trips.reserve(mesh.n_elements() * tab.nb * tab.nb * 2);
    double jac = 0.25 * mesh.hx * mesh.hy;

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& dofs = space.element_dofs[e];
        for (int q = 0; q < tab.vol.size(); ++q) {
            double w = tab.vol.weights[q] * jac;
            Point bq = spec.b.value(mesh.map_to_physical(e, tab.vol.points[q]));
            for (int i = 0; i < tab.nb; ++i)
                for (int j = 0; j < tab.nb; ++j)
                    trips.emplace_back(dofs[i], dofs[j],
                                       w * dot(bq, tab.vol_dphi[q][j]) * tab.vol_phi[q][i]);
        }
    }

    for (int edge = 0; edge < mesh.n_edges(); ++edge) {
        const Edge& ed = mesh.edges[edge];
        double jedge = 0.5 * ed.length;

        if (ed.is_boundary()) {
            if (!decomp.inflow[edge]) continue;
            int e0 = ed.elem[0];
            int s0 = mesh.side_of(e0, edge);
            const auto& dofs = space.element_dofs[e0];
            for (int q = 0; q < tab.edge.size(); ++q) {
                Point p = mesh.edge_point(edge, tab.edge.points[q]);
                double bn = dot(spec.b.value(p), ed.normal);
                double w = tab.edge.weights[q] * jedge;
                const auto& phi = tab.tr_phi[s0][q];
                for (int i = 0; i < tab.nb; ++i)
                    for (int j = 0; j < tab.nb; ++j)
                        trips.emplace_back(dofs[i], dofs[j], -w * bn * phi[j] * phi[i]);
            }
            continue;
        }

        if (space.shared_across[edge]) continue;  // jumps vanish identically
        int dn = decomp.downwind_side[edge];
        if (dn < 0) continue;  // b.n == 0 on the edge

        int e0 = ed.elem[0], e1 = ed.elem[1];
        int s0 = mesh.side_of(e0, edge), s1 = mesh.side_of(e1, edge);
        int edn = ed.elem[dn];
        int sdn = dn == 0 ? s0 : s1;
        const auto& rows = space.element_dofs[edn];
        const auto& cols0 = space.element_dofs[e0];
        const auto& cols1 = space.element_dofs[e1];
        double expected = dn == 1 ? 1.0 : -1.0;  // sign of b.n+ implied by the downwind side
        std::vector<double> bns(tab.edge.size());
        double mag = 0.0;
        for (int q = 0; q < tab.edge.size(); ++q) {
            Point p = mesh.edge_point(edge, tab.edge.points[q]);
            bns[q] = dot(spec.b.value(p), ed.normal);
            mag = std::max(mag, std::abs(bns[q]));
        }
        for (double bn : bns)
            if (bn * expected < -1e-12 * mag)
                throw SignAssumptionViolation("assemble_advection: b.n sign flips within an edge");
        for (int q = 0; q < tab.edge.size(); ++q) {
            double bn = bns[q];
            double w = tab.edge.weights[q] * jedge;
            const auto& phi_dn = tab.tr_phi[sdn][q];
            const auto& phi0 = tab.tr_phi[s0][q];
            const auto& phi1 = tab.tr_phi[s1][q];
            for (int i = 0; i < tab.nb; ++i) {
                double test = -w * bn * phi_dn[i];
                for (int j = 0; j < tab.nb; ++j) {
                    trips.emplace_back(rows[i], cols0[j], test * phi0[j]);
                    trips.emplace_back(rows[i], cols1[j], -test * phi1[j]);
                }
            }
        }
    }
    return trips;
}

std::vector<Triplet> reaction_triplets(const DofSpace& space, const ProblemSpec& spec,
                                       const Tables& tab) {
    const Mesh& mesh = *space.mesh;
    std::vector<Triplet> trips;
    trips.reserve(mesh.n_elements() * tab.nb * tab.nb);
    double jac = 0.25 * mesh.hx * mesh.hy;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& dofs = space.element_dofs[e];
        for (int q = 0; q < tab.vol.size(); ++q) {
            double cw = spec.c(mesh.map_to_physical(e, tab.vol.points[q])) *
                        tab.vol.weights[q] * jac;
            if (cw == 0.0) continue;
            for (int i = 0; i < tab.nb; ++i)
                for (int j = 0; j < tab.nb; ++j)
                    trips.emplace_back(dofs[i], dofs[j], cw * tab.vol_phi[q][i] * tab.vol_phi[q][j]);
        }
    }
    return trips;
}

// Broken stiffness plus interior-penalty face terms (without the eps factor).
std::vector<Triplet> diffusion_triplets(const DofSpace& space, const Decomposition& decomp,
                                        const ProblemSpec& spec, DiffusionVariant variant,
                                        const Tables& tab) {
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("assemble_diffusion: sigma must be > 0");
    const Mesh& mesh = *space.mesh;
    std::vector<Triplet> trips;
    trips.reserve(mesh.n_elements() * tab.nb * tab.nb * 2);
    double jac = 0.25 * mesh.hx * mesh.hy;

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& dofs = space.element_dofs[e];
        for (int q = 0; q < tab.vol.size(); ++q) {
            double w = tab.vol.weights[q] * jac;
            for (int i = 0; i < tab.nb; ++i)
                for (int j = 0; j < tab.nb; ++j)
                    trips.emplace_back(dofs[i], dofs[j],
                                       w * dot(tab.vol_dphi[q][i], tab.vol_dphi[q][j]));
        }
    }

    for (int edge = 0; edge < mesh.n_edges(); ++edge) {
        const Edge& ed = mesh.edges[edge];
        double jedge = 0.5 * ed.length;
        double pen = spec.sigma / ed.h;

        if (ed.is_boundary()) {
            if (space.strong_boundary(edge)) continue;  // imposed by row constraints instead
            int e0 = ed.elem[0];
            int s0 = mesh.side_of(e0, edge);
            const auto& dofs = space.element_dofs[e0];
            Point n = ed.normal;
            for (int q = 0; q < tab.edge.size(); ++q) {
                double w = tab.edge.weights[q] * jedge;
                const auto& phi = tab.tr_phi[s0][q];
                const auto& dphi = tab.tr_dphi[s0][q];
                for (int i = 0; i < tab.nb; ++i) {
                    double gni = dot(dphi[i], n);
                    for (int j = 0; j < tab.nb; ++j) {
                        double gnj = dot(dphi[j], n);
                        trips.emplace_back(dofs[i], dofs[j],
                                           w * (pen * phi[i] * phi[j] - gnj * phi[i] - gni * phi[j]));
                    }
                }
            }
            continue;
        }

        if (space.shared_across[edge]) continue;  // jumps vanish identically
        if (variant == DiffusionVariant::Decoupled &&
            decomp.edge_class[edge] == EdgeClass::Interface)
            continue;

        int e0 = ed.elem[0], e1 = ed.elem[1];
        int s0 = mesh.side_of(e0, edge), s1 = mesh.side_of(e1, edge);
        const std::vector<int>* dofs[2] = {&space.element_dofs[e0], &space.element_dofs[e1]};
        int sides[2] = {s0, s1};
        double sgn[2] = {1.0, -1.0};  // jump = trace(side0) - trace(side1) along n+
        Point n = ed.normal;
        for (int q = 0; q < tab.edge.size(); ++q) {
            double w = tab.edge.weights[q] * jedge;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const auto& phi_i = tab.tr_phi[sides[a]][q];
                    const auto& phi_j = tab.tr_phi[sides[b]][q];
                    const auto& dphi_i = tab.tr_dphi[sides[a]][q];
                    const auto& dphi_j = tab.tr_dphi[sides[b]][q];
                    for (int i = 0; i < tab.nb; ++i) {
                        double jump_i = sgn[a] * phi_i[i];
                        double avg_gni = 0.5 * dot(dphi_i[i], n);
                        for (int j = 0; j < tab.nb; ++j) {
                            double jump_j = sgn[b] * phi_j[j];
                            double avg_gnj = 0.5 * dot(dphi_j[j], n);
                            trips.emplace_back((*dofs[a])[i], (*dofs[b])[j],
                                               w * (pen * jump_i * jump_j - avg_gnj * jump_i -
                                                    avg_gni * jump_j));
                        }
                    }
                }
        }
    }
    return trips;
}

}  // namespace

SparseMatrix assemble_advection(const DofSpace& space, const Decomposition& decomp,
                                const ProblemSpec& spec, const AssemblyOptions& opts) {
    Tables tab(space, default_quad(space, opts));
    return compress(space.n_dofs, advection_triplets(space, decomp, spec, tab));
}

SparseMatrix assemble_reaction(const DofSpace& space, const ProblemSpec& spec,
                               const AssemblyOptions& opts) {
    Tables tab(space, default_quad(space, opts));
    return compress(space.n_dofs, reaction_triplets(space, spec, tab));
}

SparseMatrix assemble_diffusion(const DofSpace& space, const Decomposition& decomp,
                                const ProblemSpec& spec, DiffusionVariant variant,
                                const AssemblyOptions& opts) {
    Tables tab(space, default_quad(space, opts));
    return compress(space.n_dofs, diffusion_triplets(space, decomp, spec, variant, tab));
}

SparseSystem assemble_system(const DofSpace& space, const Decomposition& decomp,
                             const ProblemSpec& spec, DiffusionVariant variant,
                             const AssemblyOptions& opts) {
    spec.validate();
    const Mesh& mesh = *space.mesh;
    int q = default_quad(space, opts);
    Tables tab(space, q);

    std::vector<Triplet> trips = diffusion_triplets(space, decomp, spec, variant, tab);
    for (Triplet& t : trips) t = {t.row(), t.col(), spec.eps * t.value()};
    for (const Triplet& t : advection_triplets(space, decomp, spec, tab)) trips.push_back(t);
    for (const Triplet& t : reaction_triplets(space, spec, tab)) trips.push_back(t);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space.n_dofs);
    double jac = 0.25 * mesh.hx * mesh.hy;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& dofs = space.element_dofs[e];
        for (int i = 0; i < tab.vol.size(); ++i) {
            double fw = spec.f(mesh.map_to_physical(e, tab.vol.points[i])) *
                        tab.vol.weights[i] * jac;
            for (int l = 0; l < tab.nb; ++l) rhs[dofs[l]] += fw * tab.vol_phi[i][l];
        }
    }

    // boundary data: Nitsche lifting on weakly-imposed edges, inflow lifting
    // everywhere; uses a finer rule on edges flagged by the options (steep
    // layer data)
    const TensorBasis& basis = *space.basis;
    for (int edge = 0; edge < mesh.n_edges(); ++edge) {
        const Edge& ed = mesh.edges[edge];
        if (!ed.is_boundary()) continue;
        bool strong = space.strong_boundary(edge);
        bool inflow = decomp.inflow[edge];
        if (strong && !inflow) continue;

        int eq = q;
        if (opts.fine_data_quad > 0 && opts.fine_data_edge && opts.fine_data_edge(mesh, edge))
            eq = std::max(q, opts.fine_data_quad);
        QuadratureRule1D rule = gauss_rule(eq);

        int e0 = ed.elem[0];
        int s0 = mesh.side_of(e0, edge);
        const auto& dofs = space.element_dofs[e0];
        Point n = ed.normal;
        double jedge = 0.5 * ed.length;
        double pen = spec.sigma / ed.h;
        double sx = 2.0 / mesh.hx, sy = 2.0 / mesh.hy;

        for (int iq = 0; iq < rule.size(); ++iq) {
            double t = rule.points[iq];
            Point ref = edge_side_ref(s0, t);
            double phi[kMaxB];
            Point dphi[kMaxB];
            basis.values(ref, phi);
            basis.gradients(ref, dphi);
            Point p = mesh.edge_point(edge, t);
            double gv = spec.g(p);
            double w = rule.weights[iq] * jedge;
            double bn = inflow ? dot(spec.b.value(p), n) : 0.0;
            for (int l = 0; l < tab.nb; ++l) {
                double gn = dphi[l].x * sx * n.x + dphi[l].y * sy * n.y;
                double v = 0.0;
                if (!strong) v += spec.eps * (pen * gv * phi[l] - gv * gn);
                if (inflow) v += -bn * gv * phi[l];
                rhs[dofs[l]] += w * v;
            }
        }
    }

    // strong rows: identity with the prescribed nodal value
    if (!space.constrained_dofs.empty()) {
        std::vector<Triplet> kept;
        kept.reserve(trips.size());
        for (const Triplet& t : trips)
            if (!space.is_constrained[t.row()]) kept.push_back(t);
        trips.swap(kept);
        for (int d : space.constrained_dofs) {
            trips.emplace_back(d, d, 1.0);
            rhs[d] = spec.g(space.dof_position[d]);
        }
    }

    SparseSystem sys;
    sys.matrix = compress(space.n_dofs, std::move(trips));
    sys.rhs = std::move(rhs);
    sys.space = &space;
    return sys;
}

void write_matrix_market(const SparseMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    out.precision(17);
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

}  // namespace cdg
