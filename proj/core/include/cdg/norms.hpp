#pragma once

#include <cstdint>
#include <string>

#include "cdg/assembly.hpp"
#include "cdg/function.hpp"

namespace cdg {

/// Components of the mesh-dependent energy norms. triple2 = d2 + ar2 by
/// construction; sdg2 adds the streamline term
///   sum_E tau_E || P_D(b . grad_h v) ||^2_{L2(E)},
/// where P_D projects onto the discontinuous part of the space and
///   tau_E = tau * min( h_E / ||b||_inf(E), h_E^2 / eps ).
struct NormReport {
    double d2 = 0.0;          // eps-weighted broken H1 + eps*sigma/h penalty jumps
    double ar2 = 0.0;         // weighted L2 + |b.n|/2 advective jumps
    double triple2 = 0.0;
    double streamline2 = 0.0;
    double sdg2 = 0.0;
    double tau = 0.0;

    std::string to_json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

/// d, ar and triple parts. Jump sums run over the whole skeleton including
/// the boundary (jump{v} = v n there) and the interface.
NormReport triple_norm(const DiscreteFunction& v, const Decomposition& decomp,
                       const ProblemSpec& spec, int quad_points = 0);

/// triple_norm plus the streamline term.
NormReport sdg_norm(const DiscreteFunction& v, const Decomposition& decomp,
                    const ProblemSpec& spec, double tau, int quad_points = 0);

/// Empirical coercivity of a form matrix against the triple norm:
/// min over seeded Gaussian coefficient vectors (constrained dofs zeroed,
/// matching the homogeneous analysis setting) of w'Aw / |||w|||^2.
double coercivity_ratio(const SparseMatrix& A, const DofSpace& space, const Decomposition& decomp,
                        const ProblemSpec& spec, int n_samples, std::uint64_t seed = 0x5eed5u);

/// Empirical penalty adequacy: min over random w of B_d(w,w) / ||w||_d^2
/// (both eps-weighted, the eps cancels). The symmetric IP form is positive
/// definite with constant 1/2 when sigma is large enough.
double sigma_diagnostic(const SparseMatrix& diffusion, const DofSpace& space,
                        const Decomposition& decomp, const ProblemSpec& spec, int n_samples = 50,
                        std::uint64_t seed = 0x5eed5u);

/// Error of a discrete function against a smooth exact solution.
struct ErrorNorms {
    double l2 = 0.0;
    double h1_eps = 0.0;  // sqrt(eps) * broken H1 seminorm of the error
    double jump = 0.0;    // L2 of [v] on interior edges + (v - exact) n on the boundary
};

struct ExactFn {
    ScalarField value;
    std::function<Point(Point)> gradient;
};

ErrorNorms error_norms(const DiscreteFunction& v, const ExactFn& exact, double eps,
                       int quad_points = 8);

/// Difference norms of two discrete functions over the same mesh, computed
/// by injecting both into the richer space of the two.
ErrorNorms difference_norms(const DiscreteFunction& a, const DiscreteFunction& b, double eps);

}  // namespace cdg
