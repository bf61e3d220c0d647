#pragma once

#include "cdg/norms.hpp"
#include "cdg/problem.hpp"

namespace cdg {

/// Error function computed from its defining integral with composite
/// Gauss-Legendre panels (no libm dependency); absolute error <= 1e-12.
double erf_value(double x);

/// Boundary-layer benchmark on the unit square:
///   -eps lap(u) + (-x,-y) . grad(u) = -x - y,
/// whose exact solution splits into the reduced (hyperbolic) part
/// u0 = x + y - 2 and a remainder u_eps carried by scaled error functions,
/// with exponential layers of width O(sqrt(eps)) along x = 0 and y = 0.
class LayerSolution {
public:
    explicit LayerSolution(double eps);

    double eps() const { return eps_; }

    double u(Point p) const;
    Point grad_u(Point p) const;
    double u0(Point p) const { return p.x + p.y - 2.0; }
    double u_eps(Point p) const;
    Point grad_u_eps(Point p) const;

    /// Second partials of u_eps (the mixed one vanishes identically).
    double u_eps_xx(Point p) const;
    double u_eps_yy(Point p) const;

    /// Pointwise PDE residual -eps lap(u) + b.grad(u) - f, which is zero in
    /// exact arithmetic; useful as a self-check.
    double residual(Point p) const;

    ExactFn exact_fn() const;

private:
    double eps_;
    double a_;      // 1 / sqrt(2 eps)
    double denom_;  // erf evaluated at the far boundary
    double layer_deriv(double t) const;  // d/dt of erf(a t)/denom
};

/// The full problem data for the benchmark (g = trace of the exact solution,
/// c = 0, diffusion and penalty as given).
ProblemSpec make_layer_problem(double eps, double sigma = 10.0, double eps_max = 0.0);

/// || u_eps ||_{H2((1-delta,1)^2)} from the closed-form partials, integrated
/// with adaptive Gauss quadrature to the given relative tolerance.
double h2_norm_u_eps(double delta, double eps, double rel_tol = 1e-8);

}  // namespace cdg
