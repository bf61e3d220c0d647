#include "cdg/exact.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cdg/quadrature.hpp"

namespace cdg {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955126;  // 2/sqrt(pi)

// erf saturates to 1 well below double precision beyond this point
constexpr double kErfSaturation = 6.5;

}  // namespace

double erf_value(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("erf_value: argument must be finite");
    double ax = std::abs(x);
    if (ax >= kErfSaturation) return x > 0.0 ? 1.0 : -1.0;

    // defining integral, integrated exactly enough: composite 16-point
    // Gauss-Legendre on panels of width <= 1/2 (the integrand is entire, so
    // the panel error is far below 1e-15)
    static const QuadratureRule1D rule = gauss_rule(16);
    int panels = static_cast<int>(std::ceil(ax / 0.5));
    double integral = 0.0;
    double width = ax / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) * width;
        for (int i = 0; i < rule.size(); ++i) {
            double t = mid + 0.5 * width * rule.points[i];
            integral += 0.5 * width * rule.weights[i] * std::exp(-t * t);
        }
    }
    double r = kTwoOverSqrtPi * integral;
    return x >= 0.0 ? r : -r;
}

LayerSolution::LayerSolution(double eps) : eps_(eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("LayerSolution: eps must be positive");
    a_ = 1.0 / std::sqrt(2.0 * eps);
    denom_ = erf_value(a_);
}

double LayerSolution::layer_deriv(double t) const {
    return kTwoOverSqrtPi * a_ * std::exp(-a_ * a_ * t * t) / denom_;
}

double LayerSolution::u(Point p) const {
    return p.x + p.y - (erf_value(a_ * p.x) + erf_value(a_ * p.y)) / denom_;
}

Point LayerSolution::grad_u(Point p) const {
    return {1.0 - layer_deriv(p.x), 1.0 - layer_deriv(p.y)};
}

double LayerSolution::u_eps(Point p) const {
    return 2.0 - (erf_value(a_ * p.x) + erf_value(a_ * p.y)) / denom_;
}

Point LayerSolution::grad_u_eps(Point p) const {
    return {-layer_deriv(p.x), -layer_deriv(p.y)};
}

double LayerSolution::u_eps_xx(Point p) const { return 2.0 * a_ * a_ * p.x * layer_deriv(p.x); }

double LayerSolution::u_eps_yy(Point p) const { return 2.0 * a_ * a_ * p.y * layer_deriv(p.y); }

double LayerSolution::residual(Point p) const {
    // -eps lap(u) + b.grad(u) - f with b = (-x,-y), f = -x-y
    double lap = u_eps_xx(p) + u_eps_yy(p);  // u = u0 + u_eps with u0 linear
    Point g = grad_u(p);
    return -eps_ * lap + (-p.x * g.x - p.y * g.y) - (-p.x - p.y);
}

ExactFn LayerSolution::exact_fn() const {
    return {[*this](Point p) { return u(p); }, [*this](Point p) { return grad_u(p); }};
}

ProblemSpec make_layer_problem(double eps, double sigma, double eps_max) {
    LayerSolution sol(eps);
    ProblemSpec spec;
    spec.eps = eps;
    spec.eps_max = eps_max > 0.0 ? eps_max : eps;
    spec.sigma = sigma;
    spec.b = {[](Point p) { return Point{-p.x, -p.y}; }, [](Point) { return -2.0; }};
    spec.c = [](Point) { return 0.0; };
    spec.f = [](Point p) { return -p.x - p.y; };
    spec.g = [sol](Point p) { return sol.u(p); };
    spec.validate();
    return spec;
}

namespace {

using Fn1D = std::function<double(double)>;

double panel_1d(const Fn1D& f, const QuadratureRule1D& rule, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * half * f(mid + half * rule.points[i]);
    return sum;
}

double adaptive_1d(const Fn1D& f, const QuadratureRule1D& rule, double a, double b,
                   double coarse, double tol, int depth) {
    double mid = 0.5 * (a + b);
    double left = panel_1d(f, rule, a, mid);
    double right = panel_1d(f, rule, mid, b);
    double fine = left + right;
    if (depth >= 45 || std::abs(fine - coarse) <= tol * std::abs(fine) + 1e-300) return fine;
    return adaptive_1d(f, rule, a, mid, left, tol, depth + 1) +
           adaptive_1d(f, rule, mid, b, right, tol, depth + 1);
}

double integrate_1d(const Fn1D& f, double a, double b, double tol) {
    static const QuadratureRule1D rule = gauss_rule(10);
    return adaptive_1d(f, rule, a, b, panel_1d(f, rule, a, b), tol, 0);
}

}  // namespace

double h2_norm_u_eps(double delta, double eps, double rel_tol) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("h2_norm_u_eps: delta must be in (0,1)");
    double a = 1.0 / std::sqrt(2.0 * eps);
    double denom = erf_value(a);

    // The remainder separates: u_eps(x,y) = W(x) + W(y) with
    // W(t) = 1 - erf(a t)/denom >= 0 on (0,1], so on the square (1-delta,1)^2
    // every H2 term reduces to 1D integrals of nonnegative integrands:
    //   int u^2          = 2 L int W^2 + 2 (int W)^2
    //   int |grad u|^2   = 2 L int (W')^2
    //   int (second)^2   = 2 L int (W'')^2       (the mixed partial vanishes)
    // which keeps the tiny-layer cases free of cancellation.
    Fn1D w = [&](double t) { return 1.0 - erf_value(a * t) / denom; };
    Fn1D dw2 = [&](double t) {
        double g = kTwoOverSqrtPi * a * std::exp(-a * a * t * t) / denom;
        return g * g;
    };
    Fn1D ddw2 = [&](double t) {
        double g = kTwoOverSqrtPi * a * std::exp(-a * a * t * t) / denom;
        double s = 2.0 * a * a * t * g;
        return s * s;
    };
    Fn1D w2 = [&](double t) {
        double v = w(t);
        return v * v;
    };

    double lo = 1.0 - delta;
    double len = delta;
    double tol = 0.25 * rel_tol;
    double sw = integrate_1d(w, lo, 1.0, tol);
    double sw2 = integrate_1d(w2, lo, 1.0, tol);
    double t1 = integrate_1d(dw2, lo, 1.0, tol);
    double t2 = integrate_1d(ddw2, lo, 1.0, tol);

    double integral = 2.0 * len * sw2 + 2.0 * sw * sw + 2.0 * len * (t1 + t2);
    return std::sqrt(std::max(integral, 0.0));
}

}  // namespace cdg
