#include "cdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

namespace {

// Legendre P_q and P_q' at x by the three-term recurrence.
std::pair<double, double> legendre(int q, double x) {
    double p0 = 1.0, p1 = x;
    if (q == 0) return {1.0, 0.0};
    for (int j = 2; j <= q; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    double dp = q * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

QuadratureRule1D gauss_rule(int q) {
    if (q < 1 || q > 16) throw std::invalid_argument("gauss_rule: q must be in [1,16]");
    QuadratureRule1D rule;
    rule.points.resize(q);
    rule.weights.resize(q);
    // Newton from the Chebyshev-based initial guess; roots are symmetric.
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = -std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            auto [p, d] = legendre(q, x);
            dp = d;
            double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // polish once more for the weight
        auto [p, d] = legendre(q, x);
        x -= p / d;
        dp = legendre(q, x).second;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points[i] = x;
        rule.weights[i] = w;
        rule.points[q - 1 - i] = -x;
        rule.weights[q - 1 - i] = w;
    }
    if (q % 2 == 1) {
        rule.points[q / 2] = 0.0;
        double dp = legendre(q, 0.0).second;
        rule.weights[q / 2] = 2.0 / (dp * dp);
    }
    return rule;
}

QuadratureRule2D gauss_rule_2d(int q) {
    QuadratureRule1D g = gauss_rule(q);
    QuadratureRule2D rule;
    rule.points.reserve(q * q);
    rule.weights.reserve(q * q);
    for (int j = 0; j < q; ++j)
        for (int i = 0; i < q; ++i) {
            rule.points.push_back({g.points[i], g.points[j]});
            rule.weights.push_back(g.weights[i] * g.weights[j]);
        }
    return rule;
}

std::vector<double> lobatto_nodes(int k) {
    switch (k) {
        case 1: return {-1.0, 1.0};
        case 2: return {-1.0, 0.0, 1.0};
        case 3: {
            double a = 1.0 / std::sqrt(5.0);
            return {-1.0, -a, a, 1.0};
        }
        case 4: {
            double a = std::sqrt(3.0 / 7.0);
            return {-1.0, -a, 0.0, a, 1.0};
        }
        default: throw std::invalid_argument("lobatto_nodes: k must be in [1,4]");
    }
}

}  // namespace cdg
