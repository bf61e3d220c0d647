#pragma once

#include <cmath>
#include <random>

#include "cdg/exact.hpp"
#include "cdg/experiment.hpp"
#include "cdg/function.hpp"

namespace cdg::testing {

/// b = (-x, -y): flows from the top-right corner toward the origin,
/// div b = -2 everywhere.
inline VectorField radial_inflow() {
    return {[](Point p) { return Point{-p.x, -p.y}; }, [](Point) { return -2.0; }};
}

inline Eigen::VectorXd random_coeffs(const DofSpace& space, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd w(space.n_dofs);
    for (int i = 0; i < space.n_dofs; ++i) w[i] = gauss(rng);
    return w;
}

inline Eigen::VectorXd random_member(const DofSpace& space, std::mt19937_64& rng) {
    Eigen::VectorXd w = random_coeffs(space, rng);
    for (int d : space.constrained_dofs) w[d] = 0.0;
    return w;
}

/// Smooth test fields with moderate frequencies.
inline ScalarField random_trig(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    std::uniform_real_distribution<double> freq(0.5, 2.0 * M_PI);
    double a0 = amp(rng), a1 = amp(rng), wx = freq(rng), wy = freq(rng), ph = amp(rng);
    return [=](Point p) {
        return a0 * std::sin(wx * p.x + ph) * std::cos(wy * p.y) + a1 * p.x * p.y;
    };
}

}  // namespace cdg::testing
