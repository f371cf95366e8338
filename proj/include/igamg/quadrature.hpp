#pragma once

#include <vector>

namespace igamg {

/// Gauss-Legendre rule on [0, 1]; exact for polynomials of degree 2q - 1.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(points.size()); }
};

/// q in [1, 30].
QuadratureRule gauss_legendre_rule(int q);

} // namespace igamg
