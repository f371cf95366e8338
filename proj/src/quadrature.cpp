#include "igamg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace igamg {

QuadratureRule gauss_legendre_rule(int q) {
    if (q < 1 || q > 30) {
        throw std::invalid_argument("gauss_legendre_rule: q must lie in [1, 30]");
    }
    QuadratureRule rule;
    rule.points.resize(static_cast<std::size_t>(q));
    rule.weights.resize(static_cast<std::size_t>(q));
    // Newton iteration on P_q from the Chebyshev-like initial guess; roots are
    // symmetric so only the upper half is computed
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // recompute the derivative at the converged root
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= q; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = q * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1], ascending order
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(q - 1 - i);
        rule.points[lo] = 0.5 * (1.0 - x);
        rule.points[hi] = 0.5 * (1.0 + x);
        rule.weights[lo] = 0.5 * w;
        rule.weights[hi] = 0.5 * w;
    }
    if (q % 2 == 1) {
        rule.points[static_cast<std::size_t>(q / 2)] = 0.5;
    }
    return rule;
}

} // namespace igamg
