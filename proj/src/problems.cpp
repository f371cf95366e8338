#include "igamg/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace igamg {

ProblemKind parse_problem(const std::string& name) {
    if (name == "poisson1d") {
        return ProblemKind::poisson1d;
    }
    if (name == "poisson2d") {
        return ProblemKind::poisson2d;
    }
    if (name == "annulus") {
        return ProblemKind::annulus;
    }
    throw std::invalid_argument("unknown problem '" + name + "' (expected poisson1d, poisson2d or annulus)");
}

std::string to_string(ProblemKind kind) {
    switch (kind) {
    case ProblemKind::poisson1d:
        return "poisson1d";
    case ProblemKind::poisson2d:
        return "poisson2d";
    case ProblemKind::annulus:
        return "annulus";
    }
    return "?";
}

double annulus_exact(double x, double y, double r, double R) {
    const double pi = std::numbers::pi;
    const double s = x * x + y * y;
    return std::sin(pi * x) * std::sin(pi * y) * (s - r * r) * (s - R * R);
}

double annulus_source(double x, double y, double r, double R) {
    // u = S g with S = sin(pi x) sin(pi y), g = (s - r^2)(s - R^2), s = x^2 + y^2:
    // Laplace u = g Laplace S + 2 grad S . grad g + S Laplace g
    const double pi = std::numbers::pi;
    const double sx = std::sin(pi * x), cx = std::cos(pi * x);
    const double sy = std::sin(pi * y), cy = std::cos(pi * y);
    const double S = sx * sy;
    const double s = x * x + y * y;
    const double g = (s - r * r) * (s - R * R);
    const double dg = 2.0 * s - (r * r + R * R); // dg/ds
    const double lap_S = -2.0 * pi * pi * S;
    const double grad_dot = 2.0 * pi * dg * (x * cx * sy + y * sx * cy); // grad S . grad g
    const double lap_g = 8.0 * s + 4.0 * dg;
    return -(g * lap_S + 2.0 * grad_dot + S * lap_g);
}

DiscreteProblem make_problem(ProblemKind kind, int degree, int spans, int threads) {
    DiscreteProblem prob;
    prob.kind = kind;
    prob.degree = degree;
    prob.spans = spans;
    const SplineSpace space(degree, spans);
    const double pi = std::numbers::pi;
    switch (kind) {
    case ProblemKind::poisson1d:
        prob.dimension = 1;
        prob.A = assemble_stiffness_1d(space);
        prob.b = assemble_rhs_1d(space, [pi](double x) { return pi * pi * std::sin(pi * x); });
        break;
    case ProblemKind::poisson2d:
        prob.dimension = 2;
        prob.A = assemble_stiffness_2d(space, space, nullptr, threads);
        prob.b = assemble_rhs_2d(space, space,
                                 [pi](double x, double y) { return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y); });
        break;
    case ProblemKind::annulus:
        prob.dimension = 2;
        prob.geometry = quarter_annulus(kAnnulusInner, kAnnulusOuter);
        prob.A = assemble_stiffness_2d(space, space, &*prob.geometry, threads);
        prob.b = assemble_rhs_2d(space, space, [](double x, double y) { return annulus_source(x, y); },
                                 &*prob.geometry);
        break;
    }
    return prob;
}

} // namespace igamg
