#pragma once

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "igamg/assembly.hpp"
#include "igamg/geometry.hpp"

namespace igamg {

enum class ProblemKind { poisson1d, poisson2d, annulus };

ProblemKind parse_problem(const std::string& name);
std::string to_string(ProblemKind kind);

inline constexpr double kAnnulusInner = 0.3;
inline constexpr double kAnnulusOuter = 0.5;

/// Exact solution sin(pi x) sin(pi y) (x^2+y^2-r^2)(x^2+y^2-R^2) of the
/// quarter-annulus benchmark and its source term f = -Laplace u.
double annulus_exact(double x, double y, double r = kAnnulusInner, double R = kAnnulusOuter);
double annulus_source(double x, double y, double r = kAnnulusInner, double R = kAnnulusOuter);

/// Assembled benchmark: -u'' = pi^2 sin(pi x) on (0,1), -Laplace u =
/// 2 pi^2 sin(pi x) sin(pi y) on the unit square, or the quarter annulus.
struct DiscreteProblem {
    ProblemKind kind = ProblemKind::poisson1d;
    int degree = 0;
    int spans = 0;
    int dimension = 1;
    SparseMatrix A;
    Eigen::VectorXd b;
    std::optional<GeometryMap> geometry;
};

DiscreteProblem make_problem(ProblemKind kind, int degree, int spans, int threads = 1);

} // namespace igamg
