#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "igamg/assembly.hpp"
#include "igamg/geometry.hpp"
#include "igamg/smoothers.hpp"

namespace igamg {

/// Canonical prolongation between the Dirichlet spaces on m and 2m spans
/// (knot insertion at every span midpoint).
SparseMatrix prolongation_1d(const SplineSpace& coarse, const SplineSpace& fine);

/// Tensor prolongation for the lexicographic 2D layout i + nu * j.
SparseMatrix prolongation_2d(const SparseMatrix& Pu, const SparseMatrix& Pv);

/// A_coarse = P^T A P.
SparseMatrix galerkin_coarsen(const SparseMatrix& A, const SparseMatrix& P);

enum class CycleType { V, W };

struct CycleSpec {
    CycleType type = CycleType::V;
    int nu1 = 1;
    int nu2 = 0;
};

struct HierarchyOptions {
    int min_spans = 4;  ///< never coarsen below this many spans per direction
    int max_levels = 0; ///< 0: as many as min_spans allows
};

struct Level {
    SparseMatrix A;
    SparseMatrix P; ///< prolongation from the next coarser level (empty on the coarsest)
    GridShape shape;
    int spans = 0;
    std::optional<Smoother> smoother; ///< absent on the coarsest level
};

/// Geometric hierarchy over uniformly halved knot spans with Galerkin coarse
/// operators.  With a geometry the prolongation is the rational (NURBS)
/// embedding induced by the refined geometry weights.
class Hierarchy {
public:
    Hierarchy(SparseMatrix A, int degree, int spans, int dimension, SmootherSpec smoother,
              const GeometryMap* geometry = nullptr, HierarchyOptions options = {});

    /// One V- or W-cycle on level `level` (0 is the finest).
    void cycle(Eigen::VectorXd& x, const Eigen::VectorXd& b, const CycleSpec& spec, std::size_t level = 0) const;

    [[nodiscard]] const std::vector<Level>& levels() const noexcept { return levels_; }
    [[nodiscard]] const SparseMatrix& matrix() const noexcept { return levels_.front().A; }

private:
    std::vector<Level> levels_;
    Eigen::LLT<Eigen::MatrixXd> coarse_;
};

/// Uniform [0,1) entries from a 64-bit Mersenne twister.
Eigen::VectorXd random_vector(Eigen::Index n, std::uint64_t seed);

struct SolveOptions {
    double tol = 1e-8;
    int max_iterations = 200;
    std::uint64_t seed = 42;
};

struct SolveReport {
    int iterations = 0;
    bool converged = false;
    std::vector<double> residuals; ///< ||b - A x_k||, k = 0..iterations
    double rho = 0.0;              ///< geometric mean of the last (up to 5) reduction ratios
    double seconds = 0.0;
};

/// Cycles from a seeded random initial guess until ||r_k|| <= tol ||r_0||.
SolveReport solve(const Hierarchy& hierarchy, const Eigen::VectorXd& b, const CycleSpec& spec,
                  const SolveOptions& options = {});

struct FactorReport {
    double rho = 0.0;
    int iterations = 0;
    bool reliable = false; ///< false if fewer than 8 iterations were run
};

/// Asymptotic factor on the homogeneous problem: the iterate is renormalized
/// after every cycle, iteration stops once the cumulative reduction reaches
/// `reduction` (after at least `min_iterations`), and the factor is the
/// geometric mean of the last 5 ratios.
FactorReport measured_asymptotic_factor(const Hierarchy& hierarchy, const CycleSpec& spec, std::uint64_t seed = 42,
                                        double reduction = 1e-10, int min_iterations = 20,
                                        int max_iterations = 3000);

} // namespace igamg
