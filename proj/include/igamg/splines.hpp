#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace igamg {

/// Open knot vector of a univariate B-spline basis.
///
/// Knots are stored 0-based: a basis of degree p with n functions owns
/// n + p + 1 knots, the first and last p + 1 of which coincide.  Interior
/// knots may repeat at most p times.
class KnotVector {
public:
    KnotVector(int degree, std::vector<double> knots);

    /// Open uniform knots on [0, 1] with `spans` equal knot spans and simple
    /// interior knots, i.e. the maximum-smoothness C^{p-1} basis.
    static KnotVector open_uniform(int degree, int spans);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] const std::vector<double>& knots() const noexcept { return knots_; }
    [[nodiscard]] int num_basis() const noexcept { return static_cast<int>(knots_.size()) - degree_ - 1; }
    [[nodiscard]] double front() const noexcept { return knots_.front(); }
    [[nodiscard]] double back() const noexcept { return knots_.back(); }

    /// Index mu with knots[mu] <= x < knots[mu + 1] and p <= mu < n.  The
    /// right end point belongs to the last non-empty span.
    [[nodiscard]] int find_span(double x) const;

    /// Distinct knot values, i.e. element boundaries.
    [[nodiscard]] std::vector<double> breakpoints() const;

    /// Greville abscissae (knot averages), one per basis function.
    [[nodiscard]] std::vector<double> greville() const;

    friend bool operator==(const KnotVector&, const KnotVector&) = default;

private:
    int degree_;
    std::vector<double> knots_;
};

/// The p + 1 basis functions that may be nonzero at a point.  `values[k]`
/// belongs to the basis function with (full, 0-based) index `first + k`.
struct BasisWindow {
    int first = 0;
    std::vector<double> values;
};

BasisWindow eval_basis(const KnotVector& kv, double x);
BasisWindow eval_basis_derivative(const KnotVector& kv, double x);

/// Allocation-free kernel behind eval_basis / eval_basis_derivative.  Both
/// output spans need p + 1 entries; `derivs` may be empty.  Returns the index
/// of the first active function.
int eval_basis_into(const KnotVector& kv, double x, std::span<double> values, std::span<double> derivs);

/// Value of the spline sum_i coeffs[i] N_i(x).
double eval_spline(const KnotVector& kv, std::span<const double> coeffs, double x);

/// Degree-p, C^{p-1} spline space on m uniform spans of (0, 1) with
/// homogeneous Dirichlet conditions.  Interior index k corresponds to the
/// full B-spline index k + 1; the first and last B-splines are dropped.
class SplineSpace {
public:
    SplineSpace(int degree, int spans);

    [[nodiscard]] const KnotVector& knots() const noexcept { return knots_; }
    [[nodiscard]] int degree() const noexcept { return knots_.degree(); }
    [[nodiscard]] int spans() const noexcept { return spans_; }
    [[nodiscard]] double h() const noexcept { return 1.0 / spans_; }
    [[nodiscard]] int dim() const noexcept { return degree() + spans_ - 2; }

    friend bool operator==(const SplineSpace&, const SplineSpace&) = default;

private:
    KnotVector knots_;
    int spans_;
};

/// Knot insertion (Oslo algorithm).  Column j holds the coefficients of the
/// coarse B-spline j in the fine basis.  `fine` must have the same degree and
/// contain every coarse knot with at least the same multiplicity.
Eigen::SparseMatrix<double> knot_insertion_matrix(const KnotVector& coarse, const KnotVector& fine);

/// Coefficients of every source B-spline in the target basis, computed by
/// collocation at the target Greville points.  Handles degree elevation as
/// well as refinement provided the source space is contained in the target.
Eigen::MatrixXd embedding_matrix(const KnotVector& source, const KnotVector& target);

} // namespace igamg
