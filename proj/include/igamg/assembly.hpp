#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "igamg/geometry.hpp"
#include "igamg/splines.hpp"

namespace igamg {

/// Compressed-row operator used throughout the solver.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

/// Symmetric interior stencil [a_p, ..., a_1, a_0, a_1, ..., a_p] of a
/// translation-invariant 1D operator.  The matrix row equals `scale` times the
/// stored coefficients (scale = 1/h for stiffness, h for mass).
struct Stencil1D {
    int degree = 0;
    std::vector<double> coeffs; ///< a_0 .. a_p
    double scale = 1.0;

    /// a_|j|, zero outside the stencil.
    [[nodiscard]] double operator()(int j) const noexcept {
        j = j < 0 ? -j : j;
        return j <= degree ? coeffs[static_cast<std::size_t>(j)] : 0.0;
    }
};

SparseMatrix assemble_stiffness_1d(const SplineSpace& space);
SparseMatrix assemble_mass_1d(const SplineSpace& space);
Eigen::VectorXd assemble_rhs_1d(const SplineSpace& space, const std::function<double(double)>& f);

/// Stiffness matrix of a(u,v) = int grad u . grad v on the tensor space
/// space_u x space_v.  Without a geometry the domain is the unit square; with
/// one the basis is the NURBS space induced by the geometry weights.
/// Interior dof (i, j) has index i + space_u.dim() * j.
/// The result is bit-identical for every thread count.
SparseMatrix assemble_stiffness_2d(const SplineSpace& space_u, const SplineSpace& space_v,
                                   const GeometryMap* geometry = nullptr, int threads = 1);

Eigen::VectorXd assemble_rhs_2d(const SplineSpace& space_u, const SplineSpace& space_v,
                                const std::function<double(double, double)>& f, const GeometryMap* geometry = nullptr);

/// Middle row of a 1D operator assembled on `space`, divided by `scale`.
/// Requires m >= 3p + 2 so that two neighbouring rows only couple to
/// uniform (cardinal) B-splines; both are checked for translation invariance
/// and symmetry.
Stencil1D interior_stencil(const SparseMatrix& A, const SplineSpace& space, double scale);

/// Interior stiffness stencil of degree p, normalized by h.
Stencil1D stiffness_stencil(int degree);
/// Interior mass stencil of degree p, normalized by 1/h.
Stencil1D mass_stencil(int degree);

/// L2 norm of u - u_h for u_h = sum_k coeffs[k] N_{k+1}.
double l2_error_1d(const SplineSpace& space, const Eigen::VectorXd& coeffs, const std::function<double(double)>& exact);

/// Matrix Market coordinate (general, real) export.
void write_matrix_market(std::ostream& os, const SparseMatrix& A);

} // namespace igamg
