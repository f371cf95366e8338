#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "igamg/splines.hpp"

namespace igamg {

/// Rational tensor-product basis values on the (p_u+1) x (p_v+1) active
/// window at a parametric point.  Local entry a + count_u * b belongs to the
/// function with full indices (first_u + a, first_v + b).
struct RationalBasis {
    int first_u = 0;
    int first_v = 0;
    int count_u = 0;
    int count_v = 0;
    std::vector<double> value;
    std::vector<double> du;
    std::vector<double> dv;
};

/// NURBS basis R_ij = w_ij N_i(u) N_j(v) / sum_kl w_kl N_k(u) N_l(v) and its
/// parametric gradient.  `weights` is laid out as i + n_u * j and must be
/// strictly positive on the active window.
RationalBasis nurbs_eval(const KnotVector& ku, const KnotVector& kv, std::span<const double> weights, double u,
                         double v);

/// Single-patch NURBS map F: [0,1]^2 -> Omega.
class GeometryMap {
public:
    struct Evaluation {
        Eigen::Vector2d point;
        Eigen::Matrix2d jacobian; ///< columns dF/du, dF/dv
        double weight;            ///< W(u,v) = sum w_ij N_ij
        Eigen::Vector2d weight_gradient;
    };

    GeometryMap(KnotVector ku, KnotVector kv, std::vector<Eigen::Vector2d> control, std::vector<double> weights);

    [[nodiscard]] Evaluation evaluate(double u, double v) const;
    [[nodiscard]] Eigen::Vector2d operator()(double u, double v) const { return evaluate(u, v).point; }

    [[nodiscard]] const KnotVector& knots_u() const noexcept { return ku_; }
    [[nodiscard]] const KnotVector& knots_v() const noexcept { return kv_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] const std::vector<Eigen::Vector2d>& control_points() const noexcept { return control_; }

private:
    KnotVector ku_;
    KnotVector kv_;
    std::vector<Eigen::Vector2d> control_;
    std::vector<double> weights_;
};

/// Exact quadratic NURBS parametrization of the quarter annulus
/// { inner^2 <= x^2 + y^2 <= outer^2, x, y >= 0 }.  The first parameter is
/// radial (inner arc at u = 0), the second angular (x-axis at v = 0).
GeometryMap quarter_annulus(double inner, double outer);

/// Bilinear map of the unit square with F(0,0) = c00, F(1,0) = c10,
/// F(0,1) = c01, F(1,1) = c11 (unit weights).
GeometryMap bilinear_map(const Eigen::Vector2d& c00, const Eigen::Vector2d& c10, const Eigen::Vector2d& c01,
                         const Eigen::Vector2d& c11);

/// Coefficients of the geometry weight function W in a finer tensor basis,
/// laid out as i + n_u * j.  These are the NURBS weights of the analysis
/// space obtained by refining / degree-elevating the geometry.
std::vector<double> refined_weights(const GeometryMap& geometry, const KnotVector& ku, const KnotVector& kv);

} // namespace igamg
