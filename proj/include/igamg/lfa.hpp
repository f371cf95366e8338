#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "igamg/assembly.hpp"
#include "igamg/smoothers.hpp"

namespace igamg {

using cplx = std::complex<double>;

// All symbols are normalized to h = 1; frequencies live in (-pi, pi].

/// a_0 + 2 sum_j a_j cos(j theta).
double operator_symbol(const Stencil1D& a, double theta);

/// K(t1) M(t2) + M(t1) K(t2) for the tensor parametric operator.
double operator_symbol_2d(const Stencil1D& stiffness, const Stencil1D& mass, double theta1, double theta2);

/// Forward lexicographic Gauss-Seidel: -A_minus / A_plus.  Empty if
/// |A_plus| < 1e-14.
std::optional<cplx> gs_symbol(const Stencil1D& a, double theta);

/// Linear system P alpha = Q for the intermediate-error coefficients
/// alpha^(1..n) of one overlapping block step; P = Pbar * D_P.
struct SchwarzSystem {
    Eigen::MatrixXcd Pbar;
    Eigen::VectorXcd DP; ///< diagonal of D_P
    Eigen::MatrixXcd P;
    Eigen::VectorXcd Q;
};

SchwarzSystem schwarz_system(const Stencil1D& a, int n, double theta);

/// Last component of P^{-1} Q; empty if P is numerically singular.
std::optional<cplx> schwarz_symbol(const Stencil1D& a, int n, double theta);

/// Smoother symbol for GS or (non-colored) Schwarz with block size n.
struct SmootherSymbol {
    Stencil1D stencil;
    SmootherKind kind = SmootherKind::gauss_seidel;
    int block = 3;

    [[nodiscard]] std::optional<cplx> operator()(double theta) const;
};

/// Interior column of the prolongation, i.e. the refinement mask
/// 2^{-p} binom(p+1, k), k = 0..p+1, read off the knot-insertion operator.
std::vector<double> prolongation_mask(int degree);

/// sum_k c_k exp(-i (k - floor((p+1)/2)) theta) and its adjoint (conjugate).
cplx prolongation_symbol(const std::vector<double>& mask, double theta);
cplx restriction_symbol(const std::vector<double>& mask, double theta);

/// Galerkin coarse symbol sum over the 2h-harmonics of R A P at 2 theta0.
double galerkin_coarse_symbol(const Stencil1D& a, const std::vector<double>& mask, double theta0);

/// theta0 - sign(theta0) pi.
double harmonic_partner(double theta0);

/// theta^alpha_beta for the 4h-harmonics of theta0, ordered
/// [theta^0_0, theta^0_1, theta^1_0, theta^1_1].
std::array<double, 4> harmonics_4h(double theta0);

/// Two-grid error operator on span{theta0, harmonic_partner(theta0)}.
/// Empty if the coarse symbol or a smoother symbol is singular.
std::optional<Eigen::Matrix2cd> two_grid_symbol(const SmootherSymbol& smoother, const std::vector<double>& mask,
                                                double theta0, int nu1, int nu2);

/// Three-grid error operator on the four 4h-harmonics of theta0 with the
/// coarse problem solved by gamma two-grid cycles.
std::optional<Eigen::Matrix4cd> three_grid_symbol(const SmootherSymbol& smoother, const std::vector<double>& mask,
                                                  double theta0, int nu1, int nu2, int gamma);

double spectral_radius(const Eigen::Matrix2cd& M);
double spectral_radius(const Eigen::Matrix4cd& M);

struct LfaConfig {
    int degree = 2;
    SmootherKind kind = SmootherKind::gauss_seidel;
    int block = 3;
    int nu1 = 1;
    int nu2 = 0;
    int gamma = 1; ///< 1: V-cycle, 2: W-cycle in the three-grid analysis
    int samples = 256;
};

struct LfaReport {
    LfaConfig config;
    double mu = 0.0;
    double rho_2g = 0.0;
    double rho_3g = 0.0;
    int samples = 0;
    int skipped = 0;
    bool reliable = true;                        ///< skipped fraction <= 5%
    std::vector<std::pair<double, double>> curve; ///< (theta, |S(theta)|) over (-pi, pi]
};

LfaReport analyze(const LfaConfig& config);

} // namespace igamg
