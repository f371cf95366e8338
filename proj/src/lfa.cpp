#include "igamg/lfa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "igamg/multigrid.hpp"

namespace igamg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

cplx phase(double x) {
    return std::polar(1.0, x);
}

double sign(double x) {
    return x < 0.0 ? -1.0 : 1.0;
}

} // namespace

double operator_symbol(const Stencil1D& a, double theta) {
    double s = a(0);
    for (int j = 1; j <= a.degree; ++j) {
        s += 2.0 * a(j) * std::cos(j * theta);
    }
    return s;
}

double operator_symbol_2d(const Stencil1D& stiffness, const Stencil1D& mass, double theta1, double theta2) {
    return operator_symbol(stiffness, theta1) * operator_symbol(mass, theta2) +
           operator_symbol(mass, theta1) * operator_symbol(stiffness, theta2);
}

std::optional<cplx> gs_symbol(const Stencil1D& a, double theta) {
    cplx plus = a(0);
    cplx minus = 0.0;
    for (int j = 1; j <= a.degree; ++j) {
        plus += a(j) * phase(-j * theta);
        minus += a(j) * phase(j * theta);
    }
    if (std::abs(plus) < 1e-14) {
        return std::nullopt;
    }
    return -minus / plus;
}

SchwarzSystem schwarz_system(const Stencil1D& a, int n, double theta) {
    if (n < 1 || n % 2 == 0) {
        throw std::invalid_argument("schwarz_system: block size must be odd");
    }
    const int k = (n - 1) / 2;
    const int p = a.degree;
    // Block centered at 0 covers offsets s in [-k, k]; offset s holds
    // alpha^(k+1-s) after the step, offsets left of the block hold the final
    // alpha^(n), offsets right of it still hold the initial error.
    SchwarzSystem sys;
    sys.Pbar = Eigen::MatrixXcd::Zero(n, n);
    sys.DP = Eigen::VectorXcd::Ones(n);
    sys.Q = Eigen::VectorXcd::Zero(n);
    for (int m = 1; m < n; ++m) {
        sys.DP[m - 1] = phase((k + 1 - m) * theta);
    }
    for (int r = -k; r <= k; ++r) {
        const int row = r + k;
        for (int m = 1; m < n; ++m) {
            sys.Pbar(row, m - 1) = a(k + 1 - m - r);
        }
        cplx tail = 0.0;
        for (int s = -k; s >= r - p; --s) {
            tail += a(s - r) * phase(s * theta);
        }
        sys.Pbar(row, n - 1) = tail;
        cplx q = 0.0;
        for (int s = k + 1; s <= r + p; ++s) {
            q -= a(s - r) * phase(s * theta);
        }
        sys.Q[row] = q;
    }
    sys.P = sys.Pbar * sys.DP.asDiagonal();
    return sys;
}

std::optional<cplx> schwarz_symbol(const Stencil1D& a, int n, double theta) {
    const auto sys = schwarz_system(a, n, theta);
    if (sys.Q.squaredNorm() == 0.0) {
        return cplx{0.0};
    }
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.P);
    if (!(lu.rcond() > 1e-13)) {
        return std::nullopt;
    }
    const Eigen::VectorXcd alpha = lu.solve(sys.Q);
    return alpha[n - 1];
}

std::optional<cplx> SmootherSymbol::operator()(double theta) const {
    if (kind == SmootherKind::gauss_seidel) {
        return gs_symbol(stencil, theta);
    }
    if (kind == SmootherKind::colored_schwarz) {
        throw std::invalid_argument("SmootherSymbol: no Fourier symbol for the colored Schwarz smoother");
    }
    return schwarz_symbol(stencil, block, theta);
}

std::vector<double> prolongation_mask(int degree) {
    const int m = 2 * degree + 4;
    const SplineSpace coarse(degree, m);
    const SplineSpace fine(degree, 2 * m);
    const SparseMatrix P = prolongation_1d(coarse, fine);
    const SparseMatrix Pt = P.transpose();
    // interior coarse function away from both ends
    const int col = m / 2;
    std::vector<double> mask;
    for (SparseMatrix::InnerIterator it(Pt, col); it; ++it) {
        mask.push_back(it.value());
    }
    if (static_cast<int>(mask.size()) != degree + 2) {
        throw std::runtime_error("prolongation_mask: unexpected interior column");
    }
    return mask;
}

cplx prolongation_symbol(const std::vector<double>& mask, double theta) {
    const int shift = (static_cast<int>(mask.size()) - 1) / 2;
    cplx s = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k) {
        s += mask[k] * phase(-(static_cast<int>(k) - shift) * theta);
    }
    return s;
}

cplx restriction_symbol(const std::vector<double>& mask, double theta) {
    return std::conj(prolongation_symbol(mask, theta));
}

double harmonic_partner(double theta0) {
    return theta0 - sign(theta0) * kPi;
}

double galerkin_coarse_symbol(const Stencil1D& a, const std::vector<double>& mask, double theta0) {
    double s = 0.0;
    for (double t : {theta0, harmonic_partner(theta0)}) {
        s += std::norm(prolongation_symbol(mask, t)) * operator_symbol(a, t);
    }
    return s;
}

std::array<double, 4> harmonics_4h(double theta0) {
    const double sg = sign(theta0);
    std::array<double, 4> out{};
    for (int alpha = 0; alpha < 2; ++alpha) {
        for (int beta = 0; beta < 2; ++beta) {
            const double pm = (alpha + beta) % 2 == 0 ? 1.0 : -1.0;
            out[static_cast<std::size_t>(2 * alpha + beta)] = theta0 - alpha * sg * kPi / 2 + pm * beta * sg * kPi;
        }
    }
    return out;
}

std::optional<Eigen::Matrix2cd> two_grid_symbol(const SmootherSymbol& smoother, const std::vector<double>& mask,
                                                double theta0, int nu1, int nu2) {
    const double t[2] = {theta0, harmonic_partner(theta0)};
    const double coarse = galerkin_coarse_symbol(smoother.stencil, mask, theta0);
    if (std::abs(coarse) < 1e-14) {
        return std::nullopt;
    }
    Eigen::Vector2cd Pc, S;
    Eigen::RowVector2cd Rr;
    for (int a = 0; a < 2; ++a) {
        const auto s = smoother(t[a]);
        if (!s) {
            return std::nullopt;
        }
        S[a] = *s;
        Pc[a] = prolongation_symbol(mask, t[a]);
        Rr[a] = restriction_symbol(mask, t[a]) * operator_symbol(smoother.stencil, t[a]);
    }
    const Eigen::Matrix2cd K = Eigen::Matrix2cd::Identity() - Pc * Rr / coarse;
    Eigen::Matrix2cd M = K;
    for (int k = 0; k < nu1; ++k) {
        M = M * S.asDiagonal();
    }
    for (int k = 0; k < nu2; ++k) {
        M = S.asDiagonal() * M;
    }
    return M;
}

std::optional<Eigen::Matrix4cd> three_grid_symbol(const SmootherSymbol& smoother, const std::vector<double>& mask,
                                                  double theta0, int nu1, int nu2, int gamma) {
    const auto t = harmonics_4h(theta0);
    const double phi0 = 2.0 * theta0;
    const auto inner = two_grid_symbol(smoother, mask, phi0, nu1, nu2);
    if (!inner) {
        return std::nullopt;
    }
    Eigen::Matrix2cd Mg = Eigen::Matrix2cd::Identity();
    for (int g = 0; g < gamma; ++g) {
        Mg = Mg * *inner;
    }
    Eigen::Vector4cd S;
    Eigen::Matrix<cplx, 4, 2> P = Eigen::Matrix<cplx, 4, 2>::Zero();
    Eigen::Matrix<cplx, 2, 4> RA = Eigen::Matrix<cplx, 2, 4>::Zero();
    Eigen::Vector2cd coarse_inv;
    for (int alpha = 0; alpha < 2; ++alpha) {
        const double c = galerkin_coarse_symbol(smoother.stencil, mask, t[static_cast<std::size_t>(2 * alpha)]);
        if (std::abs(c) < 1e-14) {
            return std::nullopt;
        }
        coarse_inv[alpha] = 1.0 / c;
        for (int beta = 0; beta < 2; ++beta) {
            const int row = 2 * alpha + beta;
            const double th = t[static_cast<std::size_t>(row)];
            const auto s = smoother(th);
            if (!s) {
                return std::nullopt;
            }
            S[row] = *s;
            P(row, alpha) = prolongation_symbol(mask, th);
            RA(alpha, row) = restriction_symbol(mask, th) * operator_symbol(smoother.stencil, th);
        }
    }
    const Eigen::Matrix2cd inner_corr = (Eigen::Matrix2cd::Identity() - Mg) * coarse_inv.asDiagonal();
    const Eigen::Matrix4cd K = Eigen::Matrix4cd::Identity() - P * inner_corr * RA;
    Eigen::Matrix4cd M = K;
    for (int k = 0; k < nu1; ++k) {
        M = M * S.asDiagonal();
    }
    for (int k = 0; k < nu2; ++k) {
        M = S.asDiagonal() * M;
    }
    return M;
}

double spectral_radius(const Eigen::Matrix2cd& M) {
    const cplx tr = M.trace();
    const cplx det = M.determinant();
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    return std::max(std::abs(0.5 * (tr + disc)), std::abs(0.5 * (tr - disc)));
}

double spectral_radius(const Eigen::Matrix4cd& M) {
    const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(M, false);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("spectral_radius: eigenvalue iteration failed");
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

LfaReport analyze(const LfaConfig& config) {
    if (config.samples < 64) {
        throw std::invalid_argument("analyze: need at least 64 frequency samples");
    }
    if (config.nu1 < 0 || config.nu2 < 0 || config.nu1 + config.nu2 < 1) {
        throw std::invalid_argument("analyze: need nu1, nu2 >= 0 and nu1 + nu2 >= 1");
    }
    if (config.kind == SmootherKind::colored_schwarz) {
        throw std::invalid_argument("analyze: the colored Schwarz smoother has no Fourier symbol");
    }
    if (config.kind == SmootherKind::schwarz && (config.block < 3 || config.block % 2 == 0)) {
        throw std::invalid_argument("analyze: Schwarz block size must be odd and >= 3");
    }
    LfaReport rep;
    rep.config = config;
    const SmootherSymbol smoother{stiffness_stencil(config.degree), config.kind, config.block};
    const auto mask = prolongation_mask(config.degree);
    const int N = config.samples;

    // smoothing factor over the high frequencies pi/2 <= |theta| <= pi
    for (int k = 0; k <= N; ++k) {
        const double t = kPi / 2 + k * (kPi / 2) / N;
        for (double th : {t, -t}) {
            ++rep.samples;
            if (const auto s = smoother(th)) {
                rep.mu = std::max(rep.mu, std::abs(*s));
            } else {
                ++rep.skipped;
            }
        }
    }
    for (int k = 0; k < N; ++k) {
        const double t2 = -kPi / 2 + (k + 0.5) * kPi / N;
        ++rep.samples;
        if (const auto M = two_grid_symbol(smoother, mask, t2, config.nu1, config.nu2)) {
            rep.rho_2g = std::max(rep.rho_2g, spectral_radius(*M));
        } else {
            ++rep.skipped;
        }
        const double t3 = -kPi / 4 + (k + 0.5) * (kPi / 2) / N;
        ++rep.samples;
        if (const auto M = three_grid_symbol(smoother, mask, t3, config.nu1, config.nu2, config.gamma)) {
            rep.rho_3g = std::max(rep.rho_3g, spectral_radius(*M));
        } else {
            ++rep.skipped;
        }
    }
    for (int k = 0; k < 2 * N; ++k) {
        const double th = -kPi + (k + 1) * kPi / N;
        if (const auto s = smoother(th)) {
            rep.curve.emplace_back(th, std::abs(*s));
        }
    }
    rep.reliable = rep.skipped <= 0.05 * rep.samples;
    return rep;
}

} // namespace igamg
