#include "igamg/multigrid.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace igamg {

namespace {

/// Interior block (drop first/last row and column) of a full-space operator.
SparseMatrix interior_block(const Eigen::SparseMatrix<double>& T) {
    std::vector<Eigen::Triplet<double>> entries;
    for (int c = 0; c < T.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(T, c); it; ++it) {
            const auto r = it.row();
            if (r >= 1 && r < T.rows() - 1 && c >= 1 && c < T.cols() - 1) {
                entries.emplace_back(static_cast<int>(r - 1), c - 1, it.value());
            }
        }
    }
    SparseMatrix P(T.rows() - 2, T.cols() - 2);
    P.setFromTriplets(entries.begin(), entries.end());
    return P;
}

/// diag(1/w_fine) P diag(w_coarse) on interior dofs of the 2D layout.
SparseMatrix rational_prolongation(const SparseMatrix& P, const std::vector<double>& coarse_w, int coarse_full_nu,
                                   const std::vector<double>& fine_w, int fine_full_nu) {
    auto interior_weight = [](const std::vector<double>& w, int full_nu, int k) {
        const int nu = full_nu - 2;
        const int i = k % nu + 1;
        const int j = k / nu + 1;
        return w[static_cast<std::size_t>(i + full_nu * j)];
    };
    SparseMatrix R = P;
    for (int r = 0; r < R.outerSize(); ++r) {
        const double wf = interior_weight(fine_w, fine_full_nu, r);
        for (SparseMatrix::InnerIterator it(R, r); it; ++it) {
            it.valueRef() *= interior_weight(coarse_w, coarse_full_nu, static_cast<int>(it.col())) / wf;
        }
    }
    return R;
}

} // namespace

SparseMatrix prolongation_1d(const SplineSpace& coarse, const SplineSpace& fine) {
    if (coarse.degree() != fine.degree()) {
        throw std::invalid_argument("prolongation_1d: degrees differ");
    }
    if (fine.spans() != 2 * coarse.spans()) {
        throw std::invalid_argument("prolongation_1d: fine mesh must halve every coarse span");
    }
    return interior_block(knot_insertion_matrix(coarse.knots(), fine.knots()));
}

SparseMatrix prolongation_2d(const SparseMatrix& Pu, const SparseMatrix& Pv) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(Pu.nonZeros() * Pv.nonZeros()));
    const auto nuf = static_cast<int>(Pu.rows());
    const auto nuc = static_cast<int>(Pu.cols());
    for (int c = 0; c < Pv.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator iv(Pv, c); iv; ++iv) {
            for (int a = 0; a < Pu.outerSize(); ++a) {
                for (SparseMatrix::InnerIterator iu(Pu, a); iu; ++iu) {
                    entries.emplace_back(a + nuf * c, static_cast<int>(iu.col()) + nuc * static_cast<int>(iv.col()),
                                         iu.value() * iv.value());
                }
            }
        }
    }
    SparseMatrix P(Pu.rows() * Pv.rows(), Pu.cols() * Pv.cols());
    P.setFromTriplets(entries.begin(), entries.end());
    return P;
}

SparseMatrix galerkin_coarsen(const SparseMatrix& A, const SparseMatrix& P) {
    if (A.rows() != A.cols() || A.cols() != P.rows()) {
        throw std::invalid_argument("galerkin_coarsen: dimension mismatch");
    }
    const SparseMatrix AP = A * P;
    return SparseMatrix(P.transpose() * AP);
}

Hierarchy::Hierarchy(SparseMatrix A, int degree, int spans, int dimension, SmootherSpec smoother,
                     const GeometryMap* geometry, HierarchyOptions options) {
    if (dimension != 1 && dimension != 2) {
        throw std::invalid_argument("Hierarchy: dimension must be 1 or 2");
    }
    auto shape_for = [&](int m) {
        const int n = degree + m - 2;
        return dimension == 1 ? GridShape{n, 1, 1} : GridShape{n, n, 2};
    };
    Level fine;
    fine.A = std::move(A);
    fine.spans = spans;
    fine.shape = shape_for(spans);
    if (fine.A.rows() != fine.shape.size() || fine.A.cols() != fine.shape.size()) {
        throw std::invalid_argument("Hierarchy: operator size does not match degree and spans");
    }
    levels_.push_back(std::move(fine));

    while (true) {
        const int m = levels_.back().spans;
        const bool room = options.max_levels <= 0 || static_cast<int>(levels_.size()) < options.max_levels;
        if (!room || m % 2 != 0 || m / 2 < options.min_spans || m / 2 < 2) {
            break;
        }
        const SplineSpace fs(degree, m);
        const SplineSpace cs(degree, m / 2);
        const SparseMatrix P1 = prolongation_1d(cs, fs);
        SparseMatrix P = dimension == 1 ? P1 : prolongation_2d(P1, P1);
        if (geometry != nullptr) {
            const auto wf = refined_weights(*geometry, fs.knots(), fs.knots());
            const auto wc = refined_weights(*geometry, cs.knots(), cs.knots());
            P = rational_prolongation(P, wc, cs.knots().num_basis(), wf, fs.knots().num_basis());
        }
        Level coarse;
        coarse.A = galerkin_coarsen(levels_.back().A, P);
        coarse.spans = m / 2;
        coarse.shape = shape_for(m / 2);
        levels_.back().P = std::move(P);
        levels_.push_back(std::move(coarse));
    }
    for (std::size_t l = 0; l + 1 < levels_.size(); ++l) {
        levels_[l].smoother.emplace(levels_[l].A, levels_[l].shape, smoother);
    }
    coarse_.compute(Eigen::MatrixXd(levels_.back().A));
    if (coarse_.info() != Eigen::Success) {
        throw std::runtime_error("Hierarchy: coarsest operator is not positive definite");
    }
}

void Hierarchy::cycle(Eigen::VectorXd& x, const Eigen::VectorXd& b, const CycleSpec& spec, std::size_t level) const {
    if (level + 1 == levels_.size()) {
        x = coarse_.solve(b);
        return;
    }
    const Level& L = levels_[level];
    for (int k = 0; k < spec.nu1; ++k) {
        L.smoother->sweep(L.A, b, x);
    }
    const Eigen::VectorXd r = b - L.A * x;
    const Eigen::VectorXd rc = L.P.transpose() * r;
    Eigen::VectorXd ec = Eigen::VectorXd::Zero(rc.size());
    const int gamma = spec.type == CycleType::W && level + 2 < levels_.size() ? 2 : 1;
    for (int g = 0; g < gamma; ++g) {
        cycle(ec, rc, spec, level + 1);
    }
    x += L.P * ec;
    for (int k = 0; k < spec.nu2; ++k) {
        L.smoother->sweep(L.A, b, x);
    }
}

Eigen::VectorXd random_vector(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }
    return v;
}

SolveReport solve(const Hierarchy& hierarchy, const Eigen::VectorXd& b, const CycleSpec& spec,
                  const SolveOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const SparseMatrix& A = hierarchy.matrix();
    if (b.size() != A.rows()) {
        throw std::invalid_argument("solve: right-hand side has the wrong size");
    }
    SolveReport report;
    Eigen::VectorXd x = random_vector(b.size(), options.seed);
    report.residuals.push_back((b - A * x).norm());
    const double r0 = report.residuals.front();
    report.converged = r0 == 0.0;
    while (!report.converged && report.iterations < options.max_iterations) {
        hierarchy.cycle(x, b, spec);
        ++report.iterations;
        const double r = (b - A * x).norm();
        report.residuals.push_back(r);
        if (!std::isfinite(r)) {
            break;
        }
        report.converged = r <= options.tol * r0;
    }
    const auto& h = report.residuals;
    const int k = std::min<int>(5, static_cast<int>(h.size()) - 1);
    if (k > 0 && h[h.size() - 1 - static_cast<std::size_t>(k)] > 0.0) {
        report.rho = std::pow(h.back() / h[h.size() - 1 - static_cast<std::size_t>(k)], 1.0 / k);
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

FactorReport measured_asymptotic_factor(const Hierarchy& hierarchy, const CycleSpec& spec, std::uint64_t seed,
                                        double reduction, int min_iterations, int max_iterations) {
    const SparseMatrix& A = hierarchy.matrix();
    const Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
    Eigen::VectorXd x = random_vector(A.rows(), seed);
    std::vector<double> ratios;
    double cumulative = 1.0;
    double r = (A * x).norm();
    FactorReport out;
    while (r > 0.0 && out.iterations < max_iterations) {
        x /= r;
        hierarchy.cycle(x, b, spec);
        ++out.iterations;
        r = (A * x).norm();
        if (!std::isfinite(r)) {
            break;
        }
        ratios.push_back(r);
        cumulative *= r;
        if (cumulative <= reduction && out.iterations >= min_iterations) {
            break;
        }
    }
    const std::size_t k = std::min<std::size_t>(5, ratios.size());
    double logsum = 0.0;
    for (std::size_t i = ratios.size() - k; i < ratios.size(); ++i) {
        logsum += std::log(std::max(ratios[i], 1e-300));
    }
    out.rho = k > 0 ? std::exp(logsum / static_cast<double>(k)) : 0.0;
    out.reliable = out.iterations >= 8 && k == 5;
    return out;
}

} // namespace igamg
