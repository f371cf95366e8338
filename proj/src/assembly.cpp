#include "igamg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "igamg/parallel.hpp"
#include "igamg/quadrature.hpp"

namespace igamg {

namespace {

/// 1D basis data at the Gauss points of every knot span.
struct SpanTable {
    int degree = 0;
    int spans = 0;
    int points = 0;                  // per span
    std::vector<double> x;           // [span][q]
    std::vector<double> weight;      // [span][q], includes the span length
    std::vector<double> value;       // [span][q][a]
    std::vector<double> deriv;       // [span][q][a]
    std::vector<int> first;          // [span]

    SpanTable(const SplineSpace& space, int q) : degree(space.degree()), spans(space.spans()), points(q) {
        const auto rule = gauss_legendre_rule(q);
        const auto n = static_cast<std::size_t>(spans * q);
        const auto w = static_cast<std::size_t>(degree + 1);
        x.resize(n);
        weight.resize(n);
        value.resize(n * w);
        deriv.resize(n * w);
        first.resize(static_cast<std::size_t>(spans));
        for (int e = 0; e < spans; ++e) {
            for (int k = 0; k < q; ++k) {
                const auto idx = static_cast<std::size_t>(e * q + k);
                x[idx] = (e + rule.points[static_cast<std::size_t>(k)]) * space.h();
                weight[idx] = rule.weights[static_cast<std::size_t>(k)] * space.h();
                first[static_cast<std::size_t>(e)] = eval_basis_into(space.knots(), x[idx],
                                                                     std::span(value).subspan(idx * w, w),
                                                                     std::span(deriv).subspan(idx * w, w));
            }
        }
    }

    [[nodiscard]] std::size_t at(int e, int q) const noexcept { return static_cast<std::size_t>(e * points + q); }
    [[nodiscard]] double N(int e, int q, int a) const noexcept {
        return value[at(e, q) * static_cast<std::size_t>(degree + 1) + static_cast<std::size_t>(a)];
    }
    [[nodiscard]] double dN(int e, int q, int a) const noexcept {
        return deriv[at(e, q) * static_cast<std::size_t>(degree + 1) + static_cast<std::size_t>(a)];
    }
};

SparseMatrix assemble_1d(const SplineSpace& space, bool stiffness) {
    const int p = space.degree();
    const int n = space.dim();
    const SpanTable table(space, p + 1);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(space.spans() * (p + 1) * (p + 1)));
    for (int e = 0; e < space.spans(); ++e) {
        const int f = table.first[static_cast<std::size_t>(e)];
        for (int a = 0; a <= p; ++a) {
            const int row = f + a - 1;
            if (row < 0 || row >= n) {
                continue;
            }
            for (int b = 0; b <= p; ++b) {
                const int col = f + b - 1;
                if (col < 0 || col >= n) {
                    continue;
                }
                double s = 0.0;
                for (int q = 0; q < table.points; ++q) {
                    const double w = table.weight[table.at(e, q)];
                    s += stiffness ? w * table.dN(e, q, a) * table.dN(e, q, b) : w * table.N(e, q, a) * table.N(e, q, b);
                }
                entries.emplace_back(row, col, s);
            }
        }
    }
    SparseMatrix A(n, n);
    A.setFromTriplets(entries.begin(), entries.end());
    return A;
}

/// CSR pattern of the tensor operator coupling (i, j) with (k, l) whenever
/// |i - k| <= p_u and |j - l| <= p_v.
struct TensorPattern {
    int nu, nv, pu, pv;
    std::vector<int> outer;
    std::vector<int> inner;

    TensorPattern(int nu_, int nv_, int pu_, int pv_) : nu(nu_), nv(nv_), pu(pu_), pv(pv_) {
        outer.reserve(static_cast<std::size_t>(nu * nv + 1));
        outer.push_back(0);
        for (int j = 0; j < nv; ++j) {
            for (int i = 0; i < nu; ++i) {
                for (int l = std::max(0, j - pv); l <= std::min(nv - 1, j + pv); ++l) {
                    for (int k = std::max(0, i - pu); k <= std::min(nu - 1, i + pu); ++k) {
                        inner.push_back(k + nu * l);
                    }
                }
                outer.push_back(static_cast<int>(inner.size()));
            }
        }
    }

    [[nodiscard]] std::size_t position(int i, int j, int k, int l) const noexcept {
        const int kstart = std::max(0, i - pu);
        const int lstart = std::max(0, j - pv);
        const int countk = std::min(nu - 1, i + pu) - kstart + 1;
        return static_cast<std::size_t>(outer[static_cast<std::size_t>(i + nu * j)] + (l - lstart) * countk +
                                        (k - kstart));
    }
};

/// Values and parametric gradients of the (rational) tensor basis on one
/// element at one quadrature point.
struct PointBasis {
    std::vector<double> R, Ru, Rv;
};

void tensor_basis_at(const SpanTable& tu, const SpanTable& tv, int eu, int ev, int qu, int qv,
                     const std::vector<double>& weights, int full_nu, PointBasis& out) {
    const int pu = tu.degree;
    const int pv = tv.degree;
    const int fu = tu.first[static_cast<std::size_t>(eu)];
    const int fv = tv.first[static_cast<std::size_t>(ev)];
    double W = 0.0, Wu = 0.0, Wv = 0.0;
    std::size_t k = 0;
    for (int b = 0; b <= pv; ++b) {
        for (int a = 0; a <= pu; ++a, ++k) {
            const double w =
                weights.empty() ? 1.0 : weights[static_cast<std::size_t>(fu + a + full_nu * (fv + b))];
            out.R[k] = w * tu.N(eu, qu, a) * tv.N(ev, qv, b);
            out.Ru[k] = w * tu.dN(eu, qu, a) * tv.N(ev, qv, b);
            out.Rv[k] = w * tu.N(eu, qu, a) * tv.dN(ev, qv, b);
            W += out.R[k];
            Wu += out.Ru[k];
            Wv += out.Rv[k];
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        const double r = out.R[c] / W;
        out.Ru[c] = out.Ru[c] / W - r * Wu / W;
        out.Rv[c] = out.Rv[c] / W - r * Wv / W;
        out.R[c] = r;
    }
}

void check_dofs(const SplineSpace& su, const SplineSpace& sv) {
    const double dofs = static_cast<double>(su.dim()) * static_cast<double>(sv.dim());
    if (dofs > 1e7) {
        throw std::length_error("assemble_2d: refusing to assemble more than 1e7 unknowns");
    }
}

Eigen::Matrix2d jacobian_at(const GeometryMap* geometry, double u, double v, Eigen::Vector2d* point) {
    if (geometry == nullptr) {
        if (point != nullptr) {
            *point = Eigen::Vector2d(u, v);
        }
        return Eigen::Matrix2d::Identity();
    }
    const auto e = geometry->evaluate(u, v);
    if (point != nullptr) {
        *point = e.point;
    }
    const double det = e.jacobian.determinant();
    if (!(det > 0.0)) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "assemble_2d: nonpositive Jacobian determinant " << det
            << " at quadrature point (" << u << ", " << v << ")";
        throw std::domain_error(msg.str());
    }
    return e.jacobian;
}

} // namespace

SparseMatrix assemble_stiffness_1d(const SplineSpace& space) {
    return assemble_1d(space, true);
}

SparseMatrix assemble_mass_1d(const SplineSpace& space) {
    return assemble_1d(space, false);
}

Eigen::VectorXd assemble_rhs_1d(const SplineSpace& space, const std::function<double(double)>& f) {
    const int p = space.degree();
    const SpanTable table(space, p + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.dim());
    for (int e = 0; e < space.spans(); ++e) {
        const int first = table.first[static_cast<std::size_t>(e)];
        for (int q = 0; q < table.points; ++q) {
            const double fx = f(table.x[table.at(e, q)]) * table.weight[table.at(e, q)];
            for (int a = 0; a <= p; ++a) {
                const int row = first + a - 1;
                if (row >= 0 && row < space.dim()) {
                    b[row] += fx * table.N(e, q, a);
                }
            }
        }
    }
    return b;
}

SparseMatrix assemble_stiffness_2d(const SplineSpace& space_u, const SplineSpace& space_v,
                                   const GeometryMap* geometry, int threads) {
    check_dofs(space_u, space_v);
    const int pu = space_u.degree();
    const int pv = space_v.degree();
    const int nu = space_u.dim();
    const int nv = space_v.dim();
    const int full_nu = space_u.knots().num_basis();
    const SpanTable tu(space_u, pu + 1);
    const SpanTable tv(space_v, pv + 1);
    const std::vector<double> weights =
        geometry ? refined_weights(*geometry, space_u.knots(), space_v.knots()) : std::vector<double>{};

    const TensorPattern pattern(nu, nv, pu, pv);
    std::vector<double> values(pattern.inner.size(), 0.0);

    const int nloc = (pu + 1) * (pv + 1);
    const int nq = tu.points * tv.points;
    const int elements = space_u.spans() * space_v.spans();
    const int batch = 64;
    std::vector<Eigen::MatrixXd> local(static_cast<std::size_t>(batch), Eigen::MatrixXd(nloc, nloc));

    for (int start = 0; start < elements; start += batch) {
        const int count = std::min(batch, elements - start);
        parallel_for(count, threads, [&](int k) {
            const int e = start + k;
            const int eu = e % space_u.spans();
            const int ev = e / space_u.spans();
            PointBasis basis{std::vector<double>(static_cast<std::size_t>(nloc)),
                             std::vector<double>(static_cast<std::size_t>(nloc)),
                             std::vector<double>(static_cast<std::size_t>(nloc))};
            Eigen::MatrixXd G(nloc, 2 * nq);
            int col = 0;
            for (int qv = 0; qv < tv.points; ++qv) {
                for (int qu = 0; qu < tu.points; ++qu, col += 2) {
                    const double u = tu.x[tu.at(eu, qu)];
                    const double v = tv.x[tv.at(ev, qv)];
                    tensor_basis_at(tu, tv, eu, ev, qu, qv, weights, full_nu, basis);
                    const Eigen::Matrix2d J = jacobian_at(geometry, u, v, nullptr);
                    const double det = J.determinant();
                    const Eigen::Matrix2d JinvT = J.inverse().transpose();
                    const double s = std::sqrt(tu.weight[tu.at(eu, qu)] * tv.weight[tv.at(ev, qv)] * det);
                    for (int a = 0; a < nloc; ++a) {
                        const auto ia = static_cast<std::size_t>(a);
                        G(a, col) = s * (JinvT(0, 0) * basis.Ru[ia] + JinvT(0, 1) * basis.Rv[ia]);
                        G(a, col + 1) = s * (JinvT(1, 0) * basis.Ru[ia] + JinvT(1, 1) * basis.Rv[ia]);
                    }
                }
            }
            local[static_cast<std::size_t>(k)].noalias() = G * G.transpose();
        });
        // serial scatter in element order keeps the summation order fixed
        for (int k = 0; k < count; ++k) {
            const int e = start + k;
            const int eu = e % space_u.spans();
            const int ev = e / space_u.spans();
            const int fu = tu.first[static_cast<std::size_t>(eu)] - 1;
            const int fv = tv.first[static_cast<std::size_t>(ev)] - 1;
            const auto& K = local[static_cast<std::size_t>(k)];
            for (int b = 0; b <= pv; ++b) {
                const int j = fv + b;
                if (j < 0 || j >= nv) {
                    continue;
                }
                for (int a = 0; a <= pu; ++a) {
                    const int i = fu + a;
                    if (i < 0 || i >= nu) {
                        continue;
                    }
                    const int ra = a + (pu + 1) * b;
                    for (int d = 0; d <= pv; ++d) {
                        const int l = fv + d;
                        if (l < 0 || l >= nv) {
                            continue;
                        }
                        for (int c = 0; c <= pu; ++c) {
                            const int kk = fu + c;
                            if (kk < 0 || kk >= nu) {
                                continue;
                            }
                            values[pattern.position(i, j, kk, l)] += K(ra, c + (pu + 1) * d);
                        }
                    }
                }
            }
        }
    }

    const Eigen::Map<const SparseMatrix> view(nu * nv, nu * nv, static_cast<Eigen::Index>(values.size()),
                                              pattern.outer.data(), pattern.inner.data(), values.data());
    return SparseMatrix(view);
}

Eigen::VectorXd assemble_rhs_2d(const SplineSpace& space_u, const SplineSpace& space_v,
                                const std::function<double(double, double)>& f, const GeometryMap* geometry) {
    check_dofs(space_u, space_v);
    const int pu = space_u.degree();
    const int pv = space_v.degree();
    const int nu = space_u.dim();
    const int nv = space_v.dim();
    const int full_nu = space_u.knots().num_basis();
    const SpanTable tu(space_u, pu + 1);
    const SpanTable tv(space_v, pv + 1);
    const std::vector<double> weights =
        geometry ? refined_weights(*geometry, space_u.knots(), space_v.knots()) : std::vector<double>{};
    const int nloc = (pu + 1) * (pv + 1);
    PointBasis basis{std::vector<double>(static_cast<std::size_t>(nloc)),
                     std::vector<double>(static_cast<std::size_t>(nloc)),
                     std::vector<double>(static_cast<std::size_t>(nloc))};

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nu * nv);
    for (int ev = 0; ev < space_v.spans(); ++ev) {
        for (int eu = 0; eu < space_u.spans(); ++eu) {
            const int fu = tu.first[static_cast<std::size_t>(eu)] - 1;
            const int fv = tv.first[static_cast<std::size_t>(ev)] - 1;
            for (int qv = 0; qv < tv.points; ++qv) {
                for (int qu = 0; qu < tu.points; ++qu) {
                    const double u = tu.x[tu.at(eu, qu)];
                    const double v = tv.x[tv.at(ev, qv)];
                    tensor_basis_at(tu, tv, eu, ev, qu, qv, weights, full_nu, basis);
                    Eigen::Vector2d X;
                    const Eigen::Matrix2d J = jacobian_at(geometry, u, v, &X);
                    const double w = tu.weight[tu.at(eu, qu)] * tv.weight[tv.at(ev, qv)] * J.determinant();
                    const double fx = w * f(X.x(), X.y());
                    for (int b = 0; b <= pv; ++b) {
                        const int j = fv + b;
                        if (j < 0 || j >= nv) {
                            continue;
                        }
                        for (int a = 0; a <= pu; ++a) {
                            const int i = fu + a;
                            if (i >= 0 && i < nu) {
                                rhs[i + nu * j] += fx * basis.R[static_cast<std::size_t>(a + (pu + 1) * b)];
                            }
                        }
                    }
                }
            }
        }
    }
    return rhs;
}

Stencil1D interior_stencil(const SparseMatrix& A, const SplineSpace& space, double scale) {
    const int p = space.degree();
    const int m = space.spans();
    if (m < 3 * p + 2) {
        throw std::invalid_argument("interior_stencil: need m >= 3p + 2 for a fully interior row");
    }
    if (A.rows() != space.dim() || A.cols() != space.dim()) {
        throw std::invalid_argument("interior_stencil: matrix does not match the space");
    }
    // full B-spline indices in [2p, m-1-p] only couple to cardinal B-splines
    const int full = (2 * p + (m - 1 - p)) / 2;
    const int row = full - 1;
    Stencil1D s;
    s.degree = p;
    s.scale = scale;
    s.coeffs.resize(static_cast<std::size_t>(p + 1));
    for (int j = 0; j <= p; ++j) {
        s.coeffs[static_cast<std::size_t>(j)] = A.coeff(row, row + j) / scale;
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(s.coeffs[0]));
    const int neighbour = full + 1 <= m - 1 - p ? row + 1 : row - 1;
    for (int j = -p; j <= p; ++j) {
        if (std::abs(A.coeff(row, row + j) / scale - s(j)) > tol ||
            std::abs(A.coeff(neighbour, neighbour + j) / scale - s(j)) > tol) {
            throw std::runtime_error("interior_stencil: interior rows are not symmetric shifts of each other");
        }
    }
    return s;
}

Stencil1D stiffness_stencil(int degree) {
    const SplineSpace space(degree, 4 * degree + 4);
    return interior_stencil(assemble_stiffness_1d(space), space, 1.0 / space.h());
}

Stencil1D mass_stencil(int degree) {
    const SplineSpace space(degree, 4 * degree + 4);
    return interior_stencil(assemble_mass_1d(space), space, space.h());
}

double l2_error_1d(const SplineSpace& space, const Eigen::VectorXd& coeffs,
                   const std::function<double(double)>& exact) {
    if (coeffs.size() != space.dim()) {
        throw std::invalid_argument("l2_error_1d: coefficient count does not match the space");
    }
    const int p = space.degree();
    const SpanTable table(space, p + 4);
    double sum = 0.0;
    for (int e = 0; e < space.spans(); ++e) {
        const int first = table.first[static_cast<std::size_t>(e)];
        for (int q = 0; q < table.points; ++q) {
            double uh = 0.0;
            for (int a = 0; a <= p; ++a) {
                const int k = first + a - 1;
                if (k >= 0 && k < space.dim()) {
                    uh += coeffs[k] * table.N(e, q, a);
                }
            }
            const double d = exact(table.x[table.at(e, q)]) - uh;
            sum += table.weight[table.at(e, q)] * d * d;
        }
    }
    return std::sqrt(sum);
}

void write_matrix_market(std::ostream& os, const SparseMatrix& A) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (int r = 0; r < A.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(A, r); it; ++it) {
            os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
        }
    }
}

} // namespace igamg
