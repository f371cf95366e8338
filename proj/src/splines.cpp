#include "igamg/splines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace igamg {

namespace {

constexpr int kMaxDegree = 24;

} // namespace

KnotVector::KnotVector(int degree, std::vector<double> knots) : degree_(degree), knots_(std::move(knots)) {
    if (degree_ < 1 || degree_ > kMaxDegree) {
        throw std::invalid_argument("KnotVector: degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
    }
    const auto p = static_cast<std::size_t>(degree_);
    if (knots_.size() < 2 * p + 2) {
        throw std::invalid_argument("KnotVector: need at least 2p+2 knots");
    }
    if (!std::is_sorted(knots_.begin(), knots_.end())) {
        throw std::invalid_argument("KnotVector: knots must be non-decreasing");
    }
    if (!(knots_.front() < knots_.back())) {
        throw std::invalid_argument("KnotVector: empty parameter range");
    }
    for (std::size_t i = 1; i <= p; ++i) {
        if (knots_[i] != knots_.front() || knots_[knots_.size() - 1 - i] != knots_.back()) {
            throw std::invalid_argument("KnotVector: end knots must be repeated p+1 times (open knot vector)");
        }
    }
    if (knots_[p + 1] == knots_.front() || knots_[knots_.size() - p - 2] == knots_.back()) {
        throw std::invalid_argument("KnotVector: end knots repeated more than p+1 times");
    }
    // interior multiplicity <= p
    std::size_t run = 1;
    for (std::size_t i = p + 2; i + p + 1 < knots_.size(); ++i) {
        run = knots_[i] == knots_[i - 1] ? run + 1 : 1;
        if (run > p) {
            throw std::invalid_argument("KnotVector: interior knot multiplicity exceeds the degree");
        }
    }
}

KnotVector KnotVector::open_uniform(int degree, int spans) {
    if (degree < 1) {
        throw std::invalid_argument("open_uniform_knots: degree must be >= 1");
    }
    if (spans < 2) {
        throw std::invalid_argument("open_uniform_knots: need at least 2 spans");
    }
    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(2 * degree + spans + 1));
    knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), 0.0);
    for (int i = 1; i < spans; ++i) {
        knots.push_back(static_cast<double>(i) / spans);
    }
    knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), 1.0);
    return KnotVector(degree, std::move(knots));
}

int KnotVector::find_span(double x) const {
    if (!(x >= front() && x <= back())) {
        throw std::domain_error("KnotVector: evaluation point " + std::to_string(x) + " outside the parameter range");
    }
    const int n = num_basis();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    int mu = static_cast<int>(it - knots_.begin()) - 1;
    return std::clamp(mu, degree_, n - 1);
}

std::vector<double> KnotVector::breakpoints() const {
    std::vector<double> out;
    std::unique_copy(knots_.begin(), knots_.end(), std::back_inserter(out));
    return out;
}

std::vector<double> KnotVector::greville() const {
    const int n = num_basis();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 1; k <= degree_; ++k) {
            s += knots_[static_cast<std::size_t>(i + k)];
        }
        g[static_cast<std::size_t>(i)] = s / degree_;
    }
    return g;
}

int eval_basis_into(const KnotVector& kv, double x, std::span<double> values, std::span<double> derivs) {
    const int p = kv.degree();
    const auto& U = kv.knots();
    const int span = kv.find_span(x);

    // Triangular table: ndu[j][r] (r <= j) holds knot differences, ndu[r][j]
    // (r <= j) the basis values of degree j.
    std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1> ndu;
    std::array<double, kMaxDegree + 1> left;
    std::array<double, kMaxDegree + 1> right;
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - U[static_cast<std::size_t>(span + 1 - j)];
        right[j] = U[static_cast<std::size_t>(span + j)] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    for (int r = 0; r <= p; ++r) {
        values[static_cast<std::size_t>(r)] = ndu[r][p];
    }
    if (!derivs.empty()) {
        for (int r = 0; r <= p; ++r) {
            double d = 0.0;
            if (r >= 1) {
                d += ndu[r - 1][p - 1] / ndu[p][r - 1];
            }
            if (r <= p - 1) {
                d -= ndu[r][p - 1] / ndu[p][r];
            }
            derivs[static_cast<std::size_t>(r)] = p * d;
        }
    }
    return span - p;
}

BasisWindow eval_basis(const KnotVector& kv, double x) {
    BasisWindow w;
    w.values.resize(static_cast<std::size_t>(kv.degree() + 1));
    w.first = eval_basis_into(kv, x, w.values, {});
    return w;
}

BasisWindow eval_basis_derivative(const KnotVector& kv, double x) {
    BasisWindow w;
    std::vector<double> values(static_cast<std::size_t>(kv.degree() + 1));
    w.values.resize(values.size());
    w.first = eval_basis_into(kv, x, values, w.values);
    return w;
}

double eval_spline(const KnotVector& kv, std::span<const double> coeffs, double x) {
    if (static_cast<int>(coeffs.size()) != kv.num_basis()) {
        throw std::invalid_argument("eval_spline: coefficient count does not match the basis");
    }
    std::array<double, kMaxDegree + 1> values;
    const int first = eval_basis_into(kv, x, std::span(values.data(), static_cast<std::size_t>(kv.degree() + 1)), {});
    double s = 0.0;
    for (int r = 0; r <= kv.degree(); ++r) {
        s += coeffs[static_cast<std::size_t>(first + r)] * values[static_cast<std::size_t>(r)];
    }
    return s;
}

SplineSpace::SplineSpace(int degree, int spans) : knots_(KnotVector::open_uniform(degree, spans)), spans_(spans) {}

Eigen::SparseMatrix<double> knot_insertion_matrix(const KnotVector& coarse, const KnotVector& fine) {
    const int p = coarse.degree();
    if (fine.degree() != p) {
        throw std::invalid_argument("knot_insertion_matrix: degrees differ");
    }
    if (coarse.front() != fine.front() || coarse.back() != fine.back()) {
        throw std::invalid_argument("knot_insertion_matrix: parameter ranges differ");
    }
    const auto& tau = coarse.knots();
    const auto& t = fine.knots();
    // every coarse knot must appear in the fine vector with at least its multiplicity
    if (!std::includes(t.begin(), t.end(), tau.begin(), tau.end())) {
        throw std::invalid_argument("knot_insertion_matrix: fine knots do not refine the coarse knots");
    }
    const int nf = fine.num_basis();
    const int nc = coarse.num_basis();

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(nf * (p + 1)));
    std::array<double, kMaxDegree + 1> alpha;
    std::array<double, kMaxDegree + 1> next;
    for (int i = 0; i < nf; ++i) {
        const double ti = t[static_cast<std::size_t>(i)];
        int mu = static_cast<int>(std::upper_bound(tau.begin(), tau.end(), ti) - tau.begin()) - 1;
        mu = std::clamp(mu, p, nc - 1);
        // alpha^T = R_1(t_{i+1}) R_2(t_{i+2}) ... R_p(t_{i+p}); entry r belongs to
        // coarse index mu - k + r after step k.
        alpha[0] = 1.0;
        for (int k = 1; k <= p; ++k) {
            const double x = t[static_cast<std::size_t>(i + k)];
            std::fill(next.begin(), next.begin() + k + 1, 0.0);
            for (int r = 0; r < k; ++r) {
                const int j = mu - k + 1 + r;
                const double denom = tau[static_cast<std::size_t>(j + k)] - tau[static_cast<std::size_t>(j)];
                if (denom > 0.0) {
                    const double w = (x - tau[static_cast<std::size_t>(j)]) / denom;
                    next[r] += (1.0 - w) * alpha[r];
                    next[r + 1] += w * alpha[r];
                }
            }
            std::copy(next.begin(), next.begin() + k + 1, alpha.begin());
        }
        for (int r = 0; r <= p; ++r) {
            if (alpha[r] != 0.0) {
                entries.emplace_back(i, mu - p + r, alpha[r]);
            }
        }
    }
    Eigen::SparseMatrix<double> T(nf, nc);
    T.setFromTriplets(entries.begin(), entries.end());
    return T;
}

Eigen::MatrixXd embedding_matrix(const KnotVector& source, const KnotVector& target) {
    if (target.degree() < source.degree()) {
        throw std::invalid_argument("embedding_matrix: target degree lower than source degree");
    }
    if (source.front() != target.front() || source.back() != target.back()) {
        throw std::invalid_argument("embedding_matrix: parameter ranges differ");
    }
    const int nt = target.num_basis();
    const int ns = source.num_basis();
    const auto g = target.greville();
    Eigen::MatrixXd colloc = Eigen::MatrixXd::Zero(nt, nt);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nt, ns);
    for (int i = 0; i < nt; ++i) {
        const auto x = g[static_cast<std::size_t>(i)];
        const auto bt = eval_basis(target, x);
        for (std::size_t r = 0; r < bt.values.size(); ++r) {
            colloc(i, bt.first + static_cast<int>(r)) = bt.values[r];
        }
        const auto bs = eval_basis(source, x);
        for (std::size_t r = 0; r < bs.values.size(); ++r) {
            rhs(i, bs.first + static_cast<int>(r)) = bs.values[r];
        }
    }
    Eigen::MatrixXd E = colloc.partialPivLu().solve(rhs);
    // clean round-off so structurally zero coefficients stay zero
    E = E.unaryExpr([](double v) { return std::abs(v) < 1e-14 ? 0.0 : v; });

    // collocation silently returns garbage when the source space is not
    // contained in the target; check reproduction between the breakpoints
    const auto bp = target.breakpoints();
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        for (double s : {0.25, 0.5, 0.75}) {
            const double x = bp[k] + s * (bp[k + 1] - bp[k]);
            const auto bt = eval_basis(target, x);
            const auto bs = eval_basis(source, x);
            for (std::size_t c = 0; c < bs.values.size(); ++c) {
                double v = 0.0;
                for (std::size_t r = 0; r < bt.values.size(); ++r) {
                    v += E(bt.first + static_cast<int>(r), bs.first + static_cast<int>(c)) * bt.values[r];
                }
                if (std::abs(v - bs.values[c]) > 1e-10) {
                    throw std::invalid_argument("embedding_matrix: source space is not contained in the target space");
                }
            }
        }
    }
    return E;
}

} // namespace igamg
