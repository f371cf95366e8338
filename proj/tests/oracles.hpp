#pragma once

// Reference computations for the tests.  Everything here is written
// independently of the library code paths it is compared against: global
// Cox-de Boor recursion, truncated-power cardinal B-splines, Golub-Welsch
// quadrature and dense explicit Schwarz / Gauss-Seidel operators.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

/// N_{i,p}(x) by the textbook recursion over the full knot vector (0/0 = 0).
/// At the right end of the range the last non-empty span is taken as closed.
inline double cox_de_boor(const std::vector<double>& U, int i, int p, double x) {
    if (p == 0) {
        const double a = U[static_cast<std::size_t>(i)];
        const double b = U[static_cast<std::size_t>(i + 1)];
        if (a <= x && x < b) {
            return 1.0;
        }
        return x == U.back() && b == U.back() && a < b ? 1.0 : 0.0;
    }
    const auto u = [&](int k) { return U[static_cast<std::size_t>(k)]; };
    double left = 0.0, right = 0.0;
    if (u(i + p) != u(i)) {
        left = (x - u(i)) / (u(i + p) - u(i)) * cox_de_boor(U, i, p - 1, x);
    }
    if (u(i + p + 1) != u(i + 1)) {
        right = (u(i + p + 1) - x) / (u(i + p + 1) - u(i + 1)) * cox_de_boor(U, i + 1, p - 1, x);
    }
    return left + right;
}

inline double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) {
        r = r * (n - k + j) / j;
    }
    return r;
}

/// Cardinal B-spline of degree p on [0, p+1] via truncated powers.
inline double cardinal(int p, double x) {
    if (x <= 0.0 || x >= p + 1) {
        return 0.0;
    }
    double s = 0.0, fact = 1.0;
    for (int j = 2; j <= p; ++j) {
        fact *= j;
    }
    for (int k = 0; k <= p + 1; ++k) {
        const double t = x - k;
        if (t > 0.0) {
            s += (k % 2 == 0 ? 1.0 : -1.0) * binomial(p + 1, k) * std::pow(t, p);
        }
    }
    return s / fact;
}

inline double cardinal_derivative(int p, double x) {
    return cardinal(p - 1, x) - cardinal(p - 1, x - 1.0);
}

/// Gauss-Legendre nodes/weights on [0,1] from the Jacobi matrix eigenproblem.
struct Rule {
    std::vector<double> x, w;
};

inline Rule golub_welsch(int q) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(q, q);
    for (int k = 1; k < q; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    for (int k = 0; k < q; ++k) {
        r.x.push_back(0.5 * (es.eigenvalues()[k] + 1.0));
        const double v = es.eigenvectors()(0, k);
        r.w.push_back(v * v);
    }
    return r;
}

/// Integral over [a, b] split into unit pieces (the cardinal breakpoints).
inline double integrate(const std::function<double(double)>& f, int a, int b, int q = 20) {
    const Rule r = golub_welsch(q);
    double s = 0.0;
    for (int c = a; c < b; ++c) {
        for (std::size_t k = 0; k < r.x.size(); ++k) {
            s += r.w[k] * f(c + r.x[k]);
        }
    }
    return s;
}

/// a_j = int B'(x) B'(x - j) for the cardinal B-spline of degree p.
inline std::vector<double> stiffness_stencil(int p) {
    std::vector<double> a;
    for (int j = 0; j <= p; ++j) {
        a.push_back(integrate([&](double x) { return cardinal_derivative(p, x) * cardinal_derivative(p, x - j); },
                              0, p + 1));
    }
    return a;
}

inline std::vector<double> mass_stencil(int p) {
    std::vector<double> a;
    for (int j = 0; j <= p; ++j) {
        a.push_back(integrate([&](double x) { return cardinal(p, x) * cardinal(p, x - j); }, 0, p + 1));
    }
    return a;
}

/// Error propagation of one multiplicative block sweep, prod (I - V_B^T A_B^{-1} V_B A),
/// blocks applied in the given order.
inline Eigen::MatrixXd schwarz_product(const Eigen::MatrixXd& A, const std::vector<std::vector<int>>& blocks,
                                       const std::vector<int>& order) {
    const auto n = A.rows();
    Eigen::MatrixXd E = Eigen::MatrixXd::Identity(n, n);
    for (int b : order) {
        const auto& B = blocks[static_cast<std::size_t>(b)];
        const auto m = static_cast<Eigen::Index>(B.size());
        Eigen::MatrixXd V = Eigen::MatrixXd::Zero(m, n);
        for (Eigen::Index r = 0; r < m; ++r) {
            V(r, B[static_cast<std::size_t>(r)]) = 1.0;
        }
        const Eigen::MatrixXd AB = V * A * V.transpose();
        const Eigen::MatrixXd step = Eigen::MatrixXd::Identity(n, n) - V.transpose() * AB.inverse() * V * A;
        E = step * E;
    }
    return E;
}

/// Forward Gauss-Seidel error propagation -(D+L)^{-1} U.
inline Eigen::MatrixXd gauss_seidel_operator(const Eigen::MatrixXd& A) {
    const Eigen::MatrixXd DL = A.triangularView<Eigen::Lower>();
    const Eigen::MatrixXd U = A.triangularView<Eigen::StrictlyUpper>();
    return -DL.partialPivLu().solve(U);
}

/// Amplification of exp(i theta x) by one ascending Schwarz sweep with
/// blocks of width n, measured in the middle of an open grid of N points
/// carrying the Toeplitz stencil a_0..a_p.
inline std::complex<double> open_grid_amplification(const std::vector<double>& a, int n, double theta,
                                                    int N = 400) {
    const int p = static_cast<int>(a.size()) - 1;
    const int k = (n - 1) / 2;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = -p; j <= p; ++j) {
            if (i + j >= 0 && i + j < N) {
                A(i, i + j) = a[static_cast<std::size_t>(std::abs(j))];
            }
        }
    }
    Eigen::VectorXcd e(N);
    for (int x = 0; x < N; ++x) {
        e[x] = std::polar(1.0, theta * x);
    }
    const Eigen::VectorXcd e0 = e;
    for (int c = 0; c < N; ++c) {
        const int lo = std::max(0, c - k);
        const int hi = std::min(N - 1, c + k);
        const int m = hi - lo + 1;
        const Eigen::VectorXcd r = -(A.middleRows(lo, m) * e);
        const Eigen::VectorXcd d = A.block(lo, lo, m, m).partialPivLu().solve(r);
        e.segment(lo, m) += d;
    }
    const int mid = N / 2;
    return e[mid] / e0[mid];
}

/// Rayleigh ratio v^H E v / v^H v of exp(i theta x) for one ascending Schwarz
/// sweep on a periodic grid of N points, blocks wrapping around the ends.
inline std::complex<double> periodic_rayleigh(const std::vector<double>& a, int n, double theta, int N = 64) {
    const int p = static_cast<int>(a.size()) - 1;
    const int k = (n - 1) / 2;
    const auto wrap = [N](int i) { return ((i % N) + N) % N; };
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = -p; j <= p; ++j) {
            A(i, wrap(i + j)) += a[static_cast<std::size_t>(std::abs(j))];
        }
    }
    Eigen::VectorXcd v(N);
    for (int x = 0; x < N; ++x) {
        v[x] = std::polar(1.0, theta * x);
    }
    Eigen::VectorXcd e = v;
    for (int c = 0; c < N; ++c) {
        std::vector<int> B;
        for (int s = -k; s <= k; ++s) {
            B.push_back(wrap(c + s));
        }
        const int m = static_cast<int>(B.size());
        Eigen::MatrixXcd AB(m, m);
        Eigen::VectorXcd r(m);
        for (int i = 0; i < m; ++i) {
            r[i] = -(A.row(B[static_cast<std::size_t>(i)]) * e)(0);
            for (int j = 0; j < m; ++j) {
                AB(i, j) = A(B[static_cast<std::size_t>(i)], B[static_cast<std::size_t>(j)]);
            }
        }
        const Eigen::VectorXcd d = AB.partialPivLu().solve(r);
        for (int i = 0; i < m; ++i) {
            e[B[static_cast<std::size_t>(i)]] += d[i];
        }
    }
    return v.dot(e) / v.dot(v);
}

inline std::vector<double> random_points(int count, double lo, double hi, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& v : out) {
        v = dist(gen);
    }
    return out;
}

} // namespace oracle
