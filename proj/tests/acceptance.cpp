// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance            all criteria
//   acceptance 3 6        selected criteria only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "igamg/lfa.hpp"
#include "igamg/multigrid.hpp"
#include "igamg/parallel.hpp"
#include "igamg/problems.hpp"
#include "igamg/reproduce.hpp"
#include "oracles.hpp"

using namespace igamg;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v, int digits = 3) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

Outcome table_outcome(int id) {
    ReproduceOptions opt;
    opt.threads = worker_threads();
    const auto rep = reproduce_table(id, opt);
    Outcome o;
    o.pass = rep.pass();
    o.detail = std::to_string(rep.cells.size() - static_cast<std::size_t>(rep.failures())) + "/" +
               std::to_string(rep.cells.size()) + " cells within tolerance";
    for (const auto& c : rep.cells) {
        if (!c.pass) {
            o.detail += "; " + c.row + " " + c.column + " ref " + num(c.reference) + " got " + num(c.computed);
            if (!c.note.empty()) {
                o.detail += " (" + c.note + ")";
            }
        }
    }
    return o;
}

// Each property returns ok + short diagnostic.
struct Property {
    std::string name;
    std::function<Outcome()> check;
};

Outcome prop_symbol_vs_sweep() {
    // literal periodic-grid Rayleigh ratio and the open-grid steady state
    double periodic = 0.0, open = 0.0;
    for (int p = 1; p <= 4; ++p) {
        const auto a = stiffness_stencil(p);
        for (int n : {3, 5}) {
            for (int k = 1; k < 64; ++k) {
                const double t = 2 * pi * k / 64;
                const double th = t > pi ? t - 2 * pi : t;
                const auto s = schwarz_symbol(a, n, th);
                if (!s) {
                    continue;
                }
                periodic = std::max(periodic, std::abs(*s - oracle::periodic_rayleigh(a.coeffs, n, th, 64)));
                if (k % 4 == 1) {
                    open = std::max(open, std::abs(*s - oracle::open_grid_amplification(a.coeffs, n, th)));
                }
            }
        }
    }
    return {periodic <= 1e-8 && open <= 1e-8,
            "periodic N=64 max dev " + num(periodic, 2) + ", open-grid max dev " + num(open, 2)};
}

Outcome prop_galerkin() {
    double worst = 0.0;
    const auto rel = [](const SparseMatrix& A, const SparseMatrix& B) {
        const Eigen::MatrixXd d = Eigen::MatrixXd(A) - Eigen::MatrixXd(B);
        return d.cwiseAbs().maxCoeff() / Eigen::MatrixXd(B).cwiseAbs().maxCoeff();
    };
    for (int p = 2; p <= 8; ++p) {
        const Hierarchy h(assemble_stiffness_1d(SplineSpace(p, 64)), p, 64, 1, {});
        for (const auto& L : h.levels()) {
            worst = std::max(worst, rel(L.A, assemble_stiffness_1d(SplineSpace(p, L.spans))));
        }
        for (auto kind : {ProblemKind::poisson2d, ProblemKind::annulus}) {
            const auto prob = make_problem(kind, p, 16);
            const GeometryMap* geo = prob.geometry ? &*prob.geometry : nullptr;
            const Hierarchy h2(prob.A, p, 16, 2, {}, geo);
            for (const auto& L : h2.levels()) {
                const SplineSpace s(p, L.spans);
                worst = std::max(worst, rel(L.A, assemble_stiffness_2d(s, s, geo)));
            }
        }
    }
    return {worst <= 1e-10, "max rel dev " + num(worst, 2)};
}

Outcome prop_partition_and_stencil() {
    double pu = 0.0, zs = 0.0;
    for (int p = 1; p <= 8; ++p) {
        const auto kv = KnotVector::open_uniform(p, 13);
        for (double x : oracle::random_points(200, 0.0, 1.0, 900u + static_cast<unsigned>(p))) {
            double s = 0.0;
            for (double v : eval_basis(kv, x).values) {
                s += v;
            }
            pu = std::max(pu, std::abs(s - 1.0));
        }
        const auto a = stiffness_stencil(p);
        double sum = a(0);
        for (int j = 1; j <= p; ++j) {
            sum += 2 * a(j);
        }
        zs = std::max(zs, std::abs(sum));
    }
    return {pu <= 1e-12 && zs <= 1e-12, "partition dev " + num(pu, 2) + ", stencil sum " + num(zs, 2)};
}

Eigen::MatrixXd sweep_operator(const Smoother& s, const SparseMatrix& A) {
    const auto n = A.rows();
    Eigen::MatrixXd E(n, n);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::VectorXd x = Eigen::VectorXd::Unit(n, k);
        s.sweep(A, zero, x);
        E.col(k) = x;
    }
    return E;
}

Outcome prop_explicit_product() {
    double worst = 0.0;
    const auto check = [&](const SparseMatrix& A, GridShape shape, SmootherSpec spec) {
        const Smoother s(A, shape, spec);
        std::vector<std::vector<int>> blocks;
        for (int k = 0; k < s.block_count(); ++k) {
            blocks.push_back(s.block(k));
        }
        const Eigen::MatrixXd ref = oracle::schwarz_product(Eigen::MatrixXd(A), blocks, s.order());
        worst = std::max(worst, (sweep_operator(s, A) - ref).cwiseAbs().maxCoeff());
    };
    for (int p = 2; p <= 8; ++p) {
        const SparseMatrix A = assemble_stiffness_1d(SplineSpace(p, 128));
        for (auto kind : {SmootherKind::schwarz, SmootherKind::colored_schwarz}) {
            check(A, {static_cast<int>(A.rows()), 1, 1}, {kind, block_size_for_degree(p)});
        }
    }
    const auto prob = make_problem(ProblemKind::annulus, 3, 10);
    for (auto kind : {SmootherKind::schwarz, SmootherKind::colored_schwarz}) {
        check(prob.A, {11, 11, 2}, {kind, 3});
    }
    return {worst <= 1e-12, "max entry dev " + num(worst, 2)};
}

Outcome prop_perfect_smoother() {
    double worst = 0.0;
    int singular = 0;
    for (int p = 1; p <= 8; ++p) {
        const auto a = stiffness_stencil(p);
        for (int n = 2 * p + 1; n <= 2 * p + 5; n += 2) {
            for (int k = 0; k < 256; ++k) {
                const auto s = schwarz_symbol(a, n, -pi + (k + 0.5) * 2 * pi / 256);
                if (s) {
                    worst = std::max(worst, std::abs(*s));
                } else {
                    ++singular;
                }
            }
        }
    }
    return {singular == 0 && worst == 0.0, "max |S| " + num(worst, 2) + ", singular samples " + std::to_string(singular)};
}

Outcome prop_fixed_point() {
    double worst = 0.0;
    const auto check = [&](const DiscreteProblem& prob) {
        const Eigen::VectorXd x = random_vector(prob.A.rows(), 5);
        const Eigen::VectorXd b = prob.A * x;
        const GeometryMap* geo = prob.geometry ? &*prob.geometry : nullptr;
        for (auto kind : {SmootherKind::gauss_seidel, SmootherKind::schwarz, SmootherKind::colored_schwarz}) {
            const Hierarchy h(prob.A, prob.degree, prob.spans, prob.dimension, {kind, block_size_for_degree(prob.degree)},
                              geo);
            for (std::size_t l = 0; l + 1 < h.levels().size(); ++l) {
                const auto& L = h.levels()[l];
                const Eigen::VectorXd xl = random_vector(L.A.rows(), 6);
                const Eigen::VectorXd bl = L.A * xl;
                Eigen::VectorXd y = xl;
                L.smoother->sweep(L.A, bl, y);
                worst = std::max(worst, (y - xl).cwiseAbs().maxCoeff());
            }
            for (auto type : {CycleType::V, CycleType::W}) {
                Eigen::VectorXd y = x;
                h.cycle(y, b, {type, 1, 1});
                worst = std::max(worst, (y - x).cwiseAbs().maxCoeff());
            }
        }
    };
    for (int p = 2; p <= 8; ++p) {
        check(make_problem(ProblemKind::poisson1d, p, 128));
    }
    check(make_problem(ProblemKind::poisson2d, 4, 16));
    check(make_problem(ProblemKind::annulus, 3, 16));
    return {worst <= 1e-12, "max dev " + num(worst, 2)};
}

Outcome prop_l2_order() {
    const auto f = [](double x) { return pi * pi * std::sin(pi * x); };
    const auto u = [](double x) { return std::sin(pi * x); };
    bool ok = true;
    std::string detail;
    for (int p : {2, 3}) {
        std::vector<double> err;
        for (int m : {8, 16, 32}) {
            const SplineSpace s(p, m);
            const Eigen::MatrixXd A(assemble_stiffness_1d(s));
            err.push_back(l2_error_1d(s, A.llt().solve(assemble_rhs_1d(s, f)), u));
        }
        const double rate = std::log2(err[1] / err[2]);
        ok = ok && std::abs(rate - (p + 1)) <= 0.3;
        detail += (detail.empty() ? "" : ", ") + std::string("p=") + std::to_string(p) + " rate " + num(rate);
    }
    return {ok, detail};
}

Outcome criterion6() {
    const std::vector<Property> props{
        {"a", prop_symbol_vs_sweep},       {"b", prop_galerkin},      {"c", prop_partition_and_stencil},
        {"d", prop_explicit_product},      {"e", prop_perfect_smoother}, {"f", prop_fixed_point},
        {"g", prop_l2_order},
    };
    Outcome all{true, ""};
    for (const auto& p : props) {
        Outcome o;
        try {
            o = p.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all.pass = all.pass && o.pass;
        all.detail += (all.detail.empty() ? "" : " | ") + p.name + (o.pass ? " ok: " : " FAIL: ") + o.detail;
    }
    return all;
}

Outcome criterion7() {
    bool ok = true;
    std::string detail;
    for (int p = 4; p <= 8; ++p) {
        const auto prob = make_problem(ProblemKind::poisson2d, p, 32);
        const Hierarchy h(prob.A, p, 32, 2, {SmootherKind::gauss_seidel, 3});
        const auto f = measured_asymptotic_factor(h, {CycleType::V, 1, 0});
        ok = ok && f.rho >= 0.9;
        detail += (detail.empty() ? "" : ", ") + std::string("p=") + std::to_string(p) + " rho_h " + num(f.rho);
    }
    return {ok, detail};
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, [] { return table_outcome(1); }}, {2, [] { return table_outcome(2); }},
        {3, [] { return table_outcome(3); }}, {4, [] { return table_outcome(4); }},
        {5, [] { return table_outcome(5); }}, {6, criterion6},
        {7, criterion7},
    };
    int failed = 0;
    for (const auto& [id, run] : criteria) {
        if (!selected.empty() && !selected.contains(id)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << " ["
                  << num(secs, 3) << " s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
