#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "igamg/lfa.hpp"
#include "igamg/multigrid.hpp"
#include "igamg/problems.hpp"
#include "igamg/reproduce.hpp"

namespace py = pybind11;
using namespace igamg;

namespace {

int resolve_block(int block, int degree, SmootherKind kind) {
    if (kind == SmootherKind::gauss_seidel) {
        return 3;
    }
    return block > 0 ? block : block_size_for_degree(degree);
}

CycleType parse_cycle(const std::string& c) {
    if (c == "V") {
        return CycleType::V;
    }
    if (c == "W") {
        return CycleType::W;
    }
    throw std::invalid_argument("cycle must be 'V' or 'W'");
}

py::dict solve_problem(const std::string& problem, int degree, int spans, const std::string& smoother, int block,
                       const std::string& cycle, int nu1, int nu2, double tol, std::uint64_t seed,
                       int max_iterations) {
    const auto kind = parse_smoother(smoother);
    const int n = resolve_block(block, degree, kind);
    const CycleSpec spec{parse_cycle(cycle), nu1, nu2};
    SolveReport r;
    std::size_t levels = 0;
    {
        py::gil_scoped_release release;
        const auto prob = make_problem(parse_problem(problem), degree, spans);
        const Hierarchy h(prob.A, degree, spans, prob.dimension, {kind, n},
                          prob.geometry ? &*prob.geometry : nullptr);
        levels = h.levels().size();
        r = solve(h, prob.b, spec, {tol, max_iterations, seed});
    }
    py::dict out;
    out["iterations"] = r.iterations;
    out["converged"] = r.converged;
    out["residuals"] = r.residuals;
    out["rho"] = r.rho;
    out["levels"] = levels;
    out["block"] = n;
    out["seconds"] = r.seconds;
    return out;
}

py::dict run_lfa(int degree, const std::string& smoother, int n, const std::string& cycle, int nu1, int nu2,
                 int samples) {
    LfaConfig cfg;
    cfg.degree = degree;
    cfg.kind = parse_smoother(smoother);
    cfg.block = n;
    cfg.nu1 = nu1;
    cfg.nu2 = nu2;
    cfg.gamma = parse_cycle(cycle) == CycleType::W ? 2 : 1;
    cfg.samples = samples;
    const auto r = analyze(cfg);
    py::dict out;
    out["mu"] = r.mu;
    out["rho_2g"] = r.rho_2g;
    out["rho_3g"] = r.rho_3g;
    out["samples"] = r.samples;
    out["skipped"] = r.skipped;
    out["reliable"] = r.reliable;
    out["curve"] = r.curve;
    return out;
}

py::dict run_reproduce(int table, int max_grid, std::uint64_t seed) {
    ReproduceOptions opt;
    opt.max_grid = max_grid;
    opt.seed = seed;
    TableReport rep;
    {
        py::gil_scoped_release release;
        rep = reproduce_table(table, opt);
    }
    py::list cells;
    for (const auto& c : rep.cells) {
        py::dict d;
        d["row"] = c.row;
        d["column"] = c.column;
        d["reference"] = c.reference;
        d["computed"] = c.computed;
        d["tolerance"] = c.tolerance;
        d["pass"] = c.pass;
        d["note"] = c.note;
        cells.append(d);
    }
    py::dict out;
    out["table"] = rep.id;
    out["title"] = rep.title;
    out["cells"] = cells;
    out["pass"] = rep.pass();
    return out;
}

} // namespace

PYBIND11_MODULE(_igamg, m) {
    m.doc() = "Isogeometric multigrid core bindings";

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

    m.def(
        "open_uniform_knots", [](int p, int spans) { return KnotVector::open_uniform(p, spans).knots(); },
        py::arg("p"), py::arg("m"), "Open uniform knot vector with m spans.");

    m.def(
        "eval_basis",
        [](int p, int spans, double x, bool derivative) {
            const auto kv = KnotVector::open_uniform(p, spans);
            const auto w = derivative ? eval_basis_derivative(kv, x) : eval_basis(kv, x);
            return py::make_tuple(w.first, w.values);
        },
        py::arg("p"), py::arg("m"), py::arg("x"), py::arg("derivative") = false,
        "(first full index, p+1 basis values or derivatives) at x.");

    m.def(
        "stiffness_stencil", [](int p) { return stiffness_stencil(p).coeffs; }, py::arg("p"),
        "Interior stiffness stencil a_0..a_p (times h).");

    m.def(
        "prolongation_1d",
        [](int p, int coarse_spans) { return prolongation_1d(SplineSpace(p, coarse_spans), SplineSpace(p, 2 * coarse_spans)); },
        py::arg("p"), py::arg("m_coarse"), "Canonical prolongation as a scipy.sparse CSR matrix.");

    m.def(
        "make_problem",
        [](const std::string& problem, int p, int spans) {
            const auto prob = make_problem(parse_problem(problem), p, spans);
            return py::make_tuple(prob.A, prob.b);
        },
        py::arg("problem"), py::arg("p"), py::arg("m"),
        "Assembled (A, b) of poisson1d, poisson2d or annulus; A is scipy.sparse CSR.");

    m.def("solve", &solve_problem, py::arg("problem"), py::arg("p"), py::arg("m"),
          py::arg("smoother") = "colored-schwarz", py::arg("block") = 0, py::arg("cycle") = "V", py::arg("nu1") = 1,
          py::arg("nu2") = 0, py::arg("tol") = 1e-8, py::arg("seed") = 42, py::arg("max_iterations") = 200,
          "Multigrid solve from a seeded random initial guess; block=0 picks the block size from p.");

    m.def("lfa", &run_lfa, py::arg("p"), py::arg("smoother") = "gs", py::arg("n") = 3, py::arg("cycle") = "V",
          py::arg("nu1") = 1, py::arg("nu2") = 0, py::arg("samples") = 256,
          "Smoothing, two-grid and three-grid factors of the 1D method.");

    m.def(
        "schwarz_symbol",
        [](int p, int n, double theta) -> std::optional<cplx> {
            return schwarz_symbol(stiffness_stencil(p), n, theta);
        },
        py::arg("p"), py::arg("n"), py::arg("theta"), "Fourier symbol of one Schwarz sweep (None if singular).");

    m.def("reproduce", &run_reproduce, py::arg("table"), py::arg("max_grid") = 0, py::arg("seed") = 42,
          "Recompute a benchmark table and compare it with the reference values.");
}
