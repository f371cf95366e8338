// igamg: isogeometric multigrid driver.
//
//   igamg solve --problem poisson2d --p 4 --grid 64 --smoother colored-schwarz
//   igamg lfa --p 3 --smoother schwarz --n 3
//   igamg reproduce --table 3 --max-grid 2048
//
// Exit codes: 0 success, 2 usage error, 3 solver did not converge,
// 4 reproduced table differs from the reference, 1 anything else.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "igamg/lfa.hpp"
#include "igamg/multigrid.hpp"
#include "igamg/parallel.hpp"
#include "igamg/problems.hpp"
#include "igamg/reproduce.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitMismatch = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOutput {
    std::string out;
    std::string json;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << text;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

int parse_block(const std::string& block, int degree, igamg::SmootherKind kind) {
    if (kind == igamg::SmootherKind::gauss_seidel) {
        return 3;
    }
    if (block == "auto") {
        try {
            return igamg::block_size_for_degree(degree);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return std::stoi(block);
}

igamg::CycleType parse_cycle(const std::string& c) {
    if (c == "V") {
        return igamg::CycleType::V;
    }
    if (c == "W") {
        return igamg::CycleType::W;
    }
    throw UsageError("--cycle must be V or W");
}

struct SolveArgs {
    std::string problem = "poisson1d";
    int degree = 2;
    int spans = 0;
    std::string smoother = "colored-schwarz";
    std::string block = "auto";
    std::string cycle = "V";
    int nu1 = 1;
    int nu2 = 0;
    double tol = 1e-8;
    std::uint64_t seed = 42;
    int max_iterations = 200;
    bool timing = false;
    std::string matrix_market;
    CommonOutput output;
};

int run_solve(const SolveArgs& a) {
    const auto kind = igamg::parse_problem(a.problem);
    const auto smoother = igamg::parse_smoother(a.smoother);
    if (!(a.tol > 0.0 && a.tol < 1.0)) {
        throw UsageError("--tol must lie in (0, 1)");
    }
    if (a.spans < 2) {
        throw UsageError("--m/--grid must be given and at least 2");
    }
    if (a.nu1 < 0 || a.nu2 < 0 || a.nu1 + a.nu2 < 1) {
        throw UsageError("need --nu1, --nu2 >= 0 with nu1 + nu2 >= 1");
    }
    const int block = parse_block(a.block, a.degree, smoother);
    const igamg::CycleSpec cycle{parse_cycle(a.cycle), a.nu1, a.nu2};

    const auto prob = igamg::make_problem(kind, a.degree, a.spans, igamg::worker_threads());
    if (!a.matrix_market.empty()) {
        std::ofstream f(a.matrix_market);
        igamg::write_matrix_market(f, prob.A);
    }
    const igamg::Hierarchy h(prob.A, a.degree, a.spans, prob.dimension, {smoother, block},
                             prob.geometry ? &*prob.geometry : nullptr);
    igamg::SolveOptions so;
    so.tol = a.tol;
    so.seed = a.seed;
    so.max_iterations = a.max_iterations;
    const auto r = igamg::solve(h, prob.b, cycle, so);
    const double reduction = r.residuals.back() / r.residuals.front();

    std::ostringstream csv;
    csv << "problem,p,m,dofs,levels,smoother,block,cycle,nu1,nu2,tol,seed,iterations,converged,rho_h,reduction";
    csv << (a.timing ? ",seconds\n" : "\n");
    csv << a.problem << ',' << a.degree << ',' << a.spans << ',' << prob.A.rows() << ',' << h.levels().size() << ','
        << a.smoother << ',' << block << ',' << a.cycle << ',' << a.nu1 << ',' << a.nu2 << ',' << fmt(a.tol) << ','
        << a.seed << ',' << r.iterations << ',' << (r.converged ? "true" : "false") << ',' << fmt(r.rho) << ','
        << fmt(reduction);
    if (a.timing) {
        csv << ',' << fmt(r.seconds);
    }
    csv << '\n';
    emit(csv.str(), a.output.out);

    if (!a.output.json.empty()) {
        nlohmann::json j{{"problem", a.problem},   {"p", a.degree},
                         {"m", a.spans},           {"dofs", prob.A.rows()},
                         {"levels", h.levels().size()}, {"smoother", a.smoother},
                         {"block", block},         {"cycle", a.cycle},
                         {"nu1", a.nu1},           {"nu2", a.nu2},
                         {"tol", a.tol},           {"seed", a.seed},
                         {"iterations", r.iterations}, {"converged", r.converged},
                         {"rho_h", r.rho},         {"residuals", r.residuals},
                         {"seconds", r.seconds}};
        emit(j.dump(2) + "\n", a.output.json);
    }
    if (!r.converged) {
        std::cerr << "igamg: no convergence after " << r.iterations << " iterations (residual reduction "
                  << fmt(reduction) << ")\n";
        return kExitDiverged;
    }
    return 0;
}

struct LfaArgs {
    int degree = 2;
    std::string smoother = "gs";
    int block = 3;
    std::string cycle = "V";
    int nu1 = 1;
    int nu2 = 0;
    int samples = 256;
    std::string curve;
    CommonOutput output;
};

int run_lfa(const LfaArgs& a) {
    if (a.degree < 1 || a.degree > 8) {
        throw UsageError("--p must lie in [1, 8]");
    }
    igamg::LfaConfig cfg;
    cfg.degree = a.degree;
    cfg.kind = igamg::parse_smoother(a.smoother);
    if (cfg.kind == igamg::SmootherKind::colored_schwarz) {
        throw UsageError("Fourier analysis is available for gs and schwarz only");
    }
    if (cfg.kind == igamg::SmootherKind::schwarz && (a.block < 3 || a.block % 2 == 0)) {
        throw UsageError("--n must be odd and >= 3");
    }
    cfg.block = a.block;
    cfg.nu1 = a.nu1;
    cfg.nu2 = a.nu2;
    cfg.gamma = parse_cycle(a.cycle) == igamg::CycleType::W ? 2 : 1;
    cfg.samples = a.samples;
    const auto r = igamg::analyze(cfg);
    const int n = cfg.kind == igamg::SmootherKind::schwarz ? cfg.block : 1;

    std::ostringstream csv;
    csv << "p,smoother,n,cycle,nu1,nu2,mu,rho_2g,rho_3g,samples,skipped,reliable\n";
    csv << a.degree << ',' << a.smoother << ',' << n << ',' << a.cycle << ',' << a.nu1 << ',' << a.nu2 << ','
        << fmt(r.mu) << ',' << fmt(r.rho_2g) << ',' << fmt(r.rho_3g) << ',' << r.samples << ',' << r.skipped << ','
        << (r.reliable ? "true" : "false") << '\n';
    emit(csv.str(), a.output.out);

    if (!a.curve.empty()) {
        std::ostringstream c;
        c << "theta,abs_symbol\n" << std::setprecision(10);
        for (const auto& [theta, value] : r.curve) {
            c << theta << ',' << value << '\n';
        }
        emit(c.str(), a.curve);
    }
    if (!a.output.json.empty()) {
        nlohmann::json j{{"p", a.degree},       {"smoother", a.smoother}, {"n", n},
                         {"cycle", a.cycle},    {"nu1", a.nu1},           {"nu2", a.nu2},
                         {"mu", r.mu},          {"rho_2g", r.rho_2g},     {"rho_3g", r.rho_3g},
                         {"samples", r.samples}, {"skipped", r.skipped},  {"reliable", r.reliable}};
        emit(j.dump(2) + "\n", a.output.json);
    }
    if (!r.reliable) {
        std::cerr << "igamg: " << r.skipped << " of " << r.samples << " frequency samples were singular\n";
    }
    return 0;
}

struct ReproduceArgs {
    int table = 1;
    int max_grid = 0;
    std::uint64_t seed = 42;
    CommonOutput output;
};

int run_reproduce(const ReproduceArgs& a) {
    if (a.table < 1 || a.table > 5) {
        throw UsageError("--table must be 1..5");
    }
    igamg::ReproduceOptions opt;
    opt.max_grid = a.max_grid;
    opt.seed = a.seed;
    opt.threads = igamg::worker_threads();
    const auto rep = igamg::reproduce_table(a.table, opt);
    std::ostringstream csv;
    igamg::write_csv(csv, rep);
    emit(csv.str(), a.output.out);
    if (!a.output.json.empty()) {
        emit(igamg::to_json(rep) + "\n", a.output.json);
    }
    const int failed = rep.failures();
    std::cerr << "table " << a.table << ": " << rep.cells.size() - static_cast<std::size_t>(failed) << "/"
              << rep.cells.size() << " cells within tolerance\n";
    return failed == 0 ? 0 : kExitMismatch;
}

void add_output(CLI::App* cmd, CommonOutput& o) {
    cmd->add_option("--out", o.out, "CSV destination (default stdout)");
    cmd->add_option("--json", o.json, "also write a JSON report to this path ('-' for stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isogeometric multigrid with overlapping Schwarz smoothers"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "assemble a benchmark problem and solve it with multigrid");
    solve->add_option("--problem", sa.problem, "poisson1d, poisson2d or annulus")
        ->check(CLI::IsMember({"poisson1d", "poisson2d", "annulus"}));
    solve->add_option("--p", sa.degree, "spline degree")->check(CLI::Range(1, 24));
    auto* m_opt = solve->add_option("--m", sa.spans, "knot spans (1D)");
    solve->add_option("--grid", sa.spans, "knot spans per direction (2D)")->excludes(m_opt);
    solve->add_option("--smoother", sa.smoother, "gs, schwarz or colored-schwarz")
        ->check(CLI::IsMember({"gs", "schwarz", "colored-schwarz"}));
    solve->add_option("--block", sa.block, "auto, 3, 5 or 7")->check(CLI::IsMember({"auto", "3", "5", "7"}));
    solve->add_option("--cycle", sa.cycle, "V or W")->check(CLI::IsMember({"V", "W"}));
    solve->add_option("--nu1", sa.nu1, "pre-smoothing steps");
    solve->add_option("--nu2", sa.nu2, "post-smoothing steps");
    solve->add_option("--tol", sa.tol, "relative residual reduction");
    solve->add_option("--seed", sa.seed, "seed of the random initial guess");
    solve->add_option("--max-iterations", sa.max_iterations, "cycle cap")->check(CLI::PositiveNumber);
    solve->add_flag("--timing", sa.timing, "append wall time to the CSV row");
    solve->add_option("--matrix-market", sa.matrix_market, "export the stiffness matrix");
    add_output(solve, sa.output);

    LfaArgs la;
    auto* lfa = app.add_subcommand("lfa", "local Fourier analysis of the 1D two- and three-grid method");
    lfa->add_option("--p", la.degree, "spline degree")->required();
    lfa->add_option("--smoother", la.smoother, "gs or schwarz")->check(CLI::IsMember({"gs", "schwarz"}));
    lfa->add_option("--n,--block", la.block, "Schwarz block size");
    lfa->add_option("--cycle", la.cycle, "V or W (three-grid analysis)")->check(CLI::IsMember({"V", "W"}));
    lfa->add_option("--nu1", la.nu1, "pre-smoothing steps");
    lfa->add_option("--nu2", la.nu2, "post-smoothing steps");
    lfa->add_option("--samples", la.samples, "frequency samples per interval")->check(CLI::Range(64, 1 << 20));
    lfa->add_option("--curve", la.curve, "write (theta, |S(theta)|) CSV of the smoother symbol");
    add_output(lfa, la.output);

    ReproduceArgs ra;
    auto* repro = app.add_subcommand("reproduce", "recompute a benchmark table and diff it against the reference");
    repro->add_option("--table", ra.table, "table id 1..5")->required();
    repro->add_option("--max-grid", ra.max_grid, "skip meshes with more spans per direction");
    repro->add_option("--seed", ra.seed, "seed of the random initial guesses");
    add_output(repro, ra.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*solve) {
            return run_solve(sa);
        }
        if (*lfa) {
            return run_lfa(la);
        }
        return run_reproduce(ra);
    } catch (const UsageError& e) {
        std::cerr << "igamg: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "igamg: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "igamg: " << e.what() << '\n';
        return 1;
    }
}
