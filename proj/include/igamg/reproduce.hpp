#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace igamg {

/// One compared number of a benchmark table.
struct TableCell {
    std::string row;    ///< e.g. "p=4" or "m=2048" or "64x64"
    std::string column; ///< e.g. "mu", "rho_3g n=5", "p=6"
    double reference = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note; ///< optional diagnostic, e.g. "not converged"
};

struct TableReport {
    int id = 0;
    std::string title;
    std::vector<TableCell> cells;

    [[nodiscard]] int failures() const;
    [[nodiscard]] bool pass() const { return failures() == 0; }
};

struct ReproduceOptions {
    int max_grid = 0;        ///< 0: table default (8192 in 1D, 128 per direction in 2D)
    std::uint64_t seed = 42;
    int measured_spans = 1024; ///< mesh for the measured factors of tables 1 and 2
    int threads = 1;
};

/// Recomputes benchmark table `id` (1..5) and compares every cell against
/// the embedded reference values:
///   1  Gauss-Seidel LFA (mu, rho_2g, rho_3g V) +-0.02, measured V/W factors +-0.03
///   2  Schwarz n = 3, 5, 7 LFA (mu, rho_3g) +-0.01, measured V factor +-0.03
///   3  1D colored Schwarz V(1,0) iteration counts, m = 512..8192, +-1
///   4  2D unit square counts, 32^2..256^2, +-1
///   5  quarter annulus counts, 32^2..256^2, +-1
TableReport reproduce_table(int id, const ReproduceOptions& options = {});

/// Header "table,row,column,reference,computed,tolerance,pass,note".
void write_csv(std::ostream& os, const TableReport& report, bool header = true);
std::string to_json(const TableReport& report);

} // namespace igamg
