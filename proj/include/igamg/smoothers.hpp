#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "igamg/assembly.hpp"

namespace igamg {

enum class SmootherKind { gauss_seidel, schwarz, colored_schwarz };

/// "gs", "schwarz" or "colored-schwarz"; throws std::invalid_argument otherwise.
SmootherKind parse_smoother(const std::string& name);
std::string to_string(SmootherKind kind);

struct SmootherSpec {
    SmootherKind kind = SmootherKind::gauss_seidel;
    int block = 3; ///< odd block width per direction (Schwarz kinds only)
};

/// Lexicographic grid of unknowns: index i + nu * j, nv = 1 in 1D.
struct GridShape {
    int nu = 0;
    int nv = 1;
    int dimension = 1;

    [[nodiscard]] int size() const noexcept { return nu * nv; }
};

/// Block width used by the auto strategy: 3 for p = 2, 3; 5 for p = 4, 5;
/// 7 for p = 6, 7, 8.  Other degrees throw std::invalid_argument.
int block_size_for_degree(int degree);

/// One block per dof, centered at it and clipped to the grid.  Block k is
/// centered at dof k; each block lists its dofs in ascending order.
std::vector<std::vector<int>> build_blocks(const GridShape& shape, int width);

/// Three color classes of block centers: i mod 3 in 1D, (i + j) mod 3 in 2D.
/// Centers ascend within a class.
std::vector<std::vector<int>> color_classes(const GridShape& shape);

/// Concatenation of the color classes in color order.
std::vector<int> colored_order(const GridShape& shape);

/// One sweep of lexicographic Gauss-Seidel or multiplicative Schwarz.  The
/// operator is passed to every call; block factorizations are computed once
/// in the constructor from the same operator.
class Smoother {
public:
    Smoother(const SparseMatrix& A, const GridShape& shape, SmootherSpec spec);

    void sweep(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x) const;

    [[nodiscard]] const SmootherSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] const std::vector<int>& order() const noexcept { return order_; }
    [[nodiscard]] int block_count() const noexcept { return static_cast<int>(block_start_.size()) - 1; }
    [[nodiscard]] std::vector<int> block(int k) const;

private:
    void gauss_seidel(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x) const;
    void schwarz(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x) const;

    SmootherSpec spec_;
    std::vector<int> order_;
    // flattened blocks and packed lower Cholesky factors
    std::vector<int> block_start_;
    std::vector<int> dofs_;
    std::vector<std::size_t> factor_start_;
    std::vector<double> factors_;
};

} // namespace igamg
