#include "igamg/smoothers.hpp"

#include <algorithm>
#include <stdexcept>

namespace igamg {

SmootherKind parse_smoother(const std::string& name) {
    if (name == "gs") {
        return SmootherKind::gauss_seidel;
    }
    if (name == "schwarz") {
        return SmootherKind::schwarz;
    }
    if (name == "colored-schwarz") {
        return SmootherKind::colored_schwarz;
    }
    throw std::invalid_argument("unknown smoother '" + name + "' (expected gs, schwarz or colored-schwarz)");
}

std::string to_string(SmootherKind kind) {
    switch (kind) {
    case SmootherKind::gauss_seidel:
        return "gs";
    case SmootherKind::schwarz:
        return "schwarz";
    case SmootherKind::colored_schwarz:
        return "colored-schwarz";
    }
    return "?";
}

int block_size_for_degree(int degree) {
    if (degree == 2 || degree == 3) {
        return 3;
    }
    if (degree == 4 || degree == 5) {
        return 5;
    }
    if (degree >= 6 && degree <= 8) {
        return 7;
    }
    throw std::invalid_argument("block_size_for_degree: no default block size for p = " + std::to_string(degree) +
                                "; pass the block size explicitly");
}

std::vector<std::vector<int>> build_blocks(const GridShape& shape, int width) {
    if (width < 3 || width % 2 == 0) {
        throw std::invalid_argument("build_blocks: block width must be odd and >= 3");
    }
    const int k = (width - 1) / 2;
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.size()));
    for (int j = 0; j < shape.nv; ++j) {
        const int j0 = shape.dimension == 2 ? std::max(0, j - k) : j;
        const int j1 = shape.dimension == 2 ? std::min(shape.nv - 1, j + k) : j;
        for (int i = 0; i < shape.nu; ++i) {
            std::vector<int> block;
            for (int l = j0; l <= j1; ++l) {
                for (int c = std::max(0, i - k); c <= std::min(shape.nu - 1, i + k); ++c) {
                    block.push_back(c + shape.nu * l);
                }
            }
            blocks.push_back(std::move(block));
        }
    }
    return blocks;
}

std::vector<std::vector<int>> color_classes(const GridShape& shape) {
    std::vector<std::vector<int>> classes(3);
    for (int j = 0; j < shape.nv; ++j) {
        for (int i = 0; i < shape.nu; ++i) {
            const int color = shape.dimension == 2 ? (i + j) % 3 : i % 3;
            classes[static_cast<std::size_t>(color)].push_back(i + shape.nu * j);
        }
    }
    return classes;
}

std::vector<int> colored_order(const GridShape& shape) {
    std::vector<int> order;
    for (const auto& c : color_classes(shape)) {
        order.insert(order.end(), c.begin(), c.end());
    }
    return order;
}

Smoother::Smoother(const SparseMatrix& A, const GridShape& shape, SmootherSpec spec) : spec_(spec) {
    if (A.rows() != shape.size() || A.cols() != shape.size()) {
        throw std::invalid_argument("Smoother: operator does not match the grid shape");
    }
    if (spec_.kind == SmootherKind::gauss_seidel) {
        return;
    }
    const auto blocks = build_blocks(shape, spec_.block);
    if (spec_.kind == SmootherKind::colored_schwarz) {
        order_ = colored_order(shape);
    } else {
        order_.resize(blocks.size());
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            order_[k] = static_cast<int>(k);
        }
    }
    block_start_.push_back(0);
    factor_start_.push_back(0);
    for (const auto& block : blocks) {
        const auto n = static_cast<Eigen::Index>(block.size());
        Eigen::MatrixXd local(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                local(r, c) = A.coeff(block[static_cast<std::size_t>(r)], block[static_cast<std::size_t>(c)]);
            }
        }
        const Eigen::LLT<Eigen::MatrixXd> llt(local);
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("Smoother: block matrix is not positive definite");
        }
        const Eigen::MatrixXd L = llt.matrixL();
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c <= r; ++c) {
                factors_.push_back(L(r, c));
            }
        }
        dofs_.insert(dofs_.end(), block.begin(), block.end());
        block_start_.push_back(static_cast<int>(dofs_.size()));
        factor_start_.push_back(factors_.size());
    }
}

std::vector<int> Smoother::block(int k) const {
    const auto b = static_cast<std::size_t>(k);
    return {dofs_.begin() + block_start_[b], dofs_.begin() + block_start_[b + 1]};
}

void Smoother::sweep(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x) const {
    if (spec_.kind == SmootherKind::gauss_seidel) {
        gauss_seidel(A, b, x);
    } else {
        schwarz(A, b, x);
    }
}

void Smoother::gauss_seidel(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x) const {
    const int* outer = A.outerIndexPtr();
    const int* inner = A.innerIndexPtr();
    const double* value = A.valuePtr();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        double s = b[i];
        double diag = 0.0;
        for (int k = outer[i]; k < outer[i + 1]; ++k) {
            if (inner[k] == i) {
                diag = value[k];
            } else {
                s -= value[k] * x[inner[k]];
            }
        }
        if (diag == 0.0) {
            throw std::runtime_error("gauss_seidel: zero diagonal entry");
        }
        x[i] = s / diag;
    }
}

void Smoother::schwarz(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x) const {
    const int* outer = A.outerIndexPtr();
    const int* inner = A.innerIndexPtr();
    const double* value = A.valuePtr();
    std::vector<double> r;
    for (int blk : order_) {
        const auto bk = static_cast<std::size_t>(blk);
        const int* dofs = dofs_.data() + block_start_[bk];
        const int n = block_start_[bk + 1] - block_start_[bk];
        const double* L = factors_.data() + factor_start_[bk];
        r.resize(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            const int row = dofs[a];
            double s = b[row];
            for (int k = outer[row]; k < outer[row + 1]; ++k) {
                s -= value[k] * x[inner[k]];
            }
            r[static_cast<std::size_t>(a)] = s;
        }
        // L y = r, then L^T d = y, in place; row a of L starts at a(a+1)/2
        for (int a = 0; a < n; ++a) {
            const double* La = L + a * (a + 1) / 2;
            double s = r[static_cast<std::size_t>(a)];
            for (int c = 0; c < a; ++c) {
                s -= La[c] * r[static_cast<std::size_t>(c)];
            }
            r[static_cast<std::size_t>(a)] = s / La[a];
        }
        for (int a = n - 1; a >= 0; --a) {
            double s = r[static_cast<std::size_t>(a)];
            for (int c = a + 1; c < n; ++c) {
                s -= L[c * (c + 1) / 2 + a] * r[static_cast<std::size_t>(c)];
            }
            r[static_cast<std::size_t>(a)] = s / L[a * (a + 1) / 2 + a];
        }
        for (int a = 0; a < n; ++a) {
            x[dofs[a]] += r[static_cast<std::size_t>(a)];
        }
    }
}

} // namespace igamg
