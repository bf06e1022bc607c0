#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace umc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when a dense decomposition fails to converge. Distinct from
/// std::invalid_argument so callers can tell bad inputs from numerical
/// breakdown.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a randomized generator exhausts its retry budget.
struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an exact combinatorial computation would exceed its budget;
/// the message points at the Monte Carlo estimator.
struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense real matrix with entries validated finite at construction.
/// Immutable after construction; all operations on it are pure.
class DenseMatrix {
public:
    explicit DenseMatrix(Matrix m) : m_(std::move(m)) {
        if (m_.rows() < 1 || m_.cols() < 1)
            throw std::invalid_argument("DenseMatrix: dimensions must be positive");
        if (!m_.allFinite())
            throw std::invalid_argument("DenseMatrix: entries must be finite");
    }

    static DenseMatrix from_row_major(Index rows, Index cols,
                                      const std::vector<double>& entries) {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("DenseMatrix: dimensions must be positive");
        if (static_cast<Index>(entries.size()) != rows * cols)
            throw std::invalid_argument("DenseMatrix: entry count does not match rows*cols");
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j)
                m(i, j) = entries[static_cast<size_t>(i * cols + j)];
        return DenseMatrix(std::move(m));
    }

    static DenseMatrix zero(Index rows, Index cols) {
        return DenseMatrix(Matrix::Zero(rows, cols));
    }

    Index rows() const { return m_.rows(); }
    Index cols() const { return m_.cols(); }
    double operator()(Index i, Index j) const { return m_(i, j); }

    const Matrix& mat() const& { return m_; }
    operator const Matrix&() const& { return m_; }

private:
    Matrix m_;
};

/// Observed index set Omega as an edge list over an n1 x n2 grid, together
/// with its degree profile. Defines the sampling operator P_Omega and the
/// biadjacency matrix G of the bipartite sampling graph.
class SampleSet {
public:
    using Edge = std::pair<Index, Index>;

    /// Builds from an edge list; validates ranges, rejects duplicates and
    /// computes degrees. Edges are kept in the given order.
    static SampleSet from_edges(Index n1, Index n2, std::vector<Edge> edges);

    Index n1() const { return n1_; }
    Index n2() const { return n2_; }
    const std::vector<Edge>& edges() const { return edges_; }
    Index size() const { return static_cast<Index>(edges_.size()); }
    const std::vector<Index>& row_degrees() const { return row_degrees_; }
    const std::vector<Index>& col_degrees() const { return col_degrees_; }

    bool is_row_regular() const;
    bool is_col_regular() const;
    /// Row degree when both sides are regular; throws otherwise.
    Index regular_degree() const;
    double mean_row_degree() const {
        return static_cast<double>(edges_.size()) / static_cast<double>(n1_);
    }
    double mean_col_degree() const {
        return static_cast<double>(edges_.size()) / static_cast<double>(n2_);
    }

    /// 0/1 biadjacency matrix G with G(i,j) = 1 iff (i,j) in Omega.
    Matrix biadjacency() const;

private:
    SampleSet() = default;
    Index n1_ = 0, n2_ = 0;
    std::vector<Edge> edges_;
    std::vector<Index> row_degrees_, col_degrees_;
};

/// Rank-r factorization (U, sigma, V) with orthonormal columns, validated
/// at construction: ||U^T U - I||_F <= 1e-10 (same for V), sigma sorted
/// nonincreasing and nonnegative, r >= 1.
class LowRankFactor {
public:
    LowRankFactor(Matrix U, Vector sigma, Matrix V);

    const Matrix& U() const { return U_; }
    const Vector& sigma() const { return sigma_; }
    const Matrix& V() const { return V_; }
    Index rank() const { return sigma_.size(); }
    Index n1() const { return U_.rows(); }
    Index n2() const { return V_.rows(); }

    /// Reassembles U * diag(sigma) * V^T.
    Matrix assemble() const { return U_ * sigma_.asDiagonal() * V_.transpose(); }

private:
    Matrix U_;
    Vector sigma_;
    Matrix V_;
};

struct SVDResult {
    LowRankFactor factor;
    double residual_norm;  // ||A - U S V^T||_F of the truncation
};

}  // namespace umc
