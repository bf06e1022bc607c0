#include "umc/dense.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <unordered_set>

extern "C" void openblas_set_num_threads(int);

namespace umc {

namespace {

// One dense SVD per ALM iteration dominates solver cost; BLAS threading
// fights the trial-level worker pool and breaks run-to-run determinism,
// so pin it once.
struct BlasSingleThread {
    BlasSingleThread() { openblas_set_num_threads(1); }
};
const BlasSingleThread blas_init;

// Thin wrapper over dgesdd (divide & conquer after Golub-Kahan
// bidiagonalization). jobz 'S': thin U (m x k), VT (k x n), k = min(m,n).
void dgesdd_thin(const Matrix& A, Matrix& U, Vector& S, Matrix& VT) {
    const lapack_int m = static_cast<lapack_int>(A.rows());
    const lapack_int n = static_cast<lapack_int>(A.cols());
    const lapack_int k = std::min(m, n);
    Matrix work = A;  // destroyed by the driver
    U.resize(m, k);
    S.resize(k);
    VT.resize(k, n);
    lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m,
                                     S.data(), U.data(), m, VT.data(), k);
    if (info != 0)
        throw NumericalError("svd: dgesdd failed to converge (info=" +
                             std::to_string(info) + ")");
}

Vector dgesdd_values(const Matrix& A) {
    const lapack_int m = static_cast<lapack_int>(A.rows());
    const lapack_int n = static_cast<lapack_int>(A.cols());
    Matrix work = A;
    Vector S(std::min(m, n));
    lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m,
                                     S.data(), nullptr, m, nullptr, 1);
    if (info != 0)
        throw NumericalError("singular_values: dgesdd failed to converge (info=" +
                             std::to_string(info) + ")");
    return S;
}

}  // namespace

SampleSet SampleSet::from_edges(Index n1, Index n2, std::vector<Edge> edges) {
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("SampleSet: dimensions must be positive");
    SampleSet s;
    s.n1_ = n1;
    s.n2_ = n2;
    s.row_degrees_.assign(static_cast<size_t>(n1), 0);
    s.col_degrees_.assign(static_cast<size_t>(n2), 0);
    std::unordered_set<long long> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& [i, j] : edges) {
        if (i < 0 || i >= n1 || j < 0 || j >= n2)
            throw std::invalid_argument("SampleSet: edge index out of range");
        const long long key = static_cast<long long>(i) * n2 + j;
        if (!seen.insert(key).second)
            throw std::invalid_argument("SampleSet: duplicate edge");
        ++s.row_degrees_[static_cast<size_t>(i)];
        ++s.col_degrees_[static_cast<size_t>(j)];
    }
    s.edges_ = std::move(edges);
    return s;
}

bool SampleSet::is_row_regular() const {
    if (edges_.empty()) return false;
    return std::all_of(row_degrees_.begin(), row_degrees_.end(),
                       [this](Index d) { return d == row_degrees_[0]; });
}

bool SampleSet::is_col_regular() const {
    if (edges_.empty()) return false;
    return std::all_of(col_degrees_.begin(), col_degrees_.end(),
                       [this](Index d) { return d == col_degrees_[0]; });
}

Index SampleSet::regular_degree() const {
    if (!is_row_regular() || !is_col_regular())
        throw std::invalid_argument("SampleSet: graph is not bi-regular");
    return row_degrees_[0];
}

Matrix SampleSet::biadjacency() const {
    Matrix G = Matrix::Zero(n1_, n2_);
    for (const auto& [i, j] : edges_) G(i, j) = 1.0;
    return G;
}

LowRankFactor::LowRankFactor(Matrix U, Vector sigma, Matrix V)
    : U_(std::move(U)), sigma_(std::move(sigma)), V_(std::move(V)) {
    const Index r = sigma_.size();
    if (r < 1)
        throw std::invalid_argument("LowRankFactor: rank must be >= 1");
    if (U_.cols() != r || V_.cols() != r)
        throw std::invalid_argument("LowRankFactor: factor widths must equal rank");
    if (U_.rows() < r || V_.rows() < r)
        throw std::invalid_argument("LowRankFactor: rank exceeds matrix side");
    const Matrix Iu = Matrix::Identity(r, r);
    if ((U_.transpose() * U_ - Iu).norm() > 1e-10)
        throw std::invalid_argument("LowRankFactor: U columns not orthonormal");
    if ((V_.transpose() * V_ - Iu).norm() > 1e-10)
        throw std::invalid_argument("LowRankFactor: V columns not orthonormal");
    for (Index i = 0; i < r; ++i) {
        if (!(sigma_(i) >= 0.0))
            throw std::invalid_argument("LowRankFactor: singular values must be >= 0");
        if (i > 0 && sigma_(i) > sigma_(i - 1))
            throw std::invalid_argument("LowRankFactor: singular values not sorted");
    }
}

SVDResult svd(const DenseMatrix& A, Index k) {
    const Index kmax = std::min(A.rows(), A.cols());
    if (k < 1 || k > kmax)
        throw std::invalid_argument("svd: k must be in [1, min(rows, cols)]");
    Matrix U, VT;
    Vector S;
    dgesdd_thin(A.mat(), U, S, VT);
    Matrix Uk = U.leftCols(k);
    Vector Sk = S.head(k);
    Matrix Vk = VT.topRows(k).transpose();
    const double residual = (A.mat() - Uk * Sk.asDiagonal() * Vk.transpose()).norm();
    return SVDResult{LowRankFactor(std::move(Uk), std::move(Sk), std::move(Vk)),
                     residual};
}

Vector singular_values(const Matrix& A) { return dgesdd_values(A); }

DenseMatrix project_omega(const DenseMatrix& A, const SampleSet& omega) {
    if (A.rows() != omega.n1() || A.cols() != omega.n2())
        throw std::invalid_argument("project_omega: dimension mismatch");
    Matrix out = Matrix::Zero(A.rows(), A.cols());
    for (const auto& [i, j] : omega.edges()) out(i, j) = A(i, j);
    return DenseMatrix(std::move(out));
}

Matrix project_T(const Matrix& Z, const LowRankFactor& f) {
    if (Z.rows() != f.n1() || Z.cols() != f.n2())
        throw std::invalid_argument("project_T: dimension mismatch");
    const Matrix& U = f.U();
    const Matrix& V = f.V();
    const Matrix UtZ = U.transpose() * Z;          // r x n2
    const Matrix ZV = Z * V;                       // n1 x r
    return U * UtZ + (ZV - U * (UtZ * V)) * V.transpose();
}

Matrix project_T_perp(const Matrix& Z, const LowRankFactor& f) {
    if (Z.rows() != f.n1() || Z.cols() != f.n2())
        throw std::invalid_argument("project_T_perp: dimension mismatch");
    const Matrix& U = f.U();
    const Matrix& V = f.V();
    const Matrix W = Z - U * (U.transpose() * Z);  // (I - UU^T) Z
    return W - (W * V) * V.transpose();
}

double spectral_norm(const Matrix& A) {
    return dgesdd_values(A)(0);
}

double frobenius_norm(const Matrix& A) { return A.norm(); }

double inf_norm(const Matrix& A) { return A.cwiseAbs().maxCoeff(); }

double nuclear_norm(const Matrix& A) { return dgesdd_values(A).sum(); }

}  // namespace umc
