#pragma once

#include "umc/types.hpp"

namespace umc {

/// Top-k singular triples of A via a full dense decomposition, truncated to
/// the k leading triples (ties broken by the backend's order, so the result
/// is one valid best rank-k approximation). residual_norm is the Frobenius
/// norm of A - U_k S_k V_k^T.
///
/// Throws std::invalid_argument for k out of range, NumericalError if the
/// decomposition does not converge.
SVDResult svd(const DenseMatrix& A, Index k);

/// All singular values of A, nonincreasing. Values-only fast path.
Vector singular_values(const Matrix& A);

/// P_Omega: keeps entries of A on Omega, zeroes the rest (A Hadamard G).
DenseMatrix project_omega(const DenseMatrix& A, const SampleSet& omega);

/// Projection onto the tangent space T at the factorization f:
/// P_T(Z) = U U^T Z + Z V V^T - U U^T Z V V^T.
Matrix project_T(const Matrix& Z, const LowRankFactor& f);

/// Projection onto the orthogonal complement of T:
/// P_Tperp(Z) = (I - U U^T) Z (I - V V^T). Computed by the formula, not as
/// Z - P_T(Z), so the decomposition identity is a real cross-check.
Matrix project_T_perp(const Matrix& Z, const LowRankFactor& f);

double spectral_norm(const Matrix& A);
double frobenius_norm(const Matrix& A);
double inf_norm(const Matrix& A);   // max absolute entry
double nuclear_norm(const Matrix& A);

}  // namespace umc
