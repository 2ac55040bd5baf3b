#pragma once

#include "gdstar/matcore.hpp"

// Reference computations that share no code path with the constructive
// routines in decomp/geninv. Used by the harness and the tests as cross-checks.
namespace gdstar::oracle {

/// rank(A^j) with cutoff rank_rtol * ||A||_2^j * m, i.e. relative to the
/// power of the norm rather than to sigma_max(A^j).
Index power_rank(const CMat& A, Index j, const Tolerance& tol = {});

/// Smallest k with rank(A^k) = rank(A^(k+1)) using power_rank; 1 for the zero matrix.
Index index_by_rank_sequence(const CMat& A, const Tolerance& tol = {});

/// A^k (A^(2k+1))+ A^k, the pseudoinverse taken with an absolute cutoff.
CMat drazin(const CMat& A, Index k, const Tolerance& tol = {});

/// Left eigenvector of T for the eigenvalue closest to 1, scaled to sum 1.
Eigen::VectorXd stationary_eigen(const Eigen::MatrixXd& T);

}  // namespace gdstar::oracle
