#pragma once

#include "gdstar/check.hpp"
#include "gdstar/rng.hpp"

namespace gdstar {

struct Solution {
  CVec x;
  CheckReport report;
};

/// x = A^(GD,+) b. Its residual ||Ax - b|| matches that of A+ b.
Solution lsq_gdmp(const CMat& A, const CVec& b, const CMat& Xgd, const Tolerance& tol = {});

/// x = A^(+,GD) b for a consistent system: Ax = b and ||x|| = ||A+ b||.
/// Throws Inconsistent when b is not in R(A).
Solution minnorm_mpgd(const CMat& A, const CVec& b, const CMat& Xgd, const Tolerance& tol = {});

/// x = A^(GD,*) b + (I - Xgd A) z, a solution of Ax = AA*b; z = 0 is checked too.
Solution gram_solve(const CMat& A, const CVec& b, const CMat& Xgd, const CVec& z, const Tolerance& tol = {});

struct Stationary {
  Eigen::VectorXd w;
  CheckReport report;
};

/// Stationary distribution of an ergodic row-stochastic T from the rows of
/// I - Xgd (I - T), over `draws` GD inverses forked from rng. Throws
/// NotStochastic and NotErgodic (second eigenvalue modulus >= 1 - residual_rtol).
Stationary markov_stationary(const Eigen::MatrixXd& T, Rng& rng, const Tolerance& tol = {}, int draws = 5);

}  // namespace gdstar
