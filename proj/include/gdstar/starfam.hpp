#pragma once

#include <vector>

#include "gdstar/check.hpp"
#include "gdstar/geninv.hpp"

namespace gdstar {

/// Xgd A A*. Throws InvalidWitness unless Xgd is a GD inverse of A.
CMat gd_star(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});
/// A* A Xgd
CMat dual_gd_star(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});
/// Xgd A* A
CMat gd_star_one(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// X (A+)* X = X, A^k X = A^k A*, X (A+)* = Xgd A.
CheckReport gd_star_solution_check(const CMat& A, const CMat& X, const CMat& Xgd,
                                   const Tolerance& tol = {});

/// The fifteen properties of X = Xgd A A*.
CheckReport verify_lemma_sa3(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// The twelve properties of X = A* A Xgd together with its defining system.
CheckReport verify_dual_lemma(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// The eight properties of X = Xgd A* A.
CheckReport verify_star_one_lemma(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// Identities that hold for Hermitian, EP, index-1 and partial-isometry
/// matrices; items whose class flag is off are reported as skipped.
CheckReport special_class_identities(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// GD-star matrix evaluated block-wise from the unitary core-nilpotent form,
/// with the same N^- the family would use for these parameters.
CMat gd_star_via_core_nilpotent(const GDFamily& family, const GDParams& params);
CMat gd_star_via_core_nilpotent(const CMat& A, const GDParams& params, const Tolerance& tol = {});

struct HSGDStar {
  CMat value;
  /// Conditions (a)-(d) on the blocks of Xgd in the HS basis.
  CheckReport conditions;
};

/// U [[X1 S S*, 0], [X3 S S*, 0]] U* with X1, X3 read off U* Xgd U.
HSGDStar gd_star_via_hs(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

struct SpectralDecomp {
  std::vector<double> alphas;
  std::vector<CMat> projectors;
};

/// Distinct eigenvalues of A A* (descending) with their spectral projectors.
/// Throws ZeroMatrixError for A = 0.
SpectralDecomp spectral(const CMat& A, const Tolerance& tol = {});

/// Invariants of the decomposition plus A+ = sum over nonzero alpha of A* E / alpha.
CheckReport verify_spectral(const CMat& A, const SpectralDecomp& sd, const Tolerance& tol = {});

CheckReport spectral_identities(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// Requires a partial isometry (else NotPartialIsometry). Builds
/// X = Xgd A A* + (I - Xgd A) A A* and checks X (A+)* X = X, AX = AA*, AX = AA+.
CheckReport partial_isometry_solutions(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

}  // namespace gdstar
