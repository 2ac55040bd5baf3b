#pragma once

#include <vector>

#include "gdstar/matcore.hpp"

namespace gdstar {

/// Unitary triangularization with nonzero eigenvalues leading.
struct OrderedSchur {
  CMat P;
  CMat T;
  /// Number of leading (nonzero) eigenvalues.
  Index r = 0;
  /// Number of null-space staircase blocks; this is the index of A.
  Index k = 0;
  /// Sizes of the staircase blocks, first block = dim null(A).
  std::vector<Index> blocks;
  /// Frobenius norm of the entries set to exact zero after reduction.
  double discarded = 0.0;
  /// Some singular value in the staircase fell within a factor 100 of the cutoff.
  bool near_threshold = false;
};

/// Staircase reduction of A* followed by a Schur form of the core block.
///
/// Eigenvalues of a defective zero eigenvalue are only recovered to about
/// eps^(1/k) by QR iteration, so the zero/nonzero split is decided on ranks
/// of successive compressions instead; the nilpotent block is then exactly
/// strictly upper triangular.
OrderedSchur schur_zero_ordered(const CMat& A, const Tolerance& tol = {});

enum class CNForm { Unitary, Similarity };

struct CoreNilpotent {
  CMat P;
  CMat C;
  CMat S;
  CMat N;
  CMat Pinv;
  Index k = 0;
  CNForm form = CNForm::Unitary;
  double discarded = 0.0;
  bool near_threshold = false;

  Index r() const { return C.rows(); }
  Index m() const { return P.rows(); }
  /// [[C, S], [0, N]]
  CMat middle() const;
  /// P [[C, S], [0, N]] Pinv
  CMat reconstruct() const;
};

CoreNilpotent core_nilpotent(const CMat& A, const Tolerance& tol = {}, CNForm form = CNForm::Unitary);

/// Similarity form derived from an existing unitary form.
CoreNilpotent to_similarity(const CoreNilpotent& unitary, const Tolerance& tol = {});

/// Solves C Y - Y N = S for upper-triangular C (nonsingular) and N (nilpotent)
/// by column-wise back-substitution. Throws IllConditioned when the computed Y
/// does not reproduce S to tolerance.
CMat sylvester_upper(const CMat& C, const CMat& N, const CMat& S, const Tolerance& tol = {});

/// Smallest k with ||N^k||_F <= max(eig_zero_rtol * scale^k, 64 eps * scale^k);
/// 0 for an empty block.
Index nilpotency_degree(const CMat& N, double scale, const Tolerance& tol = {});

struct HSFactors {
  CMat U;
  Eigen::VectorXd sigma;
  CMat K;
  CMat L;
  Index r = 0;

  /// U [[Sigma K, Sigma L], [0, 0]] U*
  CMat reconstruct() const;
};

HSFactors hartwig_spindelboeck(const CMat& A, const Tolerance& tol = {});

}  // namespace gdstar
