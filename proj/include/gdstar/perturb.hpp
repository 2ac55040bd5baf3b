#pragma once

#include "gdstar/check.hpp"
#include "gdstar/rng.hpp"

namespace gdstar {

/// For ||A||_2 < 1: I + A is nonsingular and ||(I+A)^-1||_2 <= 1 / (1 - ||A||_2).
/// Larger A gives a skipped report.
CheckReport stewart_check(const CMat& A, const Tolerance& tol = {});

enum class PerturbMode { Strict, Structural };

struct Perturbation {
  CMat E;
  /// A^k E = E
  bool strict = false;
  /// E = P [[E1, E2], [0, 0]] P* in the unitary core-nilpotent basis.
  bool structural = false;
  /// Strict mode with null(A^k - I) = {0}: E is zero.
  bool empty = false;
  /// ||A^GD E||_2, the same for every GD inverse once E is structural.
  double contraction = 0.0;
};

/// Strict: columns of E drawn from null(A^k - I). Structural: random top
/// blocks in the core-nilpotent basis. Both are scaled so that
/// ||A^GD E||_2 <= 0.5.
Perturbation admissible_perturbation(const CMat& A, PerturbMode mode, Rng& rng, const Tolerance& tol = {});

struct PerturbedInverse {
  CMat G;
  CheckReport report;
};

/// G = (I + Xgd E)^-1 Xgd and the check B G B = B for B = A + E. When Xgd is
/// the W = V = 0 member of the family, G = B+ is also recorded.
/// Throws ContractionViolated when ||Xgd E||_2 >= 1.
PerturbedInverse perturbed_one_inverse(const CMat& A, const CMat& Xgd, const CMat& E, const Tolerance& tol = {});

}  // namespace gdstar
