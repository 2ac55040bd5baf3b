#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string_view>

#include "gdstar/errors.hpp"
#include "gdstar/rng.hpp"

namespace gdstar {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numerical policy shared by every rank decision and residual comparison.
struct Tolerance {
  double rank_rtol = 1e-10;
  double residual_rtol = 1e-9;
  double residual_atol = 1e-12;
  double eig_zero_rtol = 1e-10;

  /// Throws InputError unless every field lies in (0, 1).
  void validate() const;
};

struct StructureFlags {
  bool hermitian = false;
  bool ep = false;
  bool partial_isometry = false;
  bool normal = false;
  bool nilpotent = false;
  bool nonsingular = false;
  Index index = 0;
};

enum class MatrixClass { Generic, EP, PartialIsometry, Nilpotent, HermitianPSD };

std::string_view to_string(MatrixClass cls);
MatrixClass matrix_class_from_string(std::string_view name);

struct Comparison {
  bool equal = false;
  double residual = 0.0;
};

void require_finite(const CMat& A, std::string_view what);
void require_square(const CMat& A, std::string_view what);
void require_same_shape(const CMat& A, const CMat& B, std::string_view what);

/// Largest singular value.
double spectral_norm(const CMat& A);

/// Absolute singular-value cutoff used by rank(): rank_rtol * sigma_max * max(rows, cols).
double rank_cutoff(const CMat& A, const Tolerance& tol);

Index rank(const CMat& A, const Tolerance& tol = {});

/// Smallest k >= 0 with rank(A^k) = rank(A^(k+1)), read off the nilpotent
/// block of the core-nilpotent decomposition. index(0) = 1.
Index index(const CMat& A, const Tolerance& tol = {});

CMat mat_pow(const CMat& A, Index p);

/// residual = ||A - B||_F; equal iff residual <= atol + rtol (||A||_F + ||B||_F).
Comparison approx_eq(const CMat& A, const CMat& B, const Tolerance& tol = {});

StructureFlags classify(const CMat& A, const Tolerance& tol = {});

CMat random_gaussian(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a complex Gaussian with phase correction).
CMat random_unitary(Index m, Rng& rng);

/// Random matrix P [[C, S], [0, N]] P* with rank(A^k) = r for k >= index and
/// index exactly k. C is r x r with singular values in [0.7, 1.5]; N is a
/// direct sum of shifted Jordan blocks, the largest of size k.
CMat gen_structured(Index m, Index r, Index k, MatrixClass cls, Rng& rng);

}  // namespace gdstar
