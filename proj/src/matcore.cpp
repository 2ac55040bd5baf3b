#include "gdstar/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdstar/decomp.hpp"
#include "gdstar/geninv.hpp"

namespace gdstar {

void Tolerance::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw InputError(std::string("tolerance field ") + name + " must lie in (0, 1)");
    }
  };
  check(rank_rtol, "rank_rtol");
  check(residual_rtol, "residual_rtol");
  check(residual_atol, "residual_atol");
  check(eig_zero_rtol, "eig_zero_rtol");
}

std::string_view to_string(MatrixClass cls) {
  switch (cls) {
    case MatrixClass::Generic: return "generic";
    case MatrixClass::EP: return "ep";
    case MatrixClass::PartialIsometry: return "partial_isometry";
    case MatrixClass::Nilpotent: return "nilpotent";
    case MatrixClass::HermitianPSD: return "hermitian_psd";
  }
  return "generic";
}

MatrixClass matrix_class_from_string(std::string_view name) {
  if (name == "generic") return MatrixClass::Generic;
  if (name == "ep") return MatrixClass::EP;
  if (name == "partial_isometry") return MatrixClass::PartialIsometry;
  if (name == "nilpotent") return MatrixClass::Nilpotent;
  if (name == "hermitian_psd") return MatrixClass::HermitianPSD;
  throw InputError("unknown matrix class '" + std::string(name) + "'");
}

void require_finite(const CMat& A, std::string_view what) {
  if (!A.allFinite()) {
    throw InputError(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const CMat& A, std::string_view what) {
  if (A.rows() != A.cols()) {
    throw ShapeError(std::string(what) + ": expected a square matrix, got " +
                     std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
}

void require_same_shape(const CMat& A, const CMat& B, std::string_view what) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(A.rows()) + "x" +
                     std::to_string(A.cols()) + " vs " + std::to_string(B.rows()) + "x" +
                     std::to_string(B.cols()));
  }
}

double spectral_norm(const CMat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(A);
  return svd.singularValues()(0);
}

double rank_cutoff(const CMat& A, const Tolerance& tol) {
  return tol.rank_rtol * spectral_norm(A) * static_cast<double>(std::max(A.rows(), A.cols()));
}

Index rank(const CMat& A, const Tolerance& tol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(A);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rtol * sv(0) * static_cast<double>(std::max(A.rows(), A.cols()));
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++r;
  }
  return r;
}

Index index(const CMat& A, const Tolerance& tol) {
  require_square(A, "index");
  return core_nilpotent(A, tol).k;
}

CMat mat_pow(const CMat& A, Index p) {
  require_square(A, "mat_pow");
  CMat result = CMat::Identity(A.rows(), A.cols());
  for (Index i = 0; i < p; ++i) result = result * A;
  return result;
}

Comparison approx_eq(const CMat& A, const CMat& B, const Tolerance& tol) {
  require_same_shape(A, B, "approx_eq");
  const double residual = (A - B).norm();
  return {residual <= tol.residual_atol + tol.residual_rtol * (A.norm() + B.norm()), residual};
}

StructureFlags classify(const CMat& A, const Tolerance& tol) {
  require_square(A, "classify");
  StructureFlags f;
  const Index m = A.rows();
  const CMat Ad = A.adjoint();
  const CMat mp = moore_penrose(A, tol);
  f.hermitian = approx_eq(A, Ad, tol).equal;
  f.ep = approx_eq(A * mp, mp * A, tol).equal;
  f.partial_isometry = approx_eq(mp, Ad, tol).equal;
  f.normal = approx_eq(A * Ad, Ad * A, tol).equal;
  const double scale = std::pow(A.norm(), static_cast<double>(m));
  f.nilpotent = mat_pow(A, m).norm() <= tol.residual_atol + tol.residual_rtol * scale;
  f.nonsingular = rank(A, tol) == m;
  f.index = index(A, tol);
  return f;
}

CMat random_gaussian(Index rows, Index cols, Rng& rng) {
  CMat G(rows, cols);
  // column-major fill order is part of the reproducibility contract
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) G(i, j) = rng.complex_normal();
  return G;
}

CMat random_unitary(Index m, Rng& rng) {
  if (m == 0) return CMat(0, 0);
  const CMat G = random_gaussian(m, m, rng);
  Eigen::HouseholderQR<CMat> qr(G);
  CMat Q = qr.householderQ() * CMat::Identity(m, m);
  const CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < m; ++j) {
    const Complex d = R(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) Q.col(j) *= d / mag;
  }
  return Q;
}

namespace {

CMat well_conditioned_core(Index r, Rng& rng) {
  if (r == 0) return CMat(0, 0);
  const CMat Q1 = random_unitary(r, rng);
  const CMat Q2 = random_unitary(r, rng);
  Eigen::VectorXd s(r);
  for (Index i = 0; i < r; ++i) s(i) = rng.uniform(0.7, 1.5);
  return Q1 * s.cast<Complex>().asDiagonal() * Q2.adjoint();
}

Complex random_phase(Rng& rng) {
  const double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  return {std::cos(theta), std::sin(theta)};
}

/// Direct sum of Jordan blocks, the first of size k, the rest of size <= k.
CMat jordan_nilpotent(Index s, Index k, Rng& rng) {
  CMat N = CMat::Zero(s, s);
  Index start = 0;
  Index block = k;
  while (start < s) {
    for (Index i = start; i + 1 < start + block; ++i) {
      N(i, i + 1) = rng.uniform(0.5, 1.5) * random_phase(rng);
    }
    start += block;
    const Index remaining = s - start;
    if (remaining > 0) block = rng.uniform_int(1, std::min(k, remaining));
  }
  return N;
}

}  // namespace

CMat gen_structured(Index m, Index r, Index k, MatrixClass cls, Rng& rng) {
  if (m <= 0) throw InfeasibleError("gen_structured: size must be positive");
  if (cls == MatrixClass::Nilpotent) r = 0;
  if (r < 0 || r > m) throw InfeasibleError("gen_structured: need 0 <= r <= m");
  if (r == m && k != 0) throw InfeasibleError("gen_structured: a nonsingular matrix has index 0");
  if (r < m && (k < 1 || k > m - r)) {
    throw InfeasibleError("gen_structured: index must lie in [1, m - r] for a singular matrix");
  }
  const bool block_diagonal_only = cls == MatrixClass::EP || cls == MatrixClass::HermitianPSD;
  if (block_diagonal_only && r < m && k != 1) {
    throw InfeasibleError("gen_structured: EP and Hermitian matrices have index <= 1");
  }

  const Index s = m - r;
  const CMat P = random_unitary(m, rng);
  CMat T = CMat::Zero(m, m);

  if (cls == MatrixClass::HermitianPSD) {
    for (Index i = 0; i < r; ++i) T(i, i) = rng.uniform(0.7, 1.5);
    return P * T * P.adjoint();
  }

  T.topLeftCorner(r, r) = well_conditioned_core(r, rng);
  if (!block_diagonal_only && s > 0) {
    T.topRightCorner(r, s) = random_gaussian(r, s, rng);
    T.bottomRightCorner(s, s) = jordan_nilpotent(s, k, rng);
  }
  CMat A = P * T * P.adjoint();

  if (cls == MatrixClass::PartialIsometry) {
    Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Index rk = rank(A);
    A = svd.matrixU().leftCols(rk) * svd.matrixV().leftCols(rk).adjoint();
  }
  return A;
}

}  // namespace gdstar
