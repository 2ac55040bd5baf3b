#include "gdstar/decomp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gdstar {

namespace {

constexpr double kNearFactor = 100.0;

}  // namespace

OrderedSchur schur_zero_ordered(const CMat& A, const Tolerance& tol) {
  require_square(A, "schur_zero_ordered");
  require_finite(A, "schur_zero_ordered");
  const Index m = A.rows();
  OrderedSchur out;
  if (m == 0) {
    out.P = CMat(0, 0);
    out.T = CMat(0, 0);
    return out;
  }

  const double cutoff = rank_cutoff(A, tol);
  const CMat B = A.adjoint();
  CMat Q = CMat::Identity(m, m);
  std::vector<Index> block_of(static_cast<std::size_t>(m), 0);
  Index done = 0;

  // Peel null spaces of successive compressions of A*: each block maps into
  // the span of the blocks found before it.
  while (done < m) {
    const Index s = m - done;
    const CMat Qrest = Q.rightCols(s);
    const CMat M = Qrest.adjoint() * B * Qrest;
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Index d = 0;
    for (Index i = 0; i < s; ++i) {
      if (sv(i) <= cutoff) ++d;
      if (sv(i) > cutoff / kNearFactor && sv(i) < cutoff * kNearFactor) out.near_threshold = true;
    }
    if (d == 0) break;
    CMat reordered(s, s);
    reordered << svd.matrixV().rightCols(d), svd.matrixV().leftCols(s - d);
    Q.rightCols(s) = Qrest * reordered;
    out.blocks.push_back(d);
    for (Index i = done; i < done + d; ++i) block_of[static_cast<std::size_t>(i)] = static_cast<Index>(out.blocks.size());
    done += d;
  }

  const Index r = m - done;
  out.r = r;
  out.k = static_cast<Index>(out.blocks.size());

  CMat P(m, m);
  P.leftCols(r) = Q.rightCols(r);
  for (Index j = 0; j < done; ++j) P.col(r + j) = Q.col(done - 1 - j);

  CMat T = P.adjoint() * A * P;
  double discarded = T.bottomLeftCorner(done, r).squaredNorm();
  T.bottomLeftCorner(done, r).setZero();
  for (Index p = 0; p < done; ++p) {
    const Index bp = block_of[static_cast<std::size_t>(done - 1 - p)];
    for (Index q = 0; q < done; ++q) {
      const Index bq = block_of[static_cast<std::size_t>(done - 1 - q)];
      if (bp <= bq) {
        discarded += std::norm(T(r + p, r + q));
        T(r + p, r + q) = 0.0;
      }
    }
  }
  out.discarded = std::sqrt(discarded);

  if (r > 0) {
    Eigen::ComplexSchur<CMat> schur(T.topLeftCorner(r, r));
    const CMat Z = schur.matrixU();
    P.leftCols(r) = P.leftCols(r) * Z;
    T.topLeftCorner(r, r) = schur.matrixT().triangularView<Eigen::Upper>();
    if (done > 0) T.topRightCorner(r, done) = Z.adjoint() * T.topRightCorner(r, done);

    const double eig_floor = tol.eig_zero_rtol * spectral_norm(A);
    for (Index i = 0; i < r; ++i) {
      if (std::abs(T(i, i)) <= eig_floor * kNearFactor) out.near_threshold = true;
    }
  }

  out.P = std::move(P);
  out.T = std::move(T);
  return out;
}

Index nilpotency_degree(const CMat& N, double scale, const Tolerance& tol) {
  require_square(N, "nilpotency_degree");
  const Index n = N.rows();
  if (n == 0) return 0;
  const double rel = std::max(tol.eig_zero_rtol, 64.0 * std::numeric_limits<double>::epsilon());
  CMat power = N;
  double scale_pow = scale;
  for (Index j = 1; j <= n; ++j) {
    if (power.norm() <= rel * scale_pow) return j;
    power = power * N;
    scale_pow *= scale;
  }
  return n;
}

CMat CoreNilpotent::middle() const {
  const Index r = C.rows();
  const Index s = N.rows();
  CMat T = CMat::Zero(r + s, r + s);
  T.topLeftCorner(r, r) = C;
  T.topRightCorner(r, s) = S;
  T.bottomRightCorner(s, s) = N;
  return T;
}

CMat CoreNilpotent::reconstruct() const { return P * middle() * Pinv; }

CoreNilpotent core_nilpotent(const CMat& A, const Tolerance& tol, CNForm form) {
  const OrderedSchur os = schur_zero_ordered(A, tol);
  const Index r = os.r;
  const Index s = A.rows() - r;
  CoreNilpotent cn;
  cn.P = os.P;
  cn.Pinv = os.P.adjoint();
  cn.C = os.T.topLeftCorner(r, r);
  cn.S = os.T.topRightCorner(r, s);
  cn.N = os.T.bottomRightCorner(s, s);
  cn.k = os.k;
  cn.form = CNForm::Unitary;
  cn.discarded = os.discarded;
  cn.near_threshold = os.near_threshold;
  if (nilpotency_degree(cn.N, A.norm(), tol) != cn.k) cn.near_threshold = true;
  if (form == CNForm::Similarity) return to_similarity(cn, tol);
  return cn;
}

CoreNilpotent to_similarity(const CoreNilpotent& unitary, const Tolerance& tol) {
  if (unitary.form == CNForm::Similarity) return unitary;
  const Index r = unitary.r();
  const Index s = unitary.N.rows();
  CoreNilpotent cn = unitary;
  if (r == 0 || s == 0) {
    cn.form = CNForm::Similarity;
    return cn;
  }
  const CMat Y = sylvester_upper(unitary.C, unitary.N, unitary.S, tol);
  CMat left = CMat::Identity(r + s, r + s);
  CMat right = CMat::Identity(r + s, r + s);
  left.topRightCorner(r, s) = -Y;
  right.topRightCorner(r, s) = Y;
  cn.P = unitary.P * left;
  cn.Pinv = right * unitary.P.adjoint();
  cn.S = CMat::Zero(r, s);
  cn.form = CNForm::Similarity;
  return cn;
}

CMat sylvester_upper(const CMat& C, const CMat& N, const CMat& S, const Tolerance& tol) {
  require_square(C, "sylvester_upper");
  require_square(N, "sylvester_upper");
  if (S.rows() != C.rows() || S.cols() != N.rows()) {
    throw ShapeError("sylvester_upper: S must be rows(C) x rows(N)");
  }
  const Index r = C.rows();
  const Index s = N.rows();
  CMat Y = CMat::Zero(r, s);
  const auto Cu = C.triangularView<Eigen::Upper>();
  for (Index j = 0; j < s; ++j) {
    CVec rhs = S.col(j);
    for (Index l = 0; l < j; ++l) rhs += N(l, j) * Y.col(l);
    CMat shifted = Cu;
    shifted.diagonal().array() -= N(j, j);
    Y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  const double residual = (C * Y - Y * N - S).norm();
  const double scale = C.norm() * Y.norm() + Y.norm() * N.norm() + S.norm();
  if (!std::isfinite(residual) || residual > tol.residual_atol + tol.residual_rtol * scale) {
    throw IllConditioned("sylvester_upper: residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }
  return Y;
}

CMat HSFactors::reconstruct() const {
  const Index m = U.rows();
  CMat T = CMat::Zero(m, m);
  const CMat Sig = sigma.cast<Complex>().asDiagonal();
  T.topLeftCorner(r, r) = Sig * K;
  T.topRightCorner(r, m - r) = Sig * L;
  return U * T * U.adjoint();
}

HSFactors hartwig_spindelboeck(const CMat& A, const Tolerance& tol) {
  require_square(A, "hartwig_spindelboeck");
  require_finite(A, "hartwig_spindelboeck");
  const Index m = A.rows();
  const Index r = rank(A, tol);
  if (r == 0) throw ZeroMatrixError("hartwig_spindelboeck: zero matrix has no HS factors");

  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMat U = svd.matrixU();
  CMat V = svd.matrixV();
  // Fix the column phases so the decomposition is reproducible: largest
  // entry of each U column real positive, with V adjusted to keep A = U S V*.
  for (Index j = 0; j < m; ++j) {
    Index imax = 0;
    U.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = U(imax, j);
    const double mag = std::abs(pivot);
    if (mag == 0.0) continue;
    const Complex phase = std::conj(pivot) / mag;
    U.col(j) *= phase;
    if (j < r) V.col(j) *= phase;
  }

  HSFactors hs;
  hs.r = r;
  hs.sigma = svd.singularValues().head(r);
  const CMat KL = V.leftCols(r).adjoint() * U;
  hs.K = KL.leftCols(r);
  hs.L = KL.rightCols(m - r);
  hs.U = std::move(U);
  return hs;
}

}  // namespace gdstar
