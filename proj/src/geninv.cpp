#include "gdstar/geninv.hpp"

#include <algorithm>

namespace gdstar {

CMat moore_penrose(const CMat& A, const Tolerance& tol) {
  require_finite(A, "moore_penrose");
  if (A.size() == 0) return CMat(A.cols(), A.rows());
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rtol * sv(0) * static_cast<double>(std::max(A.rows(), A.cols()));
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  const Eigen::VectorXd inv = sv.head(r).cwiseInverse();
  return svd.matrixV().leftCols(r) * inv.cast<Complex>().asDiagonal() *
         svd.matrixU().leftCols(r).adjoint();
}

CMat one_inverse_sample(const CMat& N, const CMat& W, const CMat& V, const Tolerance& tol) {
  const Index m = N.rows();
  const Index n = N.cols();
  if (W.rows() != n || W.cols() != m || V.rows() != n || V.cols() != m) {
    throw ShapeError("one_inverse_sample: W and V must be cols(N) x rows(N)");
  }
  const CMat Np = moore_penrose(N, tol);
  return Np + (CMat::Identity(n, n) - Np * N) * W + V * (CMat::Identity(m, m) - N * Np);
}

GDFamily::GDFamily(const CMat& A, const Tolerance& tol) : A_(A), tol_(tol) {
  require_square(A, "GDFamily");
  require_finite(A, "GDFamily");
  tol_.validate();
  unitary_ = core_nilpotent(A_, tol_);
  similarity_ = to_similarity(unitary_, tol_);
  Npinv_ = moore_penrose(unitary_.N, tol_);
  param_scale_ = std::max(spectral_norm(Npinv_), 1.0);
}

GDParams GDFamily::draw(Rng& rng) const {
  const Index s = nil_size();
  GDParams p;
  p.seed = rng.seed();
  p.W = param_scale_ * random_gaussian(s, s, rng);
  p.V = param_scale_ * random_gaussian(s, s, rng);
  return p;
}

CMat GDFamily::nilpotent_inverse(const GDParams& params) const {
  const Index s = nil_size();
  if (params.W.rows() != s || params.W.cols() != s || params.V.rows() != s || params.V.cols() != s) {
    throw ShapeError("GD parameters must be " + std::to_string(s) + "x" + std::to_string(s));
  }
  const CMat& N = unitary_.N;
  const CMat I = CMat::Identity(s, s);
  return Npinv_ + (I - Npinv_ * N) * params.W + params.V * (I - N * Npinv_);
}

namespace {

CMat upper_inverse(const CMat& C) {
  return C.triangularView<Eigen::Upper>().solve(CMat::Identity(C.rows(), C.cols()));
}

}  // namespace

CMat GDFamily::sample(const GDParams& params, GDRoute route) const {
  const Index r = core_size();
  const Index s = nil_size();
  const Index k = index();
  const CMat Nm = nilpotent_inverse(params);
  const CMat Cinv = r > 0 ? upper_inverse(unitary_.C) : CMat(0, 0);

  CMat middle = CMat::Zero(r + s, r + s);
  middle.topLeftCorner(r, r) = Cinv;
  middle.bottomRightCorner(s, s) = Nm;

  if (route == GDRoute::Similarity) {
    return similarity_.P * middle * similarity_.Pinv;
  }

  if (r > 0 && s > 0) {
    const CMat& C = unitary_.C;
    const CMat& S = unitary_.S;
    const CMat& N = unitary_.N;
    const CMat complement = CMat::Identity(s, s) - N * Nm;
    CMat M = -mat_pow(C, k) * S * Nm;
    for (Index j = 0; j < k; ++j) {
      M += mat_pow(C, j) * S * mat_pow(N, k - j - 1) * complement;
    }
    middle.topRightCorner(r, s) = mat_pow(Cinv, k + 1) * M;
  }
  return unitary_.P * middle * unitary_.Pinv;
}

CMat GDFamily::drazin() const {
  const Index r = core_size();
  const Index m = A_.rows();
  CMat middle = CMat::Zero(m, m);
  if (r > 0) middle.topLeftCorner(r, r) = upper_inverse(similarity_.C);
  return similarity_.P * middle * similarity_.Pinv;
}

CMat gd_sample(const CMat& A, const GDParams& params, const Tolerance& tol, GDRoute route) {
  return GDFamily(A, tol).sample(params, route);
}

CMat drazin(const CMat& A, const Tolerance& tol) { return GDFamily(A, tol).drazin(); }

CMat group_inverse(const CMat& A, const Tolerance& tol) {
  GDFamily fam(A, tol);
  if (fam.index() > 1) {
    throw IndexTooLarge("group_inverse: matrix has index " + std::to_string(fam.index()));
  }
  return fam.drazin();
}

CMat drazin_star(const CMat& A, const Tolerance& tol) {
  return drazin(A, tol) * A * A.adjoint();
}

CheckReport gd_verify(const CMat& A, const CMat& X, const Tolerance& tol, std::optional<Index> k) {
  require_square(A, "gd_verify");
  require_same_shape(A, X, "gd_verify");
  const Index kk = k ? *k : index(A, tol);
  const Tracked tA(A);
  const Tracked tX(X);
  const Tracked Ak = tracked_pow(tA, kk);
  const Tracked Ak1 = Ak * tA;

  CheckReport rep;
  rep.suite = "gd";
  rep.check("(1) AXA=A", tA * tX * tA, tA, tol);
  rep.check("A^kX=XA^k", Ak * tX, tX * Ak, tol);
  rep.check("XA^(k+1)=A^k", tX * Ak1, Ak, tol);
  rep.check("A^(k+1)X=A^k", Ak1 * tX, Ak, tol);

  const bool first = rep.passed("(1) AXA=A") && rep.passed("A^kX=XA^k");
  const bool second = rep.passed("(1) AXA=A") && rep.passed("XA^(k+1)=A^k") &&
                      rep.passed("A^(k+1)X=A^k");
  if (first != second) {
    rep.inconsistency = true;
    rep.findings.push_back(std::string("characterizations disagree: commuting form ") +
                           (first ? "passes" : "fails") + ", power form " +
                           (second ? "passes" : "fails"));
  }
  return rep;
}

void require_gd_witness(const CMat& A, const CMat& Xgd, const Tolerance& tol) {
  if (Xgd.rows() != A.rows() || Xgd.cols() != A.cols()) {
    throw ShapeError("GD witness shape does not match the matrix");
  }
  const CheckReport rep = gd_verify(A, Xgd, tol);
  if (!rep.overall()) {
    throw InvalidWitness("supplied matrix is not a GD inverse (worst relative residual " +
                         std::to_string(rep.worst_relative()) + ")");
  }
}

CMat gdmp(const CMat& A, const CMat& Xgd, const Tolerance& tol) {
  require_gd_witness(A, Xgd, tol);
  return Xgd * A * moore_penrose(A, tol);
}

CMat mpgd(const CMat& A, const CMat& Xgd, const Tolerance& tol) {
  require_gd_witness(A, Xgd, tol);
  return moore_penrose(A, tol) * A * Xgd;
}

CheckReport verify_penrose(const CMat& A, const CMat& X, const Tolerance& tol) {
  if (X.rows() != A.cols() || X.cols() != A.rows()) {
    throw ShapeError("verify_penrose: X must have the transposed shape of A");
  }
  const Tracked tA(A);
  const Tracked tX(X);
  CheckReport rep;
  rep.suite = "penrose";
  rep.check("(1) AXA=A", tA * tX * tA, tA, tol);
  rep.check("(2) XAX=X", tX * tA * tX, tX, tol);
  const Tracked AX = tA * tX;
  const Tracked XA = tX * tA;
  rep.check("(3) (AX)*=AX", AX.adjoint(), AX, tol);
  rep.check("(4) (XA)*=XA", XA.adjoint(), XA, tol);
  return rep;
}

CheckReport verify_gdmp_system(const CMat& A, const CMat& X, const Tolerance& tol) {
  require_square(A, "verify_gdmp_system");
  require_same_shape(A, X, "verify_gdmp_system");
  const Index k = index(A, tol);
  const Tracked tA(A);
  const Tracked tX(X);
  const Tracked Ak = tracked_pow(tA, k);
  const Tracked AX = tA * tX;
  CheckReport rep;
  rep.suite = "gdmp";
  rep.check("(3) (AX)*=AX", AX.adjoint(), AX, tol);
  rep.check("(1) AXA=A", AX * tA, tA, tol);
  rep.check("(2) XAX=X", tX * AX, tX, tol);
  rep.check("XA^(k+1)=A^k", tX * Ak * tA, Ak, tol);
  return rep;
}

CheckReport verify_mpgd_system(const CMat& A, const CMat& X, const Tolerance& tol) {
  require_square(A, "verify_mpgd_system");
  require_same_shape(A, X, "verify_mpgd_system");
  const Index k = index(A, tol);
  const Tracked tA(A);
  const Tracked tX(X);
  const Tracked Ak = tracked_pow(tA, k);
  const Tracked XA = tX * tA;
  CheckReport rep;
  rep.suite = "mpgd";
  rep.check("(4) (XA)*=XA", XA.adjoint(), XA, tol);
  rep.check("(1) AXA=A", tA * XA, tA, tol);
  rep.check("(2) XAX=X", XA * tX, tX, tol);
  rep.check("A^(k+1)X=A^k", tA * Ak * tX, Ak, tol);
  return rep;
}

CheckReport gd_to_drazin(const CMat& A, const CMat& Xgd, const Tolerance& tol) {
  require_square(A, "gd_to_drazin");
  require_same_shape(A, Xgd, "gd_to_drazin");
  const Tracked tA(A);
  const Tracked tX(Xgd);
  const Tracked tD(drazin(A, tol));
  CheckReport rep;
  rep.suite = "gd-drazin";
  rep.check("X A A^D = A^D", tX * tA * tD, tD, tol);
  rep.check("A^D A X = A^D", tD * tA * tX, tD, tol);
  return rep;
}

}  // namespace gdstar
