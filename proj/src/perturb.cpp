#include "gdstar/perturb.hpp"

#include <algorithm>

#include "gdstar/geninv.hpp"

namespace gdstar {

CheckReport stewart_check(const CMat& A, const Tolerance& tol) {
  require_square(A, "stewart_check");
  require_finite(A, "stewart_check");
  CheckReport rep;
  rep.suite = "stewart";
  const double a = spectral_norm(A);
  if (a >= 1.0) {
    rep.skip("(I+A)^-1 bound", "||A||_2 = " + std::to_string(a) + " is not below 1");
    return rep;
  }
  const CMat IA = CMat::Identity(A.rows(), A.cols()) + A;
  Eigen::JacobiSVD<CMat> svd(IA);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  rep.check_flag("I+A nonsingular", smin > 0.0, 0.0, 1.0, "smallest singular value " + std::to_string(smin));
  if (smin <= 0.0) return rep;
  const double lhs = 1.0 / smin;
  const double rhs = 1.0 / (1.0 - a);
  const double excess = std::max(0.0, lhs - rhs);
  rep.check_flag("||(I+A)^-1|| <= 1/(1-||A||)", excess <= tol.residual_rtol * rhs, excess, rhs);
  return rep;
}

Perturbation admissible_perturbation(const CMat& A, PerturbMode mode, Rng& rng, const Tolerance& tol) {
  require_square(A, "admissible_perturbation");
  const GDFamily fam(A, tol);
  const CoreNilpotent& cn = fam.unitary();
  const Index m = A.rows();
  const Index r = fam.core_size();
  const CMat Ak = mat_pow(A, fam.index());

  Perturbation out;
  if (mode == PerturbMode::Strict) {
    const CMat D = Ak - CMat::Identity(m, m);
    Eigen::JacobiSVD<CMat> svd(D, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.rank_rtol * std::max(1.0, sv(0)) * static_cast<double>(m);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    const Index dim = m - rank;
    if (dim == 0) {
      out.E = CMat::Zero(m, m);
      out.empty = true;
    } else {
      out.E = svd.matrixV().rightCols(dim) * random_gaussian(dim, m, rng);
    }
  } else {
    CMat top = CMat::Zero(m, m);
    top.topRows(r) = random_gaussian(r, m, rng);
    out.E = cn.P * top * cn.P.adjoint();
  }

  const double c = spectral_norm(fam.canonical() * out.E);
  if (c > 0.0) out.E *= std::min(1.0, 0.5 / c) * rng.uniform(0.2, 1.0);
  out.contraction = spectral_norm(fam.canonical() * out.E);

  const Tracked tE(out.E);
  out.strict = tracked_eq(Tracked(Ak) * tE, tE, tol);
  const CMat Et = cn.P.adjoint() * out.E * cn.P;
  out.structural = Et.bottomRows(m - r).norm() <= tol.residual_atol + tol.residual_rtol * out.E.norm();
  return out;
}

PerturbedInverse perturbed_one_inverse(const CMat& A, const CMat& Xgd, const CMat& E, const Tolerance& tol) {
  require_square(A, "perturbed_one_inverse");
  require_same_shape(A, E, "perturbed_one_inverse");
  require_gd_witness(A, Xgd, tol);
  const Index m = A.rows();
  const CMat XE = Xgd * E;
  const double c = spectral_norm(XE);
  if (c >= 1.0) {
    throw ContractionViolated("||Xgd E||_2 = " + std::to_string(c) + " is not below 1");
  }
  PerturbedInverse out;
  out.G = (CMat::Identity(m, m) + XE).partialPivLu().solve(Xgd);
  const CMat B = A + E;
  CheckReport& rep = out.report;
  rep.suite = "perturbation";
  const Tracked tB(B);
  rep.check("BGB=B", tB * Tracked(out.G) * tB, tB, tol);

  const GDFamily fam(A, tol);
  if (approx_eq(Xgd, fam.canonical(), tol).equal) {
    rep.record("G=B+ [remark]", Tracked(out.G), Tracked(moore_penrose(B, tol)), "not asserted");
  }
  return out;
}

}  // namespace gdstar
