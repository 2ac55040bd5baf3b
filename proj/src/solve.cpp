#include "gdstar/solve.hpp"

#include <algorithm>
#include <cmath>

#include "gdstar/geninv.hpp"
#include "gdstar/oracles.hpp"
#include "gdstar/starfam.hpp"

namespace gdstar {

namespace {

void require_rhs(const CMat& A, const CVec& b, const char* what) {
  require_square(A, what);
  if (b.size() != A.rows()) {
    throw ShapeError(std::string(what) + ": right-hand side has length " + std::to_string(b.size()) + ", expected " +
                     std::to_string(A.rows()));
  }
  require_finite(b, what);
}

/// |a - b| against the tolerance with scale a + b, as a pass/fail item.
void check_scalar(CheckReport& rep, const std::string& name, double a, double b, const Tolerance& tol) {
  const double diff = std::abs(a - b);
  rep.check_flag(name, diff <= tol.residual_atol + tol.residual_rtol * (a + b), diff, a + b);
}

}  // namespace

Solution lsq_gdmp(const CMat& A, const CVec& b, const CMat& Xgd, const Tolerance& tol) {
  require_rhs(A, b, "lsq_gdmp");
  Solution out;
  out.x = gdmp(A, Xgd, tol) * b;
  const CVec xmp = moore_penrose(A, tol) * b;
  out.report.suite = "lsq";
  check_scalar(out.report, "||Ax-b|| = ||AA+b-b||", (A * out.x - b).norm(), (A * xmp - b).norm(), tol);
  return out;
}

Solution minnorm_mpgd(const CMat& A, const CVec& b, const CMat& Xgd, const Tolerance& tol) {
  require_rhs(A, b, "minnorm_mpgd");
  const CMat Ap = moore_penrose(A, tol);
  const CVec xmp = Ap * b;
  const double gap = (A * xmp - b).norm();
  if (gap > tol.residual_atol + tol.residual_rtol * (spectral_norm(A) * xmp.norm() + b.norm())) {
    throw Inconsistent("b is not in the range of A (||AA+b - b|| = " + std::to_string(gap) + ")");
  }
  Solution out;
  out.x = mpgd(A, Xgd, tol) * b;
  out.report.suite = "minnorm";
  out.report.check("Ax=b", Tracked(CMat(A * out.x), spectral_norm(A) * out.x.norm()), Tracked(CMat(b)), tol);
  check_scalar(out.report, "||x|| = ||A+b||", out.x.norm(), xmp.norm(), tol);
  return out;
}

Solution gram_solve(const CMat& A, const CVec& b, const CMat& Xgd, const CVec& z, const Tolerance& tol) {
  require_rhs(A, b, "gram_solve");
  if (z.size() != A.cols()) throw ShapeError("gram_solve: z has the wrong length");
  const Index m = A.rows();
  const CMat S = gd_star(A, Xgd, tol);
  const CVec x0 = S * b;
  Solution out;
  out.x = x0 + (CMat::Identity(m, m) - Xgd * A) * z;
  const Tracked tA(A);
  const Tracked rhs = tA * tA.adjoint() * Tracked(CMat(b));
  out.report.suite = "gram";
  out.report.check("Ax=AA*b", tA * Tracked(CMat(out.x)), rhs, tol);
  out.report.check("Ax0=AA*b (z=0)", tA * Tracked(CMat(x0)), rhs, tol);
  return out;
}

Stationary markov_stationary(const Eigen::MatrixXd& T, Rng& rng, const Tolerance& tol, int draws) {
  if (T.rows() != T.cols() || T.rows() == 0) throw ShapeError("markov_stationary: T must be square and nonempty");
  if (!T.allFinite()) throw InputError("markov_stationary: T has non-finite entries");
  const Index m = T.rows();
  const double slack = 1e-12 * static_cast<double>(m);
  if (T.minCoeff() < -slack) throw NotStochastic("T has a negative entry");
  for (Index i = 0; i < m; ++i) {
    if (std::abs(T.row(i).sum() - 1.0) > slack) {
      throw NotStochastic("row " + std::to_string(i) + " of T sums to " + std::to_string(T.row(i).sum()));
    }
  }
  if (m > 1) {
    Eigen::VectorXd mods = T.eigenvalues().cwiseAbs();
    std::sort(mods.data(), mods.data() + mods.size(), std::greater<>());
    if (mods(1) >= 1.0 - tol.residual_rtol) {
      throw NotErgodic("second eigenvalue modulus " + std::to_string(mods(1)) + " is not below 1");
    }
  }

  const CMat A = CMat::Identity(m, m) - T.cast<Complex>();
  const GDFamily fam(A, tol);
  Stationary out;
  CheckReport& rep = out.report;
  rep.suite = "markov";
  Eigen::VectorXd first;
  double spread = 0.0;
  for (int d = 0; d < draws; ++d) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(d));
    const CMat X = fam.sample(fam.draw(sub));
    const CMat M = CMat::Identity(m, m) - X * A;
    double rowdist = 0.0;
    for (Index i = 1; i < m; ++i) rowdist = std::max(rowdist, (M.row(i) - M.row(0)).norm());
    const double mnorm = M.norm();
    rep.check_flag("rows of I - XA equal (draw " + std::to_string(d) + ")",
                   rowdist <= tol.residual_atol + tol.residual_rtol * mnorm, rowdist, mnorm);
    const Eigen::VectorXd w = (M.colwise().mean().transpose() / M.colwise().mean().sum()).real();
    if (d == 0) {
      first = w;
    } else {
      spread = std::max(spread, (w - first).norm());
    }
  }
  out.w = first;
  rep.check_flag("witness independent", spread <= tol.residual_atol + tol.residual_rtol, spread, 1.0);
  const Eigen::VectorXd wT = T.transpose() * out.w;
  rep.check("wT=w", Tracked(CMat(wT.cast<Complex>()), T.norm() * out.w.norm()), Tracked(CMat(out.w.cast<Complex>())),
            tol);
  const Eigen::VectorXd oracle = oracle::stationary_eigen(T);
  rep.check("w = eigenvector oracle", Tracked(CMat(out.w.cast<Complex>())), Tracked(CMat(oracle.cast<Complex>())), tol);
  return out;
}

}  // namespace gdstar
