#include "gdstar/oracles.hpp"

#include <cmath>

namespace gdstar::oracle {

Index power_rank(const CMat& A, Index j, const Tolerance& tol) {
  require_square(A, "power_rank");
  const Index m = A.rows();
  if (j == 0) return m;
  const CMat Aj = mat_pow(A, j);
  const double cutoff = tol.rank_rtol * std::pow(spectral_norm(A), static_cast<double>(j)) *
                        static_cast<double>(m);
  Eigen::JacobiSVD<CMat> svd(Aj);
  Index r = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > cutoff) ++r;
  }
  return r;
}

Index index_by_rank_sequence(const CMat& A, const Tolerance& tol) {
  require_square(A, "index_by_rank_sequence");
  const Index m = A.rows();
  if (A.norm() == 0.0) return 1;
  Index prev = m;
  for (Index k = 0; k <= m; ++k) {
    const Index next = power_rank(A, k + 1, tol);
    if (next == prev) return k;
    prev = next;
  }
  return m;
}

CMat drazin(const CMat& A, Index k, const Tolerance& tol) {
  require_square(A, "oracle::drazin");
  const Index m = A.rows();
  const CMat Ak = mat_pow(A, k);
  const CMat big = mat_pow(A, 2 * k + 1);
  const double cutoff = tol.rank_rtol * std::pow(spectral_norm(A), static_cast<double>(2 * k + 1)) *
                        static_cast<double>(m);
  Eigen::JacobiSVD<CMat> svd(big, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  CMat pinv = CMat::Zero(m, m);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) pinv += svd.matrixV().col(i) * (1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
  }
  return Ak * pinv * Ak;
}

Eigen::VectorXd stationary_eigen(const Eigen::MatrixXd& T) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(T.transpose());
  const auto& ev = es.eigenvalues();
  Index best = 0;
  for (Index i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i) - 1.0) < std::abs(ev(best) - 1.0)) best = i;
  }
  const Eigen::VectorXcd v = es.eigenvectors().col(best);
  const Eigen::VectorXd w = (v / v.sum()).real();
  return w;
}

}  // namespace gdstar::oracle
