#include "gdstar/decomp.hpp"
#include "support.hpp"

using namespace gdstar;
using gdstar::test::diag;
using gdstar::test::mat;
using gdstar::test::maxdiff;

namespace {

bool strictly_upper(const CMat& N) {
  for (Index i = 0; i < N.rows(); ++i)
    for (Index j = 0; j <= i; ++j)
      if (N(i, j) != Complex(0.0)) return false;
  return true;
}

}  // namespace

TEST_CASE("ordered Schur puts nonzero eigenvalues first") {
  const CMat A = diag({0, 3});
  const OrderedSchur s = schur_zero_ordered(A);
  CHECK(s.r == 1);
  CHECK(std::abs(s.T(0, 0) - Complex(3.0)) < 1e-13);
  CHECK(std::abs(s.T(1, 1)) < 1e-13);
  CHECK(maxdiff(s.P * s.T * s.P.adjoint(), A) < 1e-13);

  const CMat B = mat({{1, 1}, {0, 0}});
  const OrderedSchur t = schur_zero_ordered(B);
  CHECK(std::abs(t.T(0, 0) - Complex(1.0)) < 1e-13);
  CHECK(std::abs(t.T(1, 1)) < 1e-13);
  CHECK(maxdiff(t.P.adjoint() * t.P, CMat::Identity(2, 2)) < 1e-13);
  CHECK(maxdiff(t.P * t.T * t.P.adjoint(), B) < 1e-13);
}

TEST_CASE("staircase reduction recovers the index of defective zero eigenvalues") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = 3 + trial % 5;
    const Index k = 1 + trial % std::min<Index>(4, m - 1);
    const Index r = rng.uniform_int(0, m - k);
    const CMat A = gen_structured(m, r, k, MatrixClass::Generic, rng);
    const OrderedSchur s = schur_zero_ordered(A);
    CAPTURE(trial);
    CHECK(s.r == r);
    CHECK(s.k == k);
    CHECK(maxdiff(s.P * s.T * s.P.adjoint(), A) < 1e-10 * (1.0 + A.norm()));
  }
}

TEST_CASE("core-nilpotent unitary form") {
  SUBCASE("nilpotent 2x2") {
    const CMat A = mat({{0, 1}, {0, 0}});
    const CoreNilpotent cn = core_nilpotent(A);
    CHECK(cn.r() == 0);
    CHECK(cn.k == 2);
    CHECK(maxdiff(cn.P * cn.N * cn.P.adjoint(), A) < 1e-14);
    CHECK(strictly_upper(cn.N));
  }
  SUBCASE("random") {
    Rng rng(8);
    for (int trial = 0; trial < 25; ++trial) {
      const Index m = 2 + trial % 7;
      const Index r = rng.uniform_int(0, m - 1);
      const Index k = rng.uniform_int(1, std::min<Index>(4, m - r));
      const CMat A = gen_structured(m, r, k, MatrixClass::Generic, rng);
      const CoreNilpotent cn = core_nilpotent(A);
      CAPTURE(trial);
      CHECK(cn.r() == r);
      CHECK(cn.k == k);
      CHECK(maxdiff(cn.P.adjoint() * cn.P, CMat::Identity(m, m)) < 1e-12);
      CHECK(maxdiff(cn.reconstruct(), A) < 1e-10 * (1.0 + A.norm()));
      CHECK(strictly_upper(cn.N));
      if (r > 0) CHECK(cn.C.fullPivLu().isInvertible());
    }
  }
}

TEST_CASE("core-nilpotent similarity form") {
  const CMat A = mat({{1, 1}, {0, 0}});
  const CoreNilpotent cn = core_nilpotent(A, {}, CNForm::Similarity);
  REQUIRE(cn.r() == 1);
  CHECK(std::abs(cn.C(0, 0) - Complex(1.0)) < 1e-12);
  CHECK(cn.N.norm() < 1e-12);
  CHECK(cn.S.norm() == 0.0);
  CHECK(maxdiff(cn.Pinv * A * cn.P, diag({1, 0})) < 1e-12);

  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 3 + trial % 5;
    const Index k = 1 + trial % 3;
    const CMat B = gen_structured(m, std::max<Index>(0, m - k - trial % 2), k, MatrixClass::Generic, rng);
    const CoreNilpotent s = core_nilpotent(B, {}, CNForm::Similarity);
    CAPTURE(trial);
    CHECK(maxdiff(s.Pinv * s.P, CMat::Identity(m, m)) < 1e-9);
    CHECK(maxdiff(s.reconstruct(), B) < 1e-9 * (1.0 + B.norm()));
  }
}

TEST_CASE("Sylvester solver") {
  const CMat C = CMat::Identity(2, 2);
  const CMat N = mat({{0, 1}, {0, 0}});
  const CMat Y = sylvester_upper(C, N, CMat::Identity(2, 2));
  CHECK(maxdiff(Y, mat({{1, 1}, {0, 1}})) < 1e-14);

  Rng rng(4);
  CMat T = random_gaussian(4, 4, rng).triangularView<Eigen::Upper>();
  for (int i = 0; i < 4; ++i) T(i, i) += 3.0;
  const CMat M = random_gaussian(3, 3, rng).triangularView<Eigen::StrictlyUpper>();
  const CMat S = random_gaussian(4, 3, rng);
  const CMat X = sylvester_upper(T, M, S);
  CHECK((T * X - X * M - S).norm() < 1e-11);
}

TEST_CASE("nilpotency degree") {
  CMat J = CMat::Zero(3, 3);
  J(0, 1) = J(1, 2) = 1.0;
  CHECK(nilpotency_degree(J, 1.0) == 3);
  CHECK(nilpotency_degree(CMat::Zero(0, 0), 1.0) == 0);
}

TEST_CASE("Hartwig-Spindelboeck factors") {
  const CMat A = mat({{1, 1}, {0, 0}});
  const HSFactors hs = hartwig_spindelboeck(A);
  REQUIRE(hs.r == 1);
  CHECK(hs.sigma(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(hs.K(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(hs.L(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(maxdiff(hs.reconstruct(), A) < 1e-14);

  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 2 + trial % 6;
    const Index r = rng.uniform_int(1, m);
    const CMat B = random_gaussian(m, r, rng) * random_gaussian(r, m, rng);
    const HSFactors f = hartwig_spindelboeck(B);
    CAPTURE(trial);
    CHECK(f.r == r);
    const CMat KK = f.K * f.K.adjoint() + f.L * f.L.adjoint();
    CHECK(maxdiff(KK, CMat::Identity(r, r)) < 1e-10);
    CHECK(maxdiff(f.reconstruct(), B) < 1e-10 * (1.0 + B.norm()));
  }
}
