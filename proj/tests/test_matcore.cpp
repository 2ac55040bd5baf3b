#include "gdstar/matcore.hpp"
#include "gdstar/oracles.hpp"
#include "support.hpp"

using namespace gdstar;
using gdstar::test::diag;
using gdstar::test::mat;
using gdstar::test::maxdiff;

TEST_CASE("rng streams are reproducible and forks differ") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng f1 = Rng(42).fork(1), f2 = Rng(42).fork(2);
  CHECK(f1.next() != f2.next());
  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("tolerance validation") {
  Tolerance t;
  CHECK_NOTHROW(t.validate());
  t.residual_rtol = 0.0;
  CHECK_THROWS_AS(t.validate(), InputError);
  t = Tolerance{};
  t.rank_rtol = 1.5;
  CHECK_THROWS_AS(t.validate(), InputError);
}

TEST_CASE("rank of a product of full-rank factors") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat G = random_gaussian(6, 3, rng);
    const CMat H = random_gaussian(3, 6, rng);
    CHECK(rank(G * H) == 3);
  }
  CHECK(rank(CMat::Zero(3, 3)) == 0);
  CHECK(rank(CMat::Identity(4, 4)) == 4);
}

TEST_CASE("index of small examples") {
  CHECK(index(mat({{0, 1}, {0, 0}})) == 2);
  CHECK(index(mat({{1, 1}, {0, 0}})) == 1);
  CHECK(index(CMat::Identity(3, 3)) == 0);
  CHECK(index(CMat::Zero(3, 3)) == 1);
  // shift matrix of size 4
  CMat J = CMat::Zero(4, 4);
  for (int i = 0; i < 3; ++i) J(i, i + 1) = 1.0;
  CHECK(index(J) == 4);
}

TEST_CASE("index agrees with the rank-sequence oracle on structured matrices") {
  Rng rng(5);
  const MatrixClass classes[] = {MatrixClass::Generic, MatrixClass::EP, MatrixClass::PartialIsometry,
                                 MatrixClass::Nilpotent};
  int n = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const MatrixClass cls = classes[trial % 4];
    const Index m = 2 + trial % 6;
    Index r = cls == MatrixClass::Nilpotent ? 0 : rng.uniform_int(0, m - 1);
    Index k = cls == MatrixClass::EP ? (r == m ? 0 : 1) : rng.uniform_int(r == m ? 0 : 1, std::min<Index>(4, m - r));
    if (cls == MatrixClass::PartialIsometry && k > 1) k = 1;
    if (r == m) k = 0;
    CMat A;
    try {
      A = gen_structured(m, r, k, cls, rng);
    } catch (const InfeasibleError&) {
      continue;
    }
    CAPTURE(trial);
    CHECK(index(A) == oracle::index_by_rank_sequence(A));
    CHECK(index(A) == k);
    if (k > 0) CHECK(oracle::power_rank(A, k) == r);
    ++n;
  }
  CHECK(n >= 40);
}

TEST_CASE("mat_pow") {
  const CMat A = mat({{1, 1}, {0, 0}});
  CHECK(maxdiff(mat_pow(A, 2), A) == 0.0);
  CHECK(maxdiff(mat_pow(A, 0), CMat::Identity(2, 2)) == 0.0);
  CHECK(maxdiff(mat_pow(mat({{0, 1}, {0, 0}}), 2), CMat::Zero(2, 2)) == 0.0);
}

TEST_CASE("approx_eq residuals") {
  const CMat I = CMat::Identity(2, 2);
  const Comparison c = approx_eq(I, 2.0 * I);
  CHECK_FALSE(c.equal);
  CHECK(c.residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const CMat A = mat({{1, 2}, {3, 4}});
  const Comparison d = approx_eq(A, A + 1e-15 * I);
  CHECK(d.equal);
  CHECK(d.residual == doctest::Approx(std::sqrt(2.0) * 1e-15).epsilon(1e-6));
  CHECK_THROWS_AS(approx_eq(A, CMat::Identity(3, 3)), ShapeError);
}

TEST_CASE("classify small examples") {
  const StructureFlags e = classify(mat({{1, 0}, {0, 0}}));
  CHECK(e.hermitian);
  CHECK(e.ep);
  CHECK(e.partial_isometry);
  CHECK(e.index == 1);

  const StructureFlags n = classify(mat({{0, 1}, {0, 0}}));
  CHECK(n.nilpotent);
  CHECK(n.partial_isometry);
  CHECK_FALSE(n.ep);
  CHECK(n.index == 2);

  const StructureFlags g = classify(mat({{1, 1}, {0, 0}}));
  CHECK_FALSE(g.ep);
  CHECK_FALSE(g.partial_isometry);
  CHECK(g.index == 1);
}

TEST_CASE("gen_structured respects rank, index and class") {
  Rng r7(7);
  const CMat A = gen_structured(4, 2, 2, MatrixClass::Generic, r7);
  CHECK(oracle::power_rank(A, 2) == 2);
  CHECK(oracle::index_by_rank_sequence(A) == 2);

  Rng r1(1);
  CHECK(rank(gen_structured(3, 3, 0, MatrixClass::Generic, r1)) == 3);

  Rng r3(3);
  const CMat E = gen_structured(2, 1, 1, MatrixClass::EP, r3);
  CHECK(classify(E).ep);

  Rng r9(9);
  const CMat P = gen_structured(6, 2, 1, MatrixClass::PartialIsometry, r9);
  CHECK(classify(P).partial_isometry);
  const CMat H = gen_structured(5, 3, 1, MatrixClass::HermitianPSD, r9);
  CHECK(classify(H).hermitian);
  const CMat N = gen_structured(5, 0, 3, MatrixClass::Nilpotent, r9);
  CHECK(classify(N).nilpotent);
  CHECK(index(N) == 3);

  CHECK_THROWS_AS(gen_structured(3, 2, 2, MatrixClass::Generic, r9), InfeasibleError);
}

TEST_CASE("random_unitary is unitary") {
  Rng rng(2);
  const CMat U = random_unitary(5, rng);
  CHECK(maxdiff(U.adjoint() * U, CMat::Identity(5, 5)) < 1e-13);
}

TEST_CASE("input guards") {
  CMat A = diag({1, 2});
  A(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(require_finite(A, "A"), InputError);
  CHECK_THROWS_AS(require_square(CMat::Zero(2, 3), "A"), ShapeError);
  CHECK_THROWS_AS(matrix_class_from_string("bogus"), InputError);
  CHECK(matrix_class_from_string("partial_isometry") == MatrixClass::PartialIsometry);
}
