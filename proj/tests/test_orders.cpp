#include "gdstar/orders.hpp"
#include "gdstar/starfam.hpp"
#include "support.hpp"

using namespace gdstar;
using gdstar::test::diag;
using gdstar::test::mat;
using gdstar::test::maxdiff;

namespace {

bool holds(const CMat& A, const CMat& B, OrderKind kind, std::optional<CMat> w = std::nullopt) {
  return leq(A, B, {kind, std::move(w)}).holds;
}

/// Unitarily block-diagonal A = P diag(C, N) P* with random core and nilpotent blocks.
CMat block_diagonal(Index m, Index r, Index k, Rng& rng) {
  const CMat P = random_unitary(m, rng);
  CMat T = CMat::Zero(m, m);
  T.topLeftCorner(r, r) = random_gaussian(r, r, rng) + 3.0 * CMat::Identity(r, r);
  for (Index i = r; i + 1 < r + k; ++i) T(i, i + 1) = 1.0;
  return P * T * P.adjoint();
}

}  // namespace

TEST_CASE("order names round-trip") {
  for (const char* name : {"minus", "star", "group", "drazin", "gd", "gd-star", "d-dagger"}) {
    CHECK(to_string(order_kind_from_string(name)) == name);
  }
  CHECK_THROWS_AS(order_kind_from_string("sharp"), InputError);
  CHECK(needs_witness(OrderKind::Minus));
  CHECK(needs_witness(OrderKind::GDStar));
  CHECK_FALSE(needs_witness(OrderKind::Star));
}

TEST_CASE("diagonal pair under every order") {
  const CMat A = diag({1, 0});
  const CMat B = diag({1, 5});
  const CMat W = diag({1, 0});
  CHECK(holds(A, B, OrderKind::GDStar, W));
  CHECK(holds(A, B, OrderKind::Star));
  CHECK(holds(A, B, OrderKind::Minus, W));
  CHECK(holds(A, B, OrderKind::Group));
  CHECK(holds(A, B, OrderKind::DrazinPre));
  CHECK(holds(A, B, OrderKind::GDPre, W));
  CHECK(holds(A, B, OrderKind::DDagger));
  CHECK_FALSE(holds(B, A, OrderKind::Star));
  CHECK_FALSE(holds(diag({2, 0}), B, OrderKind::Star));
}

TEST_CASE("witness handling") {
  const CMat A = diag({1, 0});
  CHECK_THROWS_AS(leq(A, A, {OrderKind::GDStar, std::nullopt}), MissingWitness);
  CHECK_THROWS_AS(leq(A, A, {OrderKind::Star, A}), InputError);
  CHECK_THROWS_AS(leq(A, A, {OrderKind::GDStar, CMat::Zero(2, 2)}), InvalidWitness);
  CHECK_THROWS_AS(leq(A, A, {OrderKind::Minus, CMat::Zero(2, 2)}), InvalidWitness);
  CHECK_THROWS_AS(leq(A, CMat::Identity(3, 3), {OrderKind::Star, std::nullopt}), ShapeError);
}

TEST_CASE("group order needs index one") {
  const CMat N = mat({{0, 1}, {0, 0}});
  const OrderResult r = leq(N, N, {OrderKind::Group, std::nullopt});
  CHECK_FALSE(r.holds);
  CHECK_FALSE(r.report.passed("A# exists"));
}

TEST_CASE("canonical GD-star pairs") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 3 + trial % 5;
    const Index k = 1 + trial % 3;
    const Index r = std::max<Index>(0, m - k - (trial % 2));
    const CMat A = block_diagonal(m, r, std::min(k, m - r), rng);
    const GDStarCanonical canon(A);
    const GDParams p = canon.family().draw(rng);
    const CMat X = canon.witness(p);
    const CMat B = canon.generate(p, rng);
    CAPTURE(trial);
    CHECK(holds(A, B, OrderKind::GDStar, X));
    CHECK(canon.test(B, X).overall());

    CMat Bp = B;
    // couple the core to the nilpotent part
    const CMat Pm = canon.P();
    CMat off = CMat::Zero(m, m);
    if (r > 0 && r < m) {
      off(0, m - 1) = 1e-3;
      Bp = B + Pm * off * Pm.adjoint();
      CHECK_FALSE(holds(A, Bp, OrderKind::GDStar, X));
      CHECK_FALSE(canon.test(Bp, X).overall());
    }
  }
}

TEST_CASE("canonical form rejects a nonzero coupling block") {
  CHECK_THROWS_AS(GDStarCanonical(mat({{1, 1}, {0, 0}})), NotApplicable);
}

TEST_CASE("theorem suite on constructed pairs") {
  Rng rng(9);
  int consequences = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = 3 + trial % 4;
    const Index k = 1 + trial % 2;
    const Index r = m - k - 1;
    const CMat A = block_diagonal(m, r, k, rng);
    const GDStarCanonical canon(A);
    const GDParams p = canon.family().draw(rng);
    const CMat XA = canon.witness(p);
    const CMat B = canon.generate(p, rng);
    const GDFamily fb(B);
    const CMat XB = fb.sample(fb.draw(rng));
    const CheckReport rep = order_theorem_suite(A, B, B, {XA, XB});
    CAPTURE(trial);
    CHECK(rep.overall());
    if (rep.passed("consequence (i) A*A=A*B")) ++consequences;
  }
  CHECK(consequences == 30);
}

TEST_CASE("minus and star together give GD-star") {
  // B = A + (I - AA+) R (I - A+A); the canonical witness P diag(C^-1, N+) P* is
  // then a minus witness as well
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 4 + trial % 3;
    const Index k = 1 + trial % 2;
    const CMat A = block_diagonal(m, m - k - 1, k, rng);
    const CMat Ap = moore_penrose(A);
    const CMat I = CMat::Identity(m, m);
    const CMat B = A + (I - A * Ap) * random_gaussian(m, m, rng) * (I - Ap * A);
    const CMat X = GDFamily(A).canonical();
    CAPTURE(trial);
    REQUIRE(holds(A, B, OrderKind::Star));
    REQUIRE(holds(A, B, OrderKind::Minus, X));
    CHECK(holds(A, B, OrderKind::GDStar, X));
  }
}

TEST_CASE("witness search") {
  const CMat A = diag({1, 0});
  Rng rng(1);
  const WitnessSearch ws = search_gd_star_witness(A, CMat::Identity(2, 2), rng);
  CHECK(ws.found);
  CHECK(holds(A, CMat::Identity(2, 2), OrderKind::GDStar, ws.witness));
  const WitnessSearch no = search_gd_star_witness(CMat::Identity(2, 2), A, rng, 5);
  CHECK_FALSE(no.found);
  CHECK(no.tried >= 5);
}

TEST_CASE("index-one equivalence") {
  SUBCASE("all five hold") {
    const CheckReport rep = ind1_equivalence_suite(diag({1, 0}), diag({1, 3}), diag({1, 0}));
    CHECK(rep.overall());
    CHECK(rep.count(Status::Fail) == 0);
  }
  SUBCASE("all five fail together") {
    const CheckReport rep = ind1_equivalence_suite(diag({1, 0}), diag({2, 0}), diag({1, 0}));
    CHECK(rep.overall());
    CHECK(rep.passed("equivalence"));
  }
  SUBCASE("hypotheses enforced") {
    CHECK_THROWS_AS(ind1_equivalence_suite(mat({{0, 1}, {0, 0}}), CMat::Identity(2, 2), mat({{0, 0}, {1, 0}})),
                    HypothesisViolated);
    CHECK_THROWS_AS(ind1_equivalence_suite(diag({1, 0}), mat({{1, 1}, {0, 1}}), diag({1, 0})), HypothesisViolated);
  }
  SUBCASE("non-EP counterexample") {
    // B commutes with A; the conditions disagree, so the claimed equivalence fails
    const CMat A = mat({{1, 1}, {0, 0}});
    const CMat B = 0.5 * CMat::Identity(2, 2) + 0.5 * A;
    const CheckReport rep = ind1_equivalence_suite(A, B, mat({{1, 0}, {0, 1}}));
    CHECK_FALSE(rep.overall());
    CHECK_FALSE(rep.findings.empty());
  }
}
