#include "gdstar/orders.hpp"

#include <algorithm>
#include <array>

#include "gdstar/starfam.hpp"

namespace gdstar {

namespace {

constexpr std::array<std::pair<OrderKind, std::string_view>, 7> kOrderNames{{
    {OrderKind::Minus, "minus"},
    {OrderKind::Star, "star"},
    {OrderKind::Group, "group"},
    {OrderKind::DrazinPre, "drazin"},
    {OrderKind::GDPre, "gd"},
    {OrderKind::GDStar, "gd-star"},
    {OrderKind::DDagger, "d-dagger"},
}};

/// Left and right defining equations Y A = Y B and A Y = B Y.
void two_sided(CheckReport& rep, const std::string& label, const Tracked& A, const Tracked& B,
               const Tracked& Y, const Tolerance& tol) {
  rep.check(label + "A=" + label + "B", Y * A, Y * B, tol);
  rep.check("A" + label + "=B" + label, A * Y, B * Y, tol);
}

double worst_residual(const CheckReport& rep) { return rep.worst_relative(); }

}  // namespace

std::string_view to_string(OrderKind kind) {
  for (const auto& [k, name] : kOrderNames) {
    if (k == kind) return name;
  }
  return "star";
}

OrderKind order_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kOrderNames) {
    if (n == name) return k;
  }
  throw InputError("unknown order relation '" + std::string(name) + "'");
}

bool needs_witness(OrderKind kind) {
  return kind == OrderKind::Minus || kind == OrderKind::GDPre || kind == OrderKind::GDStar;
}

OrderResult leq(const CMat& A, const CMat& B, const OrderRelation& rel, const Tolerance& tol) {
  require_square(A, "leq");
  require_same_shape(A, B, "leq");
  if (needs_witness(rel.kind) && !rel.witness) {
    throw MissingWitness(std::string("relation '") + std::string(to_string(rel.kind)) + "' needs a witness");
  }
  if (!needs_witness(rel.kind) && rel.witness) {
    throw InputError(std::string("relation '") + std::string(to_string(rel.kind)) + "' takes no witness");
  }
  const Tracked tA(A);
  const Tracked tB(B);
  OrderResult out;
  CheckReport& rep = out.report;
  rep.suite = std::string(to_string(rel.kind));

  switch (rel.kind) {
    case OrderKind::Minus: {
      const CMat& G = *rel.witness;
      require_same_shape(A, G, "leq");
      if (!tracked_eq(tA * Tracked(G) * tA, tA, tol)) {
        throw InvalidWitness("minus order witness does not satisfy AGA = A");
      }
      two_sided(rep, "G", tA, tB, Tracked(G), tol);
      break;
    }
    case OrderKind::Star: {
      const Tracked Ad = tA.adjoint();
      rep.check("AA*=BA*", tA * Ad, tB * Ad, tol);
      rep.check("A*A=A*B", Ad * tA, Ad * tB, tol);
      break;
    }
    case OrderKind::Group: {
      CMat Ag;
      try {
        Ag = group_inverse(A, tol);
      } catch (const IndexTooLarge& e) {
        rep.check_flag("A# exists", false, 0.0, 0.0, e.what());
        break;
      }
      two_sided(rep, "A#", tA, tB, Tracked(Ag), tol);
      break;
    }
    case OrderKind::DrazinPre:
      two_sided(rep, "A^D", tA, tB, Tracked(drazin(A, tol)), tol);
      break;
    case OrderKind::GDPre:
      require_gd_witness(A, *rel.witness, tol);
      two_sided(rep, "X", tA, tB, Tracked(*rel.witness), tol);
      break;
    case OrderKind::GDStar: {
      const Tracked X(gd_star(A, *rel.witness, tol), Tracked(*rel.witness).bound * tA.bound * tA.bound);
      two_sided(rep, "X", tA, tB, X, tol);
      break;
    }
    case OrderKind::DDagger: {
      const Tracked Y = Tracked(drazin(A, tol)) * tA * Tracked(moore_penrose(A, tol));
      two_sided(rep, "A^(D,+)", tA, tB, Y, tol);
      break;
    }
  }
  out.holds = rep.overall();
  return out;
}

WitnessSearch search_gd_star_witness(const CMat& A, const CMat& B, Rng& rng, int draws, const Tolerance& tol) {
  const GDFamily fam(A, tol);
  WitnessSearch out;
  auto attempt = [&](const CMat& X) {
    ++out.tried;
    if (leq(A, B, {OrderKind::GDStar, X}, tol).holds) {
      out.found = true;
      out.witness = X;
    }
  };
  // A^D is a GD inverse only when it is also a {1}-inverse (index <= 1).
  const CMat D = fam.drazin();
  if (gd_verify(A, D, tol).overall()) attempt(D);
  for (int i = 0; i < draws && !out.found; ++i) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(i));
    attempt(fam.sample(fam.draw(sub)));
  }
  return out;
}

GDStarCanonical::GDStarCanonical(const CMat& A, const Tolerance& tol) : family_(A, tol), tol_(tol) {
  const CMat& S = family_.unitary().S;
  if (S.size() > 0 && S.norm() > tol.residual_atol + tol.residual_rtol * A.norm()) {
    throw NotApplicable("GD-star canonical form needs A unitarily similar to diag(C, N); coupling block has norm " +
                        std::to_string(S.norm()));
  }
}

CheckReport GDStarCanonical::test(const CMat& B, const CMat& witness) const {
  const CMat& A = family_.matrix();
  require_same_shape(A, B, "GDStarCanonical::test");
  require_gd_witness(A, witness, tol_);
  const Index r = family_.core_size();
  const Index s = family_.nil_size();
  const CMat& Pm = P();
  const CMat Bt = Pm.adjoint() * B * Pm;
  const CMat Xt = Pm.adjoint() * witness * Pm;
  const Tracked B1(Bt.topLeftCorner(r, r)), B2(Bt.topRightCorner(r, s)), B3(Bt.bottomLeftCorner(s, r)),
      B4(Bt.bottomRightCorner(s, s));
  const Tracked tC(C());
  const Tracked tN(N());
  const Tracked Nm(Xt.bottomRightCorner(s, s));

  CheckReport rep;
  rep.suite = "gd-star-canonical";
  rep.check("B1=C", B1, tC, tol_);
  rep.record("B1=C* [as printed]", B1, tC.adjoint(), "the corner block is C, not C*");
  rep.check_zero("B2=0", B2, tol_);
  rep.check_zero("B3=0", B3, tol_);
  rep.check("B4N^-N=N", B4 * Nm * tN, tN, tol_);
  rep.check("N*B4=N*N", tN.adjoint() * B4, tN.adjoint() * tN, tol_);
  return rep;
}

CMat GDStarCanonical::generate(const GDParams& params, Rng& rng) const {
  const Index r = family_.core_size();
  const Index s = family_.nil_size();
  const CMat& Nb = N();
  const CMat Nm = family_.nilpotent_inverse(params);
  const CMat Np = moore_penrose(Nb, tol_);
  const CMat I = CMat::Identity(s, s);
  const CMat R = random_gaussian(s, s, rng);
  CMat middle = CMat::Zero(r + s, r + s);
  middle.topLeftCorner(r, r) = C();
  middle.bottomRightCorner(s, s) = Nb + (I - Nb * Np) * R * (I - Nm * Nb);
  return P() * middle * P().adjoint();
}

CheckReport order_theorem_suite(const CMat& A, const CMat& B, const CMat& C, const OrderWitnesses& w,
                                const Tolerance& tol) {
  require_square(A, "order_theorem_suite");
  require_same_shape(A, B, "order_theorem_suite");
  require_same_shape(A, C, "order_theorem_suite");
  require_gd_witness(A, w.A, tol);
  require_gd_witness(B, w.B, tol);

  CheckReport rep;
  rep.suite = "orders";
  const Tracked tA(A), tB(B), tC(C), XA(w.A), XB(w.B);
  const Tracked Ad = tA.adjoint();
  const Tracked Ap(moore_penrose(A, tol));
  const Index k = index(A, tol);
  const Tracked Ak = tracked_pow(tA, k);
  const Tracked AD(drazin(A, tol));
  const Tracked Xs = XA * tA * Ad;

  const OrderResult self = leq(A, A, {OrderKind::GDStar, w.A}, tol);
  rep.check_flag("reflexive", self.holds, worst_residual(self.report), 1.0);

  const OrderResult ab = leq(A, B, {OrderKind::GDStar, w.A}, tol);
  const OrderResult ba = leq(B, A, {OrderKind::GDStar, w.B}, tol);
  if (ab.holds && ba.holds) {
    rep.check("antisymmetric: A=B", tA, tB, tol);
  } else {
    rep.skip("antisymmetric: A=B", "A and B are not mutually below each other");
  }

  const OrderResult bc = leq(B, C, {OrderKind::GDStar, w.B}, tol);
  if (ab.holds && bc.holds) {
    rep.check("transitive-like: XsA=XsC XB B", Xs * tA, Xs * tC * XB * tB, tol);
    rep.check("transitive-like: AXs=C XB B Xs", tA * Xs, tC * XB * tB * Xs, tol);
  } else {
    rep.skip("transitive-like", "A <= B <= C does not hold");
  }

  if (ab.holds) {
    rep.check("consequence (i) A*A=A*B", Ad * tA, Ad * tB, tol);
    rep.check("consequence (ii) A=AA+B", tA, tA * Ap * tB, tol);
    rep.check("consequence (iii) A^(k+1)=BA^k", Ak * tA, tB * Ak, tol);
    rep.check("consequence (iv) AA^D=BA^D", tA * AD, tB * AD, tol);
    const OrderResult dd = leq(A, B, {OrderKind::DDagger, std::nullopt}, tol);
    rep.check_flag("consequence (v) A <=_D^+ B", dd.holds, worst_residual(dd.report), 1.0);
    const Tracked Y = XA * tA * Ap;
    rep.check("consequence (vi) YA=YB", Y * tA, Y * tB, tol);
    rep.check("consequence (vi) BY=AY", tB * Y, tA * Y, tol);
  } else {
    rep.skip("consequences (i)-(vi)", "A is not below B under the GD-star order");
  }

  const bool star = leq(A, B, {OrderKind::Star, std::nullopt}, tol).holds;
  const bool minus = leq(A, B, {OrderKind::Minus, w.A}, tol).holds;
  const bool gd = leq(A, B, {OrderKind::GDPre, w.A}, tol).holds;
  if (minus && star) {
    rep.check_flag("minus and star => GD-star", ab.holds, worst_residual(ab.report), 1.0);
  } else {
    rep.skip("minus and star => GD-star", "hypotheses fail");
  }
  if (gd && star) {
    rep.check_flag("GD and star => GD-star", ab.holds, worst_residual(ab.report), 1.0);
  } else {
    rep.skip("GD and star => GD-star", "hypotheses fail");
  }
  if (gd) {
    const OrderResult dz = leq(A, B, {OrderKind::DrazinPre, std::nullopt}, tol);
    rep.check_flag("GD => Drazin", dz.holds, worst_residual(dz.report), 1.0);
  } else {
    rep.skip("GD => Drazin", "A is not below B under the GD pre-order");
  }
  return rep;
}

CheckReport ind1_equivalence_suite(const CMat& A, const CMat& B, const CMat& Xgd, const Tolerance& tol) {
  require_square(A, "ind1_equivalence_suite");
  require_same_shape(A, B, "ind1_equivalence_suite");
  const Index k = index(A, tol);
  if (k != 1) throw HypothesisViolated("ind1_equivalence_suite: index(A) = " + std::to_string(k) + ", need 1");
  const Tracked tA(A), tB(B);
  if (!tracked_eq(tA * tB, tB * tA, tol)) throw HypothesisViolated("ind1_equivalence_suite: AB != BA");
  require_gd_witness(A, Xgd, tol);

  const Tracked G(Xgd);
  const Tracked Ad = tA.adjoint();
  const Tracked Ap(moore_penrose(A, tol));
  const Tracked Xs = G * tA * Ad;
  const Tracked A2 = tA * tA;

  CheckReport rep;
  rep.suite = "ind1";
  auto eval = [&](const std::string& name, const Tracked& l, const Tracked& r) {
    return rep.hypothesis(name, l, r, tol);
  };

  std::array<bool, 5> c{};
  {
    const bool e1 = eval("(i) XsA=XsB", Xs * tA, Xs * tB);
    const bool e2 = eval("(i) AXs=BXs", tA * Xs, tB * Xs);
    c[0] = e1 && e2;
  }
  {
    const bool e1 = eval("(ii) XgdAA*=XsBA+", G * tA * Ad, Xs * tB * Ap);
    const bool e2 = eval("(ii) A=BXgdA", tA, tB * G * tA);
    c[1] = e1 && e2;
  }
  {
    const bool e1 = eval("(iii) AA*=AA*BA+", tA * Ad, tA * Ad * tB * Ap);
    const bool e2 = eval("(iii) A^2=BA", A2, tB * tA);
    c[2] = e1 && e2;
  }
  {
    const bool e1 = eval("(iv) A*=A*BA+", Ad, Ad * tB * Ap);
    const bool e2 = eval("(iv) A^2=BA", A2, tB * tA);
    c[3] = e1 && e2;
  }
  {
    const CMat M = A.adjoint() * B;
    const Tracked P1 = Ap * tA;
    const Tracked P2(M * moore_penrose(M, tol));
    const bool e1 = eval("(v) R(A*)=R(A*B)", P1, P2);
    const bool e2 = eval("(v) A^2=BA", A2, tB * tA);
    c[4] = e1 && e2;
  }

  const bool all_true = std::all_of(c.begin(), c.end(), [](bool b) { return b; });
  const bool all_false = std::none_of(c.begin(), c.end(), [](bool b) { return b; });
  std::string pattern;
  for (std::size_t i = 0; i < c.size(); ++i) pattern += c[i] ? 'T' : 'F';
  rep.check_flag("equivalence", all_true || all_false, 0.0, 0.0, "conditions (i)-(v): " + pattern);
  if (!(all_true || all_false)) {
    rep.findings.push_back("ind-1 equivalence counterexample: conditions (i)-(v) evaluate to " + pattern);
  }
  return rep;
}

}  // namespace gdstar
