#include "gdstar/laws.hpp"

#include <algorithm>
#include <array>

#include "gdstar/geninv.hpp"

namespace gdstar {

namespace {

Tracked projector(const CMat& Y, const Tolerance& tol) { return Tracked(CMat(Y * moore_penrose(Y, tol))); }

/// R(X) in R(Y) as Y Y+ X = X.
bool contained(CheckReport& rep, const std::string& name, const CMat& X, const CMat& Y, const Tolerance& tol) {
  return rep.hypothesis(name, projector(Y, tol) * Tracked(X), Tracked(X), tol);
}

bool commute(CheckReport& rep, const std::string& name, const Tracked& X, const Tracked& Y, const Tolerance& tol) {
  return rep.hypothesis(name, X * Y, Y * X, tol);
}

/// Asserts that X is a GD inverse of M when the hypotheses hold; a failure
/// under passing hypotheses is also written to findings.
void conclude_gd(CheckReport& rep, const std::string& label, const CMat& M, const CMat& X, Index k, bool hyp,
                 const Tolerance& tol) {
  if (!hyp) {
    rep.skip(label, "hypotheses violated");
    return;
  }
  const CheckReport g = gd_verify(M, X, tol, k);
  rep.merge(g, label + ": ");
  if (!g.overall()) {
    rep.findings.push_back(label + " fails although every hypothesis holds (worst relative residual " +
                           std::to_string(g.worst_relative()) + ")");
  }
}

void conclude(CheckReport& rep, const std::string& label, const Tracked& L, const Tracked& R, bool hyp,
              const Tolerance& tol) {
  if (!hyp) {
    rep.skip(label, "hypotheses violated");
    return;
  }
  const CheckItem& it = rep.check(label, L, R, tol);
  if (it.status == Status::Fail) {
    rep.findings.push_back(label + " fails although every hypothesis holds (relative residual " +
                           std::to_string(it.relative()) + ")");
  }
}

void require_pair(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const char* what,
                  const Tolerance& tol) {
  require_square(A, what);
  require_same_shape(A, B, what);
  require_gd_witness(A, XA, tol);
  require_gd_witness(B, XB, tol);
}

Tracked star_of(const Tracked& X, const Tracked& A) { return X * A * A.adjoint(); }

CheckReport pair_law(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, bool reverse, bool star,
                     const Tolerance& tol) {
  const char* what = reverse ? "reverse law" : "forward law";
  require_pair(A, B, XA, XB, what, tol);
  const Index k = std::max(index(A, tol), index(B, tol));
  const Tracked tA(A), tB(B), tXA(XA), tXB(XB);

  CheckReport rep;
  rep.suite = std::string(reverse ? "reverse" : "forward") + (star ? "-gd-star" : "-gd");
  bool hyp = commute(rep, "AB=BA", tA, tB, tol);
  if (reverse) {
    hyp = contained(rep, "R(A^GD) in R(B)", XA, B, tol) && hyp;
    if (star) hyp = rep.hypothesis("A^GD A B B* = B B* A^GD A", tXA * tA * tB * tB.adjoint(),
                                   tB * tB.adjoint() * tXA * tA, tol) && hyp;
  } else {
    hyp = contained(rep, "R(B^GD) in R(A)", XB, A, tol) && hyp;
    if (star) hyp = rep.hypothesis("B^GD B A A* = A A* B^GD B", tXB * tB * tA * tA.adjoint(),
                                   tA * tA.adjoint() * tXB * tB, tol) && hyp;
  }

  const Tracked AB = tA * tB;
  const Tracked X = reverse ? tXB * tXA : tXA * tXB;
  const std::string gd_label = reverse ? "(AB)^GD=B^GD A^GD" : "(AB)^GD=A^GD B^GD";
  conclude_gd(rep, gd_label, AB.m, X.m, k, hyp, tol);
  if (star) {
    const Tracked rhs = reverse ? star_of(tXB, tB) * star_of(tXA, tA) : star_of(tXA, tA) * star_of(tXB, tB);
    conclude(rep, reverse ? "(AB)^(GD,*)=B^(GD,*)A^(GD,*)" : "(AB)^(GD,*)=A^(GD,*)B^(GD,*)", star_of(X, AB), rhs,
             hyp, tol);
  }
  return rep;
}

CheckReport triple_law(const CMat& A, const CMat& B, const CMat& C, const CMat& XA, const CMat& XB, const CMat& XC,
                       TripleVariant v, bool reverse, const Tolerance& tol) {
  require_pair(A, B, XA, XB, "triple law", tol);
  require_same_shape(A, C, "triple law");
  require_gd_witness(C, XC, tol);
  const Index k = std::max({index(A, tol), index(B, tol), index(C, tol)});
  const Tracked tA(A), tB(B), tC(C), tXA(XA), tXB(XB), tXC(XC);

  CheckReport rep;
  rep.suite = std::string(reverse ? "triple-reverse:" : "triple-forward:") + std::string(to_string(v));
  bool hyp = commute(rep, "AB=BA", tA, tB, tol);
  hyp = commute(rep, "BC=CB", tB, tC, tol) && hyp;
  hyp = commute(rep, "AC=CA", tA, tC, tol) && hyp;

  const Tracked BC = tB * tC;
  const Tracked AB = tA * tB;
  auto xa_bc = [&] { return commute(rep, "A^GD BC=BC A^GD", tXA, BC, tol); };
  auto xc_ab = [&] { return commute(rep, "C^GD AB=AB C^GD", tXC, AB, tol); };
  switch (v) {
    case TripleVariant::I:
      hyp = (reverse ? contained(rep, "R(B^GD B) in R(C)", XB * B, C, tol)
                     : contained(rep, "R(C^GD C) in R(B)", XC * C, B, tol)) && hyp;
      hyp = xa_bc() && hyp;
      break;
    case TripleVariant::II:
      hyp = (reverse ? contained(rep, "R(A^GD A) in R(B)", XA * A, B, tol)
                     : contained(rep, "R(B^GD B) in R(A)", XB * B, A, tol)) && hyp;
      hyp = xc_ab() && hyp;
      break;
    case TripleVariant::III:
      hyp = xc_ab() && hyp;
      hyp = rep.hypothesis("A^GD AB=B A^GD A", tXA * AB, tB * tXA * tA, tol) && hyp;
      break;
    case TripleVariant::IV:
      hyp = xa_bc() && hyp;
      hyp = rep.hypothesis("C C^GD B=B C C^GD", tC * tXC * tB, tB * tC * tXC, tol) && hyp;
      break;
  }

  const CMat X = reverse ? CMat(XC * XB * XA) : CMat(XA * XB * XC);
  conclude_gd(rep, reverse ? "(ABC)^GD=C^GD B^GD A^GD" : "(ABC)^GD=A^GD B^GD C^GD", A * B * C, X, k, hyp, tol);
  return rep;
}

CheckReport additive(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, bool star,
                     const Tolerance& tol) {
  require_pair(A, B, XA, XB, "additive law", tol);
  const Index k = std::max(index(A, tol), index(B, tol));
  const Index m = A.rows();
  const Tracked tA(A), tB(B), tXA(XA), tXB(XB);
  const Tracked Z = Tracked::zero(m, m);

  CheckReport rep;
  rep.suite = star ? "additive-gd-star" : "additive-gd";
  bool hyp = rep.hypothesis("AB=0", tA * tB, Z, tol);
  hyp = rep.hypothesis("BA=0", tB * tA, Z, tol) && hyp;
  if (star) hyp = rep.hypothesis("BA*=0", tB * tA.adjoint(), Z, tol) && hyp;
  hyp = rep.hypothesis("A^GD B=0", tXA * tB, Z, tol) && hyp;
  hyp = rep.hypothesis("B A^GD=0", tB * tXA, Z, tol) && hyp;
  hyp = rep.hypothesis("B^GD A=0", tXB * tA, Z, tol) && hyp;
  hyp = rep.hypothesis("A B^GD=0", tA * tXB, Z, tol) && hyp;

  const Tracked S = tA + tB;
  const Tracked X = tXA + tXB;
  conclude_gd(rep, "(A+B)^GD=A^GD+B^GD", S.m, X.m, k, hyp, tol);
  if (star) {
    conclude(rep, "(A+B)^(GD,*)=A^(GD,*)+B^(GD,*)", star_of(X, S), star_of(tXA, tA) + star_of(tXB, tB), hyp, tol);
  }
  return rep;
}

void require_size(const LawInstance& inst, int n) {
  if (static_cast<int>(inst.mats.size()) != n || static_cast<int>(inst.witnesses.size()) != n) {
    throw ShapeError("law needs " + std::to_string(n) + " matrices and " + std::to_string(n) + " witnesses");
  }
}

constexpr std::array<std::pair<LawName, std::string_view>, 9> kLawNames{{
    {LawName::ReverseGD, "reverse-gd"},
    {LawName::ForwardGD, "forward-gd"},
    {LawName::TripleReverse, "triple-reverse"},
    {LawName::TripleForward, "triple-forward"},
    {LawName::ReverseGDStar, "reverse-gd-star"},
    {LawName::ForwardGDStar, "forward-gd-star"},
    {LawName::AdditiveGD, "additive-gd"},
    {LawName::AdditiveGDStar, "additive-gd-star"},
    {LawName::AdditiveNecessary, "additive-necessary"},
}};

constexpr std::array<std::pair<TripleVariant, std::string_view>, 4> kVariantNames{{
    {TripleVariant::I, "i"},
    {TripleVariant::II, "ii"},
    {TripleVariant::III, "iii"},
    {TripleVariant::IV, "iv"},
}};

bool is_triple(LawName n) { return n == LawName::TripleReverse || n == LawName::TripleForward; }

// ---- generators ----

Complex random_scalar(Rng& rng) {
  const double mag = rng.uniform(0.5, 2.0);
  const double phase = rng.uniform(-3.14159, 3.14159);
  return std::polar(mag, phase);
}

/// Random matrix of size n with random core size and index.
CMat random_block(Index n, Rng& rng) {
  const Index r = rng.uniform_int(0, n);
  if (r == n) return gen_structured(n, n, 0, MatrixClass::Generic, rng);
  const Index k = rng.uniform_int(1, std::min<Index>(n - r, 4));
  return gen_structured(n, r, k, r == 0 ? MatrixClass::Nilpotent : MatrixClass::Generic, rng);
}

CMat witness_for(const CMat& A, Rng& rng, const Tolerance& tol) {
  const GDFamily fam(A, tol);
  if (rng.uniform(0.0, 1.0) < 0.3) return fam.canonical();
  return fam.sample(fam.draw(rng));
}

/// Pairwise commuting matrices U diag(M_1, ..., M_b) U*. Size-1 blocks are
/// scalars; each larger block has one owner whose entry is c0 I + c1 J + c2 J^2
/// for a nilpotent J, while the other matrices are scalars there. Witnesses
/// are assembled block by block, which keeps them GD inverses.
LawInstance commuting_family(Index m, int count, Rng& rng, const Tolerance& tol) {
  std::vector<CMat> mats(count, CMat::Zero(m, m));
  std::vector<CMat> wits(count, CMat::Zero(m, m));
  Index at = 0;
  while (at < m) {
    const Index left = m - at;
    Index size = 1;
    int owner = -1;
    if (left >= 2 && rng.uniform(0.0, 1.0) < 0.4) {
      size = rng.uniform_int(2, std::min<Index>(left, 4));
      owner = static_cast<int>(rng.uniform_int(0, count - 1));
    }
    const CMat I = CMat::Identity(size, size);
    const CMat J = owner >= 0 ? gen_structured(size, 0, size, MatrixClass::Nilpotent, rng) : CMat(CMat::Zero(1, 1));
    for (int j = 0; j < count; ++j) {
      CMat blk, wit;
      if (j == owner) {
        const Complex c0 = rng.uniform(0.0, 1.0) < 0.6 ? Complex(0.0) : random_scalar(rng);
        blk = c0 * I + random_scalar(rng) * J + random_scalar(rng) * J * J;
        wit = c0 != Complex(0.0) ? CMat(blk.inverse()) : witness_for(blk, rng, tol);
      } else {
        const Complex c = rng.uniform(0.0, 1.0) < 0.3 ? Complex(0.0) : random_scalar(rng);
        blk = c * I;
        if (c != Complex(0.0)) {
          wit = I / c;
        } else {
          // any matrix is a GD inverse of a zero block
          const double u = rng.uniform(0.0, 1.0);
          wit = u < 0.5 ? CMat(CMat::Zero(size, size)) : u < 0.85 ? CMat(random_scalar(rng) * I)
                                                                   : random_gaussian(size, size, rng);
        }
      }
      mats[j].block(at, at, size, size) = blk;
      wits[j].block(at, at, size, size) = wit;
    }
    at += size;
  }
  const CMat U = random_unitary(m, rng);
  LawInstance inst;
  for (int j = 0; j < count; ++j) {
    inst.mats.push_back(U * mats[j] * U.adjoint());
    inst.witnesses.push_back(U * wits[j] * U.adjoint());
  }
  return inst;
}

}  // namespace

std::string_view to_string(TripleVariant v) {
  for (const auto& [k, n] : kVariantNames) {
    if (k == v) return n;
  }
  return "i";
}

CheckReport reverse_gd(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol) {
  return pair_law(A, B, XA, XB, true, false, tol);
}

CheckReport forward_gd(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol) {
  return pair_law(A, B, XA, XB, false, false, tol);
}

CheckReport reverse_gd_star(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol) {
  return pair_law(A, B, XA, XB, true, true, tol);
}

CheckReport forward_gd_star(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol) {
  return pair_law(A, B, XA, XB, false, true, tol);
}

CheckReport triple_reverse_gd(const CMat& A, const CMat& B, const CMat& C, const CMat& XA, const CMat& XB,
                              const CMat& XC, TripleVariant variant, const Tolerance& tol) {
  return triple_law(A, B, C, XA, XB, XC, variant, true, tol);
}

CheckReport triple_forward_gd(const CMat& A, const CMat& B, const CMat& C, const CMat& XA, const CMat& XB,
                              const CMat& XC, TripleVariant variant, const Tolerance& tol) {
  return triple_law(A, B, C, XA, XB, XC, variant, false, tol);
}

CheckReport additive_gd(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol) {
  return additive(A, B, XA, XB, false, tol);
}

CheckReport additive_gd_star(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol) {
  return additive(A, B, XA, XB, true, tol);
}

CheckReport additive_necessary(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB,
                               const Tolerance& tol) {
  require_pair(A, B, XA, XB, "additive_necessary", tol);
  const Tracked tA(A), tB(B), tXA(XA), tXB(XB);
  const Tracked SA = star_of(tXA, tA);
  const Tracked SB = star_of(tXB, tB);
  const Tracked ApS(CMat(moore_penrose(A, tol).adjoint()));
  const Tracked BpS(CMat(moore_penrose(B, tol).adjoint()));

  CheckReport rep;
  rep.suite = "additive-necessary";
  const bool hyp = rep.hypothesis("A^(GD,*)((A*)+ + (B*)+)B^(GD,*)=A^(GD,*)+B^(GD,*)", SA * (ApS + BpS) * SB,
                                  SA + SB, tol);
  const Tracked Ad = tA.adjoint();
  conclude(rep, "(i) AA*BB+=AA*", tA * Ad * tB * Tracked(moore_penrose(B, tol)), tA * Ad, hyp, tol);
  conclude(rep, "(ii) A^GD A B^GD B=B^GD B", tXA * tA * tXB * tB, tXB * tB, hyp, tol);
  return rep;
}

int LawSpec::arity() const { return is_triple(name) ? 3 : 2; }

LawSpec law_from_string(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view base = text.substr(0, colon);
  LawSpec spec;
  bool found = false;
  for (const auto& [k, n] : kLawNames) {
    if (n == base) {
      spec.name = k;
      found = true;
    }
  }
  if (!found) throw InputError("unknown law '" + std::string(text) + "'");
  if (is_triple(spec.name)) {
    if (colon == std::string_view::npos) {
      throw InputError("law '" + std::string(text) + "' needs a variant suffix :i, :ii, :iii or :iv");
    }
    const std::string_view var = text.substr(colon + 1);
    found = false;
    for (const auto& [k, n] : kVariantNames) {
      if (n == var) {
        spec.variant = k;
        found = true;
      }
    }
    if (!found) throw InputError("unknown triple-law variant '" + std::string(var) + "'");
  } else if (colon != std::string_view::npos) {
    throw InputError("law '" + std::string(base) + "' takes no variant");
  }
  return spec;
}

std::string to_string(const LawSpec& spec) {
  std::string out;
  for (const auto& [k, n] : kLawNames) {
    if (k == spec.name) out = n;
  }
  if (is_triple(spec.name)) out += ":" + std::string(to_string(spec.variant));
  return out;
}

std::vector<LawSpec> all_laws() {
  std::vector<LawSpec> out;
  for (const auto& [k, n] : kLawNames) {
    if (is_triple(k)) {
      for (const auto& [v, vn] : kVariantNames) out.push_back({k, v});
    } else {
      out.push_back({k, TripleVariant::I});
    }
  }
  return out;
}

CheckReport run_law(const LawSpec& spec, const LawInstance& inst, const Tolerance& tol) {
  require_size(inst, spec.arity());
  const auto& M = inst.mats;
  const auto& X = inst.witnesses;
  switch (spec.name) {
    case LawName::ReverseGD: return reverse_gd(M[0], M[1], X[0], X[1], tol);
    case LawName::ForwardGD: return forward_gd(M[0], M[1], X[0], X[1], tol);
    case LawName::TripleReverse: return triple_reverse_gd(M[0], M[1], M[2], X[0], X[1], X[2], spec.variant, tol);
    case LawName::TripleForward: return triple_forward_gd(M[0], M[1], M[2], X[0], X[1], X[2], spec.variant, tol);
    case LawName::ReverseGDStar: return reverse_gd_star(M[0], M[1], X[0], X[1], tol);
    case LawName::ForwardGDStar: return forward_gd_star(M[0], M[1], X[0], X[1], tol);
    case LawName::AdditiveGD: return additive_gd(M[0], M[1], X[0], X[1], tol);
    case LawName::AdditiveGDStar: return additive_gd_star(M[0], M[1], X[0], X[1], tol);
    case LawName::AdditiveNecessary: return additive_necessary(M[0], M[1], X[0], X[1], tol);
  }
  return {};
}

LawInstance generate_law_instance(const LawSpec& spec, Index m, Rng& rng, const Tolerance& tol) {
  if (m < 2) throw InputError("law instances need size >= 2");
  LawInstance inst;
  switch (spec.name) {
    case LawName::AdditiveGD:
    case LawName::AdditiveGDStar: {
      const Index r = rng.uniform_int(1, m - 1);
      const CMat U = random_unitary(m, rng);
      const CMat A1 = random_block(r, rng);
      const CMat B2 = random_block(m - r, rng);
      CMat A = CMat::Zero(m, m), B = CMat::Zero(m, m), XA = CMat::Zero(m, m), XB = CMat::Zero(m, m);
      A.topLeftCorner(r, r) = A1;
      B.bottomRightCorner(m - r, m - r) = B2;
      XA.topLeftCorner(r, r) = witness_for(A1, rng, tol);
      XB.bottomRightCorner(m - r, m - r) = witness_for(B2, rng, tol);
      inst.mats = {U * A * U.adjoint(), U * B * U.adjoint()};
      inst.witnesses = {U * XA * U.adjoint(), U * XB * U.adjoint()};
      break;
    }
    case LawName::AdditiveNecessary: {
      const CMat A = random_block(m, rng);
      const Complex c = random_scalar(rng);
      const CMat XA = witness_for(A, rng, tol);
      const CMat B = c * A;
      const CMat XB = rng.uniform(0.0, 1.0) < 0.7 ? CMat(XA / c) : witness_for(B, rng, tol);
      inst.mats = {A, B};
      inst.witnesses = {XA, XB};
      break;
    }
    default: {
      inst = commuting_family(m, spec.arity(), rng, tol);
      break;
    }
  }
  return inst;
}

}  // namespace gdstar
