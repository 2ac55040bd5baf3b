#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gdstar/check.hpp"
#include "gdstar/rng.hpp"

namespace gdstar {

// Every checker below records its hypotheses (never failing on them) and
// asserts the conclusion only when all of them hold; otherwise the conclusion
// item is skipped. Witnesses must be GD inverses of their matrices
// (InvalidWitness otherwise). Products are checked with k = max of the indices.

/// (AB)^GD = B^GD A^GD under AB = BA and R(A^GD) in R(B).
CheckReport reverse_gd(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol = {});
/// (AB)^GD = A^GD B^GD under AB = BA and R(B^GD) in R(A).
CheckReport forward_gd(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol = {});

enum class TripleVariant { I, II, III, IV };

std::string_view to_string(TripleVariant v);

/// (ABC)^GD = C^GD B^GD A^GD for pairwise commuting A, B, C.
CheckReport triple_reverse_gd(const CMat& A, const CMat& B, const CMat& C, const CMat& XA, const CMat& XB,
                              const CMat& XC, TripleVariant variant, const Tolerance& tol = {});
/// (ABC)^GD = A^GD B^GD C^GD for pairwise commuting A, B, C.
CheckReport triple_forward_gd(const CMat& A, const CMat& B, const CMat& C, const CMat& XA, const CMat& XB,
                              const CMat& XC, TripleVariant variant, const Tolerance& tol = {});

/// (AB)^(GD,*) = B^(GD,*) A^(GD,*), product witness B^GD A^GD.
CheckReport reverse_gd_star(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB,
                            const Tolerance& tol = {});
/// (AB)^(GD,*) = A^(GD,*) B^(GD,*), product witness A^GD B^GD.
CheckReport forward_gd_star(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB,
                            const Tolerance& tol = {});

/// (A+B)^GD = A^GD + B^GD when AB = BA = 0 and the witnesses annihilate the
/// other matrix from both sides.
CheckReport additive_gd(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB, const Tolerance& tol = {});
/// Same with BA* = 0 added, comparing GD-star matrices.
CheckReport additive_gd_star(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB,
                             const Tolerance& tol = {});
/// If A^(GD,*) ((A*)+ + (B*)+) B^(GD,*) = A^(GD,*) + B^(GD,*), then
/// A A* B B+ = A A* and A^GD A B^GD B = B^GD B.
CheckReport additive_necessary(const CMat& A, const CMat& B, const CMat& XA, const CMat& XB,
                               const Tolerance& tol = {});

enum class LawName {
  ReverseGD,
  ForwardGD,
  TripleReverse,
  TripleForward,
  ReverseGDStar,
  ForwardGDStar,
  AdditiveGD,
  AdditiveGDStar,
  AdditiveNecessary,
};

struct LawSpec {
  LawName name = LawName::ReverseGD;
  TripleVariant variant = TripleVariant::I;  // triple laws only

  /// Matrices the law takes: 3 for triple laws, 2 otherwise.
  int arity() const;
};

/// "reverse-gd", "triple-forward:iii", ... Throws InputError.
LawSpec law_from_string(std::string_view name);
std::string to_string(const LawSpec& spec);
/// Every checker and, for the triple laws, every variant.
std::vector<LawSpec> all_laws();

struct LawInstance {
  std::vector<CMat> mats;
  std::vector<CMat> witnesses;
};

/// Dispatches to the checker; sizes must match the law's arity (ShapeError).
CheckReport run_law(const LawSpec& spec, const LawInstance& inst, const Tolerance& tol = {});

/// Structured instance aimed at the law's hypotheses. Commuting laws share a
/// unitary basis with diagonal cores and polynomial nilpotent parts; additive
/// laws use complementary diagonal blocks; additive_necessary uses B = cA.
/// Witnesses are assembled block by block from GD draws. Hypotheses are likely,
/// not guaranteed, to hold; the checker decides.
LawInstance generate_law_instance(const LawSpec& spec, Index m, Rng& rng, const Tolerance& tol = {});

}  // namespace gdstar
