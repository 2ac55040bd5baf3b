#pragma once

#include <optional>
#include <string_view>

#include "gdstar/check.hpp"
#include "gdstar/geninv.hpp"

namespace gdstar {

enum class OrderKind { Minus, Star, Group, DrazinPre, GDPre, GDStar, DDagger };

std::string_view to_string(OrderKind kind);
OrderKind order_kind_from_string(std::string_view name);
/// Minus, GDPre and GDStar are relative to a witness.
bool needs_witness(OrderKind kind);

struct OrderRelation {
  OrderKind kind = OrderKind::Star;
  /// {1}-inverse for Minus, GD inverse of A for GDPre and GDStar.
  std::optional<CMat> witness;
};

struct OrderResult {
  bool holds = false;
  CheckReport report;
};

/// Evaluates the two defining equations of A <= B. Throws MissingWitness /
/// InvalidWitness for witness problems and InputError when a witness is given
/// to a relation that takes none.
OrderResult leq(const CMat& A, const CMat& B, const OrderRelation& rel, const Tolerance& tol = {});

struct WitnessSearch {
  bool found = false;
  CMat witness;
  /// Number of GD inverses tried.
  int tried = 0;
};

/// GD-star order is existential over GD witnesses: tries the Drazin inverse
/// (when it is a GD inverse at all) and then `draws` members of the GD family. found = false means
/// inconclusive, not disproved.
WitnessSearch search_gd_star_witness(const CMat& A, const CMat& B, Rng& rng, int draws = 20,
                                     const Tolerance& tol = {});

/// Canonical form of A <= B under the GD-star order for matrices that are
/// unitarily block-diagonalizable, A = P diag(C, N) P*.
class GDStarCanonical {
 public:
  /// Throws NotApplicable when the unitary core-nilpotent form has S != 0.
  explicit GDStarCanonical(const CMat& A, const Tolerance& tol = {});

  const GDFamily& family() const { return family_; }
  const CMat& P() const { return family_.unitary().P; }
  const CMat& C() const { return family_.unitary().C; }
  const CMat& N() const { return family_.unitary().N; }

  /// The GD witness P diag(C^-1, N^-) P*.
  CMat witness(const GDParams& params) const { return family_.sample(params); }

  /// Tests B = P [[C, 0], [0, B4]] P* with B4 N^- N = N and N* B4 = N* N, where
  /// N^- is read off the witness. The printed variant with C* in the corner is
  /// recorded alongside.
  CheckReport test(const CMat& B, const CMat& witness) const;

  /// A conforming B for the given witness: B4 = N + (I - N N+) R (I - N^- N).
  CMat generate(const GDParams& params, Rng& rng) const;

 private:
  GDFamily family_;
  Tolerance tol_;
};

struct OrderWitnesses {
  CMat A;  // GD inverse of A
  CMat B;  // GD inverse of B
};

/// Reflexivity, antisymmetry, the transitivity-like identity for A, B, C, the
/// consequences (i)-(vi) of A <=*_GD B, the implications (minus and star) =>
/// GD-star, (GD and star) => GD-star, and GD => Drazin. Conclusions whose
/// hypotheses fail are reported as skipped.
CheckReport order_theorem_suite(const CMat& A, const CMat& B, const CMat& C, const OrderWitnesses& w,
                                const Tolerance& tol = {});

/// Five conditions claimed equivalent for ind(A) = 1 and AB = BA. Throws
/// HypothesisViolated otherwise. A mixed outcome fails the report and is
/// written to findings.
CheckReport ind1_equivalence_suite(const CMat& A, const CMat& B, const CMat& Xgd, const Tolerance& tol = {});

}  // namespace gdstar
