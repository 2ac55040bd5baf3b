#pragma once

#include <cstdint>
#include <optional>

#include "gdstar/check.hpp"
#include "gdstar/decomp.hpp"
#include "gdstar/matcore.hpp"

namespace gdstar {

/// SVD pseudoinverse with the rank() cutoff.
CMat moore_penrose(const CMat& A, const Tolerance& tol = {});

/// G = N+ + (I - N+ N) W + V (I - N N+), an inner inverse of N for every W, V.
CMat one_inverse_sample(const CMat& N, const CMat& W, const CMat& V, const Tolerance& tol = {});

CMat drazin(const CMat& A, const Tolerance& tol = {});

/// Throws IndexTooLarge when index(A) > 1.
CMat group_inverse(const CMat& A, const Tolerance& tol = {});

/// A^D A A*
CMat drazin_star(const CMat& A, const Tolerance& tol = {});

enum class GDRoute { Unitary, Similarity };

/// Parameters of the inner inverse N^- of the nilpotent block. Both are
/// (m-r) x (m-r); seed records where a drawn pair came from.
struct GDParams {
  CMat W;
  CMat V;
  std::optional<std::uint64_t> seed;

  static GDParams zeros(Index s) { return {CMat::Zero(s, s), CMat::Zero(s, s), std::nullopt}; }
};

/// The GD family of one matrix: caches both core-nilpotent forms so that many
/// members can be drawn cheaply.
class GDFamily {
 public:
  explicit GDFamily(const CMat& A, const Tolerance& tol = {});

  const CMat& matrix() const { return A_; }
  const CoreNilpotent& unitary() const { return unitary_; }
  const CoreNilpotent& similarity() const { return similarity_; }
  Index index() const { return unitary_.k; }
  Index core_size() const { return unitary_.r(); }
  Index nil_size() const { return unitary_.N.rows(); }
  const Tolerance& tolerance() const { return tol_; }

  /// Gaussian W, V scaled by max(||N+||_2, 1).
  GDParams draw(Rng& rng) const;

  /// N^- for the given parameters. Throws ShapeError on mismatched params.
  CMat nilpotent_inverse(const GDParams& params) const;

  CMat sample(const GDParams& params, GDRoute route = GDRoute::Unitary) const;

  /// The member with W = V = 0, i.e. N^- = N+.
  CMat canonical() const { return sample(GDParams::zeros(nil_size())); }

  CMat drazin() const;

 private:
  CMat A_;
  Tolerance tol_;
  CoreNilpotent unitary_;
  CoreNilpotent similarity_;
  CMat Npinv_;
  double param_scale_ = 1.0;
};

CMat gd_sample(const CMat& A, const GDParams& params, const Tolerance& tol = {},
               GDRoute route = GDRoute::Unitary);

/// Both characterizations of a GD inverse:
///   {AXA = A, A^k X = X A^k} and {AXA = A, X A^(k+1) = A^k, A^(k+1) X = A^k}.
/// k defaults to index(A).
CheckReport gd_verify(const CMat& A, const CMat& X, const Tolerance& tol = {},
                      std::optional<Index> k = std::nullopt);

/// Throws InvalidWitness unless gd_verify(A, X) passes.
void require_gd_witness(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// Xgd A A+
CMat gdmp(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});
/// A+ A Xgd
CMat mpgd(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

/// Penrose equations (1)-(4).
CheckReport verify_penrose(const CMat& A, const CMat& X, const Tolerance& tol = {});
/// (AX)* = AX, AXA = A, XAX = X, X A^(k+1) = A^k
CheckReport verify_gdmp_system(const CMat& A, const CMat& X, const Tolerance& tol = {});
/// (XA)* = XA, AXA = A, XAX = X, A^(k+1) X = A^k
CheckReport verify_mpgd_system(const CMat& A, const CMat& X, const Tolerance& tol = {});

/// Xgd A A^D = A^D and A^D A Xgd = A^D.
CheckReport gd_to_drazin(const CMat& A, const CMat& Xgd, const Tolerance& tol = {});

}  // namespace gdstar
