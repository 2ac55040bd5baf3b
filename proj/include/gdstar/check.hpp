#pragma once

#include <string>
#include <vector>

#include "gdstar/matcore.hpp"

namespace gdstar {

/// A matrix paired with an upper bound on the Frobenius norm of the exact
/// quantity it approximates. Products multiply bounds and sums add them, so a
/// residual ||L - R|| can be judged against the size of the factors that
/// produced L and R rather than against ||L|| alone (which is useless when
/// both sides are near zero).
struct Tracked {
  CMat m;
  double bound = 0.0;

  Tracked() = default;
  Tracked(CMat mat) : m(std::move(mat)), bound(m.norm()) {}  // NOLINT: implicit on purpose
  Tracked(CMat mat, double b) : m(std::move(mat)), bound(b) {}

  static Tracked identity(Index n) { return {CMat::Identity(n, n), 1.0}; }
  static Tracked zero(Index rows, Index cols) { return {CMat::Zero(rows, cols), 0.0}; }

  Tracked adjoint() const { return {m.adjoint(), bound}; }
};

inline Tracked operator*(const Tracked& a, const Tracked& b) { return {a.m * b.m, a.bound * b.bound}; }
inline Tracked operator+(const Tracked& a, const Tracked& b) { return {a.m + b.m, a.bound + b.bound}; }
inline Tracked operator-(const Tracked& a, const Tracked& b) { return {a.m - b.m, a.bound + b.bound}; }
inline Tracked operator*(Complex s, const Tracked& a) { return {s * a.m, std::abs(s) * a.bound}; }

Tracked tracked_pow(const Tracked& a, Index p);

enum class Status { Pass, Fail, Skipped, Recorded };

std::string_view to_string(Status s);

struct CheckItem {
  std::string name;
  double residual = 0.0;
  double scale = 0.0;
  Status status = Status::Pass;
  std::string note;

  /// residual / scale, or the raw residual when the scale vanishes.
  double relative() const { return scale > 0.0 ? residual / scale : residual; }
};

struct CheckReport {
  std::string suite;
  std::vector<CheckItem> items;
  /// Set when two characterizations that must agree gave different verdicts.
  bool inconsistency = false;
  std::vector<std::string> findings;

  /// No asserted item failed and no inconsistency was raised.
  bool overall() const;

  /// Asserts L == R: residual ||L - R||_F, pass iff residual <= atol + rtol (|L| + |R|)
  /// with |.| the tracked bounds.
  const CheckItem& check(std::string name, const Tracked& lhs, const Tracked& rhs, const Tolerance& tol);
  const CheckItem& check_zero(std::string name, const Tracked& lhs, const Tolerance& tol);
  /// Asserts a boolean outcome with an attached residual.
  const CheckItem& check_flag(std::string name, bool ok, double residual, double scale, std::string note = {});
  /// Logs a residual without asserting anything about it.
  const CheckItem& record(std::string name, const Tracked& lhs, const Tracked& rhs, std::string note = {});
  const CheckItem& record_value(std::string name, double residual, double scale, std::string note = {});
  /// Records a hypothesis of a conditional statement (note "holds" or
  /// "violated") and returns whether it holds. Never fails the report.
  bool hypothesis(std::string name, const Tracked& lhs, const Tracked& rhs, const Tolerance& tol);
  void skip(std::string name, std::string note);

  /// Appends another report's items with a name prefix.
  void merge(const CheckReport& other, const std::string& prefix = {});

  const CheckItem* find(std::string_view name) const;
  bool passed(std::string_view name) const;

  std::size_t count(Status s) const;
  /// Largest relative residual among asserted items.
  double worst_relative() const;
};

/// Comparison on tracked bounds, without building a report.
bool tracked_eq(const Tracked& lhs, const Tracked& rhs, const Tolerance& tol);

}  // namespace gdstar
