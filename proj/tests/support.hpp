#pragma once

#include <initializer_list>

#include "doctest.h"
#include "gdstar/matcore.hpp"

namespace gdstar::test {

inline CMat mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = static_cast<Index>(rows.begin()->size());
  CMat A(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& v : row) A(i, j++) = v;
    ++i;
  }
  return A;
}

inline CVec vec(std::initializer_list<Complex> xs) {
  CVec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline CMat diag(std::initializer_list<Complex> xs) { return vec(xs).asDiagonal(); }

/// Max-abs entry difference, for exact small examples.
inline double maxdiff(const CMat& A, const CMat& B) {
  REQUIRE(A.rows() == B.rows());
  REQUIRE(A.cols() == B.cols());
  return A.size() == 0 ? 0.0 : (A - B).cwiseAbs().maxCoeff();
}

}  // namespace gdstar::test
