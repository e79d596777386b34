// Seeded random generators shared by the property-test suites.
#pragma once

#include <cstdint>
#include <random>

#include "ispace/exactla.hpp"

namespace ispace::testing {

using Rng = std::mt19937_64;

// Small-integer entries keep elimination honest without ballooning values.
inline Rational random_rational(Rng& rng, int span = 5) {
  std::uniform_int_distribution<int> d(-span, span);
  return Rational(d(rng));
}

inline Mat random_matrix(Rng& rng, Index rows, Index cols, int span = 5) {
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = random_rational(rng, span);
  return m;
}

// A random matrix of the requested rank (rank <= min(rows, cols)).
inline Mat random_matrix_of_rank(Rng& rng, Index rows, Index cols, Index rk) {
  while (true) {
    Mat a = random_matrix(rng, rows, rk, 3);
    Mat b = random_matrix(rng, rk, cols, 3);
    Mat m = a * b;
    if (rank(m) == rk) return m;
  }
}

// An invertible n x n matrix.
inline Mat random_invertible(Rng& rng, Index n) {
  while (true) {
    Mat m = random_matrix(rng, n, n, 3);
    if (rank(m) == n) return m;
  }
}

}  // namespace ispace::testing
