#ifndef RATMIN_TEST_UTIL_HPP
#define RATMIN_TEST_UTIL_HPP

#include <cstdint>

#include "ratmin/brute.hpp"
#include "ratmin/polynomial.hpp"

namespace ratmin::testutil {

// Sparse random polynomial with small integer coefficients; exact across
// platforms since all draws go through Rng.
inline PolyQ random_poly(Rng& rng, int nvars, int maxdeg, int terms, int coef_range = 8) {
  PolyQ p(nvars);
  for (int t = 0; t < terms; ++t) {
    Mono m(nvars);
    int budget = int(rng.bits() % std::uint64_t(maxdeg + 1));
    for (int i = 0; i < nvars && budget > 0; ++i) {
      int e = int(rng.bits() % std::uint64_t(budget + 1));
      m.e[std::size_t(i)] = std::uint16_t(e);
      budget -= e;
    }
    long c = long(rng.bits() % std::uint64_t(2 * coef_range + 1)) - coef_range;
    if (c == 0) c = 1;
    p.add_term(m, Rational(c));
  }
  return p;
}

// 1 + x'Bx with B random positive definite: positive on any box.
inline PolyQ random_positive_quadratic(Rng& rng, int nvars) {
  PolyQ p = PolyQ::constant(nvars, Rational(1));
  std::vector<std::vector<double>> L(std::size_t(nvars),
                                     std::vector<double>(std::size_t(nvars), 0.0));
  for (int i = 0; i < nvars; ++i)
    for (int j = 0; j <= i; ++j) L[std::size_t(i)][std::size_t(j)] = rng.sym();
  // B = LL' is PSD; x'Bx = |L'x|^2.
  for (int i = 0; i < nvars; ++i)
    for (int j = 0; j < nvars; ++j) {
      double bij = 0.0;
      for (int k = 0; k < nvars; ++k)
        bij += L[std::size_t(i)][std::size_t(k)] * L[std::size_t(j)][std::size_t(k)];
      Mono m(nvars);
      m.e[std::size_t(i)] += 1;
      m.e[std::size_t(j)] += 1;
      p.add_term(m, rat_from_double(bij));
    }
  return p;
}

inline SymMatrix random_pd_matrix(Rng& rng, int dim, double shift = 0.5) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) L(i, j) = rng.sym();
  Eigen::MatrixXd M = L * L.transpose() + shift * Eigen::MatrixXd::Identity(dim, dim);
  return SymMatrix::from_dense(M);
}

}  // namespace ratmin::testutil

#endif
