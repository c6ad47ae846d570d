#ifndef RATMIN_BRUTE_HPP
#define RATMIN_BRUTE_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ratmin/eig.hpp"
#include "ratmin/polynomial.hpp"
#include "ratmin/problem.hpp"

namespace ratmin {

// Portable uniform source: mt19937_64 (bit-exact across platforms by the
// standard) with the usual 53-bit mantissa mapping. All seeded data in
// the project flows through this so runs reproduce everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t bits() { return eng_(); }
  double unit() { return double(eng_() >> 11) * 0x1.0p-53; }  // [0,1)
  double sym() { return 2.0 * unit() - 1.0; }                 // [-1,1)

 private:
  std::mt19937_64 eng_;
};

// Per-axis Gauss-Legendre rule on [-1,1]; exact for univariate degree
// <= 2*nodes-1. Nodes are refined in long double.
struct QuadratureRule {
  int nodes = 0;
  std::vector<long double> x;
  std::vector<long double> w;
};

QuadratureRule gauss_legendre(int nodes);

// Tensor quadrature over [-1,1]^n; guard keeps node_count^n manageable.
double quad_integral(const std::function<double(std::span<const double>)>& f, int n,
                     int nodes_per_axis);
double quad_integral(const PolyQ& p, int nodes_per_axis);
double quad_integral(const PolyF& p, int nodes_per_axis);

// Minimal sampled value of the objective over the box. Sample i is the
// same for every sample budget (one stream, n draws per point), so
// enlarging the budget can only lower the result.
double monte_carlo_min(const Problem& problem, std::uint64_t samples, std::uint64_t seed);

// Tensor grid including endpoints; resolution = points per axis.
double grid_min(const Problem& problem, int resolution);

// sup { a : A - a B PSD } by bisection with a pivoted-Cholesky
// feasibility test; brackets auto-expand when invalid.
double bisection_pencil(const SymMatrix& A, const SymMatrix& B, double lo, double hi,
                        double tol);

}  // namespace ratmin

#endif
