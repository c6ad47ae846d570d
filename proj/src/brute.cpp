#include "ratmin/brute.hpp"

#include <cmath>
#include <stdexcept>

namespace ratmin {

QuadratureRule gauss_legendre(int nodes) {
  if (nodes < 1) throw std::invalid_argument("quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes = nodes;
  rule.x.resize(std::size_t(nodes));
  rule.w.resize(std::size_t(nodes));
  const int n = nodes;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    long double t = std::cos(M_PI * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double pp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = t;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2.0L * k - 1.0L) * t * p1 - (k - 1.0L) * p0) / static_cast<long double>(k);
        p0 = p1;
        p1 = p2;
      }
      pp = static_cast<long double>(n) * (t * p1 - p0) / (t * t - 1.0L);
      long double dt = p1 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-19L) break;
    }
    rule.x[std::size_t(i)] = -t;
    rule.x[std::size_t(n - 1 - i)] = t;
    long double w = 2.0L / ((1.0L - t * t) * pp * pp);
    rule.w[std::size_t(i)] = w;
    rule.w[std::size_t(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.x[std::size_t(n / 2)] = 0.0L;
  return rule;
}

namespace {

constexpr int kMaxQuadDim = 6;

double tensor_quad(const std::function<double(std::span<const double>)>& f, int n, int nodes) {
  if (n < 1) throw std::invalid_argument("quadrature dimension must be >= 1");
  if (n > kMaxQuadDim)
    throw ResourceLimitError("tensor quadrature limited to dimension 6", std::size_t(n));
  QuadratureRule rule = gauss_legendre(nodes);
  std::vector<int> idx(std::size_t(n), 0);
  std::vector<double> pt(static_cast<std::size_t>(n));
  long double acc = 0.0L;
  while (true) {
    long double w = 1.0L;
    for (int i = 0; i < n; ++i) {
      pt[std::size_t(i)] = double(rule.x[std::size_t(idx[std::size_t(i)])]);
      w *= rule.w[std::size_t(idx[std::size_t(i)])];
    }
    acc += w * static_cast<long double>(f(pt));
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[std::size_t(i)] < nodes) break;
      idx[std::size_t(i)] = 0;
    }
    if (i == n) break;
  }
  return double(acc);
}

}  // namespace

double quad_integral(const std::function<double(std::span<const double>)>& f, int n,
                     int nodes_per_axis) {
  return tensor_quad(f, n, nodes_per_axis);
}

double quad_integral(const PolyQ& p, int nodes_per_axis) {
  PolyF pf = to_float(p);
  return tensor_quad([&](std::span<const double> x) { return pf.eval(x); }, p.nvars(),
                     nodes_per_axis);
}

double quad_integral(const PolyF& p, int nodes_per_axis) {
  return tensor_quad([&](std::span<const double> x) { return p.eval(x); }, p.nvars(),
                     nodes_per_axis);
}

double monte_carlo_min(const Problem& problem, std::uint64_t samples, std::uint64_t seed) {
  problem.validate();
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  std::vector<PolyF> nums, dens;
  for (const auto& fr : problem.fractions) {
    nums.push_back(to_float(fr.num));
    dens.push_back(to_float(fr.den));
  }
  const bool sphere = problem.set == SetKind::Sphere;
  Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(problem.n));
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < samples; ++s) {
    if (sphere) {
      // Normalized Box-Muller Gaussians give the uniform direction.
      double norm2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        double u1 = std::max(rng.unit(), 0x1.0p-60), u2 = rng.unit();
        x[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        norm2 += x[i] * x[i];
      }
      if (norm2 <= 0.0) {
        --s;
        continue;
      }
      for (auto& xi : x) xi /= std::sqrt(norm2);
    } else {
      for (auto& xi : x) xi = rng.sym();
    }
    double v = 0.0;
    for (std::size_t i = 0; i < nums.size(); ++i) {
      double den = dens[i].eval(x);
      if (!(den > 0.0))
        throw std::domain_error("denominator not positive at a sampled point");
      v += nums[i].eval(x) / den;
    }
    best = std::min(best, v);
  }
  return best;
}

double grid_min(const Problem& problem, int resolution) {
  problem.validate();
  if (problem.set != SetKind::Box)
    throw std::invalid_argument("grid scan only covers box problems");
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
  double count = std::pow(double(resolution), double(problem.n));
  if (count > 1e8)
    throw ResourceLimitError("grid would exceed 1e8 points", std::size_t(count));
  std::vector<PolyF> nums, dens;
  for (const auto& fr : problem.fractions) {
    nums.push_back(to_float(fr.num));
    dens.push_back(to_float(fr.den));
  }
  const int n = problem.n;
  std::vector<int> idx(std::size_t(n), 0);
  std::vector<double> x(static_cast<std::size_t>(n));
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (int i = 0; i < n; ++i)
      x[std::size_t(i)] =
          resolution == 1 ? 0.0 : -1.0 + 2.0 * idx[std::size_t(i)] / double(resolution - 1);
    // Zero or negative denominators sit outside the feasible contract;
    // the point contributes +inf and never wins the minimum.
    double v = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < nums.size() && ok; ++i) {
      double den = dens[i].eval(x);
      if (!(den > 0.0))
        ok = false;
      else
        v += nums[i].eval(x) / den;
    }
    if (ok) best = std::min(best, v);
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[std::size_t(i)] < resolution) break;
      idx[std::size_t(i)] = 0;
    }
    if (i == n) break;
  }
  return best;
}

double bisection_pencil(const SymMatrix& A, const SymMatrix& B, double lo, double hi,
                        double tol) {
  if (A.dim() != B.dim()) throw std::invalid_argument("pencil matrices must share dimension");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  // Jacobi equilibration; a diagonal congruence leaves feasibility of
  // A - aB unchanged while taming the dynamic range of deep pencils.
  const int dim = A.dim();
  std::vector<double> scale(static_cast<std::size_t>(dim), 1.0);
  for (int i = 0; i < dim; ++i)
    if (B.at(i, i) > 0.0) scale[std::size_t(i)] = 1.0 / std::sqrt(B.at(i, i));
  SymMatrix As(dim), Bs(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = scale[std::size_t(i)] * scale[std::size_t(j)];
      As.at(i, j) = A.at(i, j) * s;
      Bs.at(i, j) = B.at(i, j) * s;
    }
  auto feasible = [&](double a) { return is_psd(SymMatrix::linear(As, Bs, -a)); };
  // Expand until lo is feasible and hi is not.
  double span = std::max(1.0, hi - lo);
  int guard = 0;
  while (!feasible(lo)) {
    hi = lo;
    lo -= span;
    span *= 2.0;
    if (++guard > 80) throw std::runtime_error("bisection bracket expansion failed (low side)");
  }
  guard = 0;
  while (feasible(hi)) {
    lo = hi;
    hi += span;
    span *= 2.0;
    if (++guard > 80)
      throw std::runtime_error("bisection bracket expansion failed: pencil looks unbounded");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ratmin
