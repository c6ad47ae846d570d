#ifndef RATMIN_MOMENTS_HPP
#define RATMIN_MOMENTS_HPP

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ratmin/polynomial.hpp"
#include "ratmin/problem.hpp"

namespace ratmin {

// Closed-form monomial moments of a base measure: Lebesgue on the unit
// box [-1,1]^n (exact rationals) or unnormalized surface measure on the
// unit sphere S^{n-1} (floats). Any positive multiple of the sphere
// measure yields the same hierarchy values, so the normalization is free.
class MomentOracle {
 public:
  enum class Kind { BoxLebesgue, SphereUniform };

  static MomentOracle box(int n);
  static MomentOracle sphere(int n);
  static MomentOracle for_set(SetKind set, int n) {
    return set == SetKind::Box ? box(n) : sphere(n);
  }

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  bool exact() const { return kind_ == Kind::BoxLebesgue; }

  Rational moment_q(const Mono& alpha) const;  // box only
  double moment_f(const Mono& alpha) const;

  std::string name() const;

 private:
  MomentOracle(Kind k, int n) : kind_(k), n_(n) {}
  Kind kind_;
  int n_;
};

// prod_i (1+(-1)^{a_i})/(a_i+1): zero for any odd exponent.
Rational box_monomial_moment(const Mono& alpha);

// Surface-measure monomial moment on S^{n-1}, n = alpha.nvars() >= 2;
// zero for odd multi-indices, otherwise 2 prod Gamma((a_i+1)/2) over
// Gamma((|a|+n)/2), evaluated by a multiplicative ratio recurrence.
double sphere_monomial_moment(const Mono& alpha);

// Riesz functional against the oracle's moment sequence.
Rational integrate_exact(const PolyQ& p, const MomentOracle& oracle);

template <class C>
double integrate(const Poly<C>& p, const MomentOracle& oracle) {
  if (p.nvars() != oracle.n()) throw std::invalid_argument("integrate: dimension mismatch");
  if constexpr (std::is_same_v<C, Rational>) {
    if (oracle.exact()) return to_double(integrate_exact(p, oracle));
  }
  double acc = 0.0;
  for (const auto& [m, c] : p.terms()) acc += detail::coef_to_double(c) * oracle.moment_f(m);
  return acc;
}

// Cached pushforward moments over image variables: entry at exponent
// (a_1, b_1, ..., a_N, b_N) is the integral of prod f_i^{a_i} g_i^{b_i}
// against the base measure. mvars = 2N for fraction tables, 1 for the
// plain power table of a single polynomial. All exponents with total
// degree <= maxdeg are present.
class MomentTable {
 public:
  MomentTable(int mvars, int maxdeg, bool exact, std::string provenance);

  int mvars() const { return mvars_; }
  int maxdeg() const { return maxdeg_; }
  bool exact() const { return exact_; }
  const std::string& provenance() const { return provenance_; }

  void set(const Mono& key, const Rational& value);
  void set(const Mono& key, double value);
  bool has(const Mono& key) const;
  double value_f(const Mono& key) const;
  const Rational& value_q(const Mono& key) const;

  double mass_f() const { return value_f(Mono(mvars_)); }
  // Rescales so the mass entry equals 1 (exact division in exact mode).
  MomentTable normalized() const;

  std::size_t size() const { return float_entries_.size(); }
  static std::size_t entry_count(int mvars, int maxdeg);

  std::vector<Mono> sorted_keys() const;

  void save(std::ostream& os) const;
  void save_file(const std::string& path) const;
  static MomentTable load(std::istream& is);
  static MomentTable load_file(const std::string& path);

  void set_maxdeg(int d) { maxdeg_ = d; }

 private:
  int mvars_;
  int maxdeg_;  // -1 while a cache is still empty
  bool exact_;
  std::string provenance_;
  std::unordered_map<Mono, Rational, MonoHash> exact_entries_;
  std::unordered_map<Mono, double, MonoHash> float_entries_;
};

struct TableBuildOptions {
  std::size_t entry_cap = std::size_t(1) << 26;  // refuse larger tables up front
  bool float_mode = false;                       // expand powers in doubles
};

// All moments of f^i g^j with i+j <= D. For each i the builder holds f^i
// and multiplies successively by g, integrating and discarding the
// intermediates.
MomentTable pushforward_table_single(const PolyQ& f, const PolyQ& g, int D,
                                     const MomentOracle& oracle,
                                     const TableBuildOptions& opts = {});

// 2N-variable generalization over all |(a,b)| <= D; products are walked
// depth-first so each one comes from its predecessor by a single
// multiplication and only the current chain of intermediates is alive.
MomentTable pushforward_table_multi(const std::vector<Fraction>& fractions, int D,
                                    const MomentOracle& oracle,
                                    const TableBuildOptions& opts = {});

// Power moments of a single polynomial: entry d is the integral of f^d.
MomentTable pushforward_table_univariate(const PolyQ& f, int D, const MomentOracle& oracle,
                                         const TableBuildOptions& opts = {});

// Incremental builders used by order sweeps: extending the depth reuses
// every previously expanded power instead of recomputing it.
class PushforwardCache {
 public:
  PushforwardCache(PolyQ f, PolyQ g, const MomentOracle& oracle,
                   const TableBuildOptions& opts = {});
  void extend(int D);
  const MomentTable& table() const { return table_; }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  MomentTable table_;
};

class UnivariateCache {
 public:
  UnivariateCache(PolyQ f, const MomentOracle& oracle, const TableBuildOptions& opts = {});
  void extend(int D);
  const MomentTable& table() const { return table_; }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  MomentTable table_;
};

// Sweep cache for sums of fractions. Depth extensions reuse the numerator
// power chain; the deeper cross products are rebuilt, which keeps memory
// bounded by a single DFS chain.
class MultiPushforwardCache {
 public:
  MultiPushforwardCache(std::vector<Fraction> fractions, const MomentOracle& oracle,
                        const TableBuildOptions& opts = {});
  void extend(int D);
  const MomentTable& table() const { return table_; }

 private:
  std::vector<Fraction> fractions_;
  MomentOracle oracle_;
  TableBuildOptions opts_;
  MomentTable table_;
};

}  // namespace ratmin

#endif
