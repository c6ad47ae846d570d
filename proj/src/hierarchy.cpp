#include "ratmin/hierarchy.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ratmin/brute.hpp"
#include "ratmin/moment_matrix.hpp"
#include "ratmin/sdp_build.hpp"

namespace ratmin {

std::string method_name(Method m) {
  switch (m) {
    case Method::Std: return "std";
    case Method::Push: return "push";
    case Method::StdSum: return "std-sum";
    case Method::PushSum: return "push-sum";
    case Method::Poly: return "poly";
    case Method::PolyPush: return "poly-push";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "std") return Method::Std;
  if (name == "push") return Method::Push;
  if (name == "std-sum") return Method::StdSum;
  if (name == "push-sum") return Method::PushSum;
  if (name == "poly") return Method::Poly;
  if (name == "poly-push") return Method::PolyPush;
  throw std::invalid_argument("unknown method tag: " + name);
}

bool is_sum_method(Method m) { return m == Method::StdSum || m == Method::PushSum; }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

TableBuildOptions table_opts(const HierarchyOptions& opts) {
  TableBuildOptions t;
  t.entry_cap = opts.table_entry_cap;
  t.float_mode = (opts.coeff == CoeffMode::Float);
  return t;
}

// Exact pencil machinery for orders where floating point cannot certify
// the value: integer fraction-free (Bareiss) elimination on the matrices
// scaled to a common denominator. Pivots are scaled leading minors, so
// their signs decide definiteness exactly.

using BigInt = mpz_class;

struct IntPencil {
  int dim = 0;
  std::vector<BigInt> A;  // row-major, premultiplied by the common denominator
  std::vector<BigInt> B;
};

IntPencil scale_pencil(const MomentTable& table, const Basis& basis, const Mono& a_shift,
                       const Mono& b_shift) {
  const int dim = int(basis.size());
  std::vector<Rational> Aq(std::size_t(dim * dim)), Bq(std::size_t(dim * dim));
  BigInt common(1);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      Mono key = basis.elems[std::size_t(i)].plus(basis.elems[std::size_t(j)]);
      const Rational& a = table.value_q(key.plus(a_shift));
      const Rational& b = table.value_q(key.plus(b_shift));
      Aq[std::size_t(i * dim + j)] = Aq[std::size_t(j * dim + i)] = a;
      Bq[std::size_t(i * dim + j)] = Bq[std::size_t(j * dim + i)] = b;
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), a.get_den().get_mpz_t());
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), b.get_den().get_mpz_t());
    }
  IntPencil out;
  out.dim = dim;
  out.A.resize(Aq.size());
  out.B.resize(Bq.size());
  for (std::size_t k = 0; k < Aq.size(); ++k) {
    out.A[k] = Aq[k].get_num() * (common / Aq[k].get_den());
    out.B[k] = Bq[k].get_num() * (common / Bq[k].get_den());
  }
  return out;
}

// Strict positive definiteness of an integer symmetric matrix.
bool bareiss_pd(std::vector<BigInt> M, int dim) {
  BigInt prev(1);
  for (int k = 0; k < dim; ++k) {
    const BigInt& piv = M[std::size_t(k * dim + k)];
    if (sgn(piv) <= 0) return false;
    for (int i = k + 1; i < dim; ++i)
      for (int j = k + 1; j <= i; ++j) {
        BigInt v = M[std::size_t(i * dim + j)] * piv -
                   M[std::size_t(i * dim + k)] * M[std::size_t(k * dim + j)];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M[std::size_t(i * dim + j)] = v;
        M[std::size_t(j * dim + i)] = M[std::size_t(i * dim + j)];
      }
    prev = piv;
  }
  return true;
}

// Indices of a maximal set of columns on which a PSD integer matrix is
// nonsingular (the exact range complement of its kernel).
std::vector<int> bareiss_psd_pivots(std::vector<BigInt> M, int dim) {
  std::vector<int> ids(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) ids[std::size_t(i)] = i;
  auto at = [&](int r, int c) -> BigInt& { return M[std::size_t(r * dim + c)]; };
  std::vector<int> pivots;
  BigInt prev(1);
  for (int k = 0; k < dim; ++k) {
    int p = -1;
    for (int j = k; j < dim; ++j)
      if (sgn(at(j, j)) > 0) {
        p = j;
        break;
      }
    if (p < 0) break;  // PSD remainder with zero diagonal is the zero block
    if (p != k) {
      for (int c = 0; c < dim; ++c) std::swap(at(k, c), at(p, c));
      for (int r = 0; r < dim; ++r) std::swap(at(r, k), at(r, p));
      std::swap(ids[std::size_t(k)], ids[std::size_t(p)]);
    }
    pivots.push_back(ids[std::size_t(k)]);
    const BigInt piv = at(k, k);
    for (int i = k + 1; i < dim; ++i)
      for (int j = k + 1; j <= i; ++j) {
        BigInt v = at(i, j) * piv - at(i, k) * at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = v;
        at(j, i) = at(i, j);
      }
    prev = piv;
  }
  std::sort(pivots.begin(), pivots.end());
  return pivots;
}

// Bisection on the exact pencil taken straight from the rational table.
// B may be exactly singular: the pencil is first restricted to an exact
// complement of its kernel, which every localizing matrix of the same
// measure shares, so the value is unchanged.
double exact_pencil_refine(const MomentTable& table, const Basis& basis, const Mono& a_shift,
                           const Mono& b_shift, double guess) {
  IntPencil full = scale_pencil(table, basis, a_shift, b_shift);
  std::vector<int> keep = bareiss_psd_pivots(full.B, full.dim);
  const int dim = int(keep.size());
  if (dim == 0) return guess;
  std::vector<BigInt> A(std::size_t(dim * dim)), B(std::size_t(dim * dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      A[std::size_t(i * dim + j)] =
          full.A[std::size_t(keep[std::size_t(i)] * full.dim + keep[std::size_t(j)])];
      B[std::size_t(i * dim + j)] =
          full.B[std::size_t(keep[std::size_t(i)] * full.dim + keep[std::size_t(j)])];
    }
  auto feasible = [&](const Rational& a) {
    // A - aB > 0 over the rationals: scale by the denominator of a.
    BigInt num = a.get_num(), den = a.get_den();
    std::vector<BigInt> M(std::size_t(dim * dim));
    for (std::size_t k = 0; k < M.size(); ++k) M[k] = A[k] * den - B[k] * num;
    return bareiss_pd(std::move(M), dim);
  };
  double width = 1e-5 * (1.0 + std::abs(guess));
  Rational lo = rat_from_double(guess - width), hi = rat_from_double(guess + width);
  int guard = 0;
  while (!feasible(lo)) {
    hi = lo;
    lo -= rat_from_double(width);
    width *= 2.0;
    if (++guard > 60) throw std::runtime_error("exact pencil refinement lost its bracket");
  }
  guard = 0;
  while (feasible(hi)) {
    lo = hi;
    hi += rat_from_double(width);
    width *= 2.0;
    if (++guard > 60) throw std::runtime_error("exact pencil refinement lost its bracket");
  }
  const Rational tol = rat_from_double(2e-9 * (1.0 + std::abs(guess)));
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (feasible(mid))
      lo = mid;
    else
      hi = mid;
  }
  return to_double(Rational((lo + hi) / 2));
}

// Floating-point pencil error grows like (entry precision)/min_pivot, so
// below this pivot the exact path takes over when it is affordable.
constexpr double kExactRefineBelow = 1e-10;

HierarchyResult pencil_result(const std::string& method, int N, int n, int d,
                              const GenEigResult& ge, double moment_s, double solve_s,
                              bool certified) {
  HierarchyResult r;
  r.method = method;
  r.N = N;
  r.n = n;
  r.d = d;
  r.bound = ge.value;
  r.unbounded = ge.unbounded;
  r.moment_seconds = moment_s;
  r.solve_seconds = solve_s;
  r.certified = certified;
  r.min_pivot = ge.min_pivot;
  if (ge.infeasible)
    r.status = "error: pencil infeasible";
  else if (ge.unbounded)
    r.status = "unbounded";
  else
    r.status = "optimal";
  return r;
}

HierarchyResult solve_pencil_driver(const std::string& method, int N, int n, int d,
                                    const MatrixXld& A, const MatrixXld& B, double moment_s,
                                    const HierarchyOptions& opts) {
  auto t0 = Clock::now();
  GenEigOptions gopts;
  gopts.rank_tol = opts.rank_tol;
  GenEigResult ge = gen_eig_min_ld(A, B, gopts);
  return pencil_result(method, N, n, d, ge, moment_s, seconds_since(t0), true);
}

// Sampled per-fraction minima feed the strictly feasible start of the
// sum drivers.
std::vector<double> fraction_minima(const Problem& problem, const HierarchyOptions& opts) {
  std::vector<double> mins;
  if (opts.warm_start_samples == 0) return mins;
  for (const auto& fr : problem.fractions) {
    Problem sub;
    sub.n = problem.n;
    sub.set = problem.set;
    sub.fractions = {fr};
    mins.push_back(monte_carlo_min(sub, opts.warm_start_samples, opts.warm_start_seed));
  }
  return mins;
}

HierarchyResult sdp_result(const std::string& method, const Problem& problem, int d, int s,
                           const SdpSolution& sol, double moment_s, double solve_s,
                           double min_pivot) {
  HierarchyResult r;
  r.method = method;
  r.N = problem.nfractions();
  r.n = problem.n;
  r.d = d;
  r.s = s;
  r.bound = sol.objective;
  r.moment_seconds = moment_s;
  r.solve_seconds = solve_s;
  r.status = to_string(sol.status);
  r.certified = false;  // sum values converge but are not per-order certificates
  r.min_pivot = min_pivot;
  return r;
}

double constraint_min_pivot(const SdpProblem& p) {
  // Smallest kept pivot of the a-coefficient matrix of the first block,
  // the quantity that controls the pencil conditioning.
  if (p.blocks.empty() || p.blocks[0].F.empty()) return 0.0;
  SymMatrix B = p.blocks[0].F[0];
  SymMatrix negB = SymMatrix::linear(SymMatrix(B.dim()), B, -1.0);
  CholeskyReport rep = cholesky(negB);
  return rep.rank > 0 ? rep.min_pivot : 0.0;
}

}  // namespace

HierarchyResult upper_bound_poly(const PolyQ& f, const MomentOracle& oracle, int d,
                                 const HierarchyOptions& opts) {
  auto t0 = Clock::now();
  Basis basis = make_basis(oracle.n(), d);
  OracleSource src(oracle);
  MatrixXld A = localizing_matrix_ld(f, src, basis);
  MatrixXld B = moment_matrix_ld(src, basis);
  double ms = seconds_since(t0);
  return solve_pencil_driver("poly", 1, oracle.n(), d, A, B, ms, opts);
}

HierarchyResult upper_bound_poly_pushforward(const PolyQ& f, const MomentOracle& oracle, int d,
                                             const HierarchyOptions& opts) {
  auto t0 = Clock::now();
  MomentTable table = pushforward_table_univariate(f, 2 * d + 1, oracle, table_opts(opts));
  if (opts.normalize_table) table = table.normalized();
  Basis basis = make_basis(1, d);
  TableSource src(table);
  MatrixXld A = localizing_matrix_ld(PolyQ::variable(1, 0), src, basis);
  MatrixXld B = moment_matrix_ld(src, basis);
  double ms = seconds_since(t0);
  auto t1 = Clock::now();
  GenEigOptions gopts;
  gopts.rank_tol = opts.rank_tol;
  GenEigResult ge = gen_eig_min_ld(A, B, gopts);
  if (table.exact() && oracle.n() <= 3 && !ge.unbounded && !ge.infeasible &&
      (ge.min_pivot < kExactRefineBelow || ge.range_restricted))
    ge.value = exact_pencil_refine(table, basis, Mono{1}, Mono{0}, ge.value);
  return pencil_result("poly-push", 1, oracle.n(), d, ge, ms, seconds_since(t1), true);
}

HierarchyResult upper_bound_rational(const PolyQ& f, const PolyQ& g, const MomentOracle& oracle,
                                     int d, const HierarchyOptions& opts) {
  auto t0 = Clock::now();
  Basis basis = make_basis(oracle.n(), d);
  OracleSource src(oracle);
  MatrixXld A = localizing_matrix_ld(f, src, basis);
  MatrixXld B = localizing_matrix_ld(g, src, basis);
  double ms = seconds_since(t0);
  return solve_pencil_driver("std", 1, oracle.n(), d, A, B, ms, opts);
}

namespace {

HierarchyResult rational_pushforward_from_table(const MomentTable& table, int n, int d,
                                                const HierarchyOptions& opts, double moment_s) {
  MomentTable norm(2, 0, false, "");
  const MomentTable* use = &table;
  if (opts.normalize_table) {
    norm = table.normalized();
    use = &norm;
  }
  Basis basis = make_basis(2, d);
  TableSource src(*use);
  MatrixXld A = localizing_matrix_ld(PolyQ::variable(2, 0), src, basis);
  MatrixXld B = localizing_matrix_ld(PolyQ::variable(2, 1), src, basis);
  auto t0 = Clock::now();
  GenEigOptions gopts;
  gopts.rank_tol = opts.rank_tol;
  GenEigResult ge = gen_eig_min_ld(A, B, gopts);
  if (use->exact() && n <= 3 && !ge.unbounded && !ge.infeasible &&
      (ge.min_pivot < kExactRefineBelow || ge.range_restricted))
    ge.value = exact_pencil_refine(*use, basis, Mono{1, 0}, Mono{0, 1}, ge.value);
  return pencil_result("push", 1, n, d, ge, moment_s, seconds_since(t0), true);
}

}  // namespace

HierarchyResult upper_bound_rational_pushforward(const PolyQ& f, const PolyQ& g,
                                                 const MomentOracle& oracle, int d,
                                                 const HierarchyOptions& opts) {
  auto t0 = Clock::now();
  MomentTable table = pushforward_table_single(f, g, 2 * d + 1, oracle, table_opts(opts));
  double ms = seconds_since(t0);
  return rational_pushforward_from_table(table, oracle.n(), d, opts, ms);
}

HierarchyResult upper_bound_sum(const Problem& problem, int d, int s,
                                const HierarchyOptions& opts) {
  problem.validate();
  MomentOracle oracle = MomentOracle::for_set(problem.set, problem.n);
  auto t0 = Clock::now();
  std::vector<double> mins = fraction_minima(problem, opts);
  SdpProblem p = build_sum_standard(problem.fractions, oracle, d, s,
                                    mins.empty() ? nullptr : &mins);
  double ms = seconds_since(t0);
  t0 = Clock::now();
  SdpSolution sol = sdp_solve(p, opts.sdp);
  return sdp_result("std-sum", problem, d, s, sol, ms, seconds_since(t0),
                    constraint_min_pivot(p));
}

namespace {

HierarchyResult sum_pushforward_from_table(const Problem& problem, const MomentTable& table,
                                           int d, int s, const HierarchyOptions& opts,
                                           double moment_s) {
  MomentTable norm(2, 0, false, "");
  const MomentTable* use = &table;
  if (opts.normalize_table) {
    norm = table.normalized();
    use = &norm;
  }
  auto t0 = Clock::now();
  std::vector<double> mins = fraction_minima(problem, opts);
  SdpProblem p = build_sum_pushforward(problem.nfractions(), *use, d, s, opts.pfm_u1_form,
                                       mins.empty() ? nullptr : &mins);
  // Image measures sit on low-dimensional sets; cut the shared kernel so
  // the interior-point method sees a strictly feasible cone.
  p = facial_reduce(p, moment_matrix(TableSource(*use), make_basis(use->mvars(), d)));
  double build_s = seconds_since(t0);
  t0 = Clock::now();
  SdpSolution sol = sdp_solve(p, opts.sdp);
  return sdp_result("push-sum", problem, d, s, sol, moment_s + build_s, seconds_since(t0),
                    constraint_min_pivot(p));
}

}  // namespace

HierarchyResult upper_bound_sum_pushforward(const Problem& problem, int d, int s,
                                            const HierarchyOptions& opts) {
  problem.validate();
  MomentOracle oracle = MomentOracle::for_set(problem.set, problem.n);
  auto t0 = Clock::now();
  MomentTable table =
      pushforward_table_multi(problem.fractions, 2 * d + s + 1, oracle, table_opts(opts));
  double ms = seconds_since(t0);
  return sum_pushforward_from_table(problem, table, d, s, opts, ms);
}

std::vector<std::string> denominator_warnings(const Problem& problem) {
  problem.validate();
  std::vector<std::string> warnings;
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (problem.n > int(sizeof(primes) / sizeof(primes[0]))) {
    warnings.push_back("positivity spot-check skipped: dimension too large");
    return warnings;
  }
  auto halton = [](int index, int base) {
    double f = 1.0, r = 0.0;
    int i = index;
    while (i > 0) {
      f /= base;
      r += f * (i % base);
      i /= base;
    }
    return r;
  };
  std::vector<PolyF> dens;
  for (const auto& fr : problem.fractions) dens.push_back(to_float(fr.den));
  std::vector<double> x(static_cast<std::size_t>(problem.n));
  for (int t = 1; t <= 1000; ++t) {
    double norm2 = 0.0;
    for (int i = 0; i < problem.n; ++i) {
      x[std::size_t(i)] = 2.0 * halton(t, primes[i]) - 1.0;
      norm2 += x[std::size_t(i)] * x[std::size_t(i)];
    }
    if (problem.set == SetKind::Sphere) {
      if (norm2 <= 1e-12) continue;
      for (auto& xi : x) xi /= std::sqrt(norm2);
    }
    for (std::size_t k = 0; k < dens.size(); ++k) {
      double v = dens[k].eval(x);
      if (!(v > 0.0)) {
        std::ostringstream os;
        os << "denominator " << (k + 1) << " is " << v << " at spot-check point " << t
           << "; positivity on the set is the caller's contract";
        warnings.push_back(os.str());
      }
    }
  }
  return warnings;
}

std::vector<HierarchyResult> run_sweep(const Problem& problem, const SweepSpec& spec,
                                       const HierarchyOptions& opts) {
  problem.validate();
  std::vector<HierarchyResult> rows;
  if (spec.dmax < spec.dmin) return rows;
  if (spec.dmin < 0) throw std::invalid_argument("orders must be nonnegative");
  const bool sum = is_sum_method(spec.method);
  if (!sum && problem.nfractions() != 1)
    throw std::invalid_argument("single-fraction method on a sum problem; use a sum method");
  MomentOracle oracle = MomentOracle::for_set(problem.set, problem.n);

  const PolyQ* f = &problem.fractions[0].num;
  const PolyQ* g = &problem.fractions[0].den;
  if (spec.method == Method::Poly || spec.method == Method::PolyPush) {
    PolyQ one = PolyQ::constant(problem.n, Rational(1));
    if (!(*g == one))
      throw std::invalid_argument("polynomial methods need denominator exactly 1");
  }

  // Incremental caches shared across orders.
  std::optional<PushforwardCache> single_cache;
  std::optional<UnivariateCache> uni_cache;
  std::optional<MultiPushforwardCache> multi_cache;
  if (spec.method == Method::Push)
    single_cache.emplace(*f, *g, oracle, table_opts(opts));
  else if (spec.method == Method::PolyPush)
    uni_cache.emplace(*f, oracle, table_opts(opts));
  else if (spec.method == Method::PushSum)
    multi_cache.emplace(problem.fractions, oracle, table_opts(opts));

  // Optional on-disk table reuse, keyed by provenance and depth.
  const int smax = spec.s_fixed.value_or(spec.dmax);
  const int depth_needed = spec.method == Method::PushSum ? 2 * spec.dmax + smax + 1
                                                          : 2 * spec.dmax + 1;
  std::optional<MomentTable> preloaded;
  std::string cache_path;
  if (!opts.cache_dir.empty() &&
      (single_cache || uni_cache || multi_cache)) {
    const std::string& prov = single_cache ? single_cache->table().provenance()
                              : uni_cache  ? uni_cache->table().provenance()
                                           : multi_cache->table().provenance();
    std::ostringstream name;
    name << opts.cache_dir << "/" << std::hex << fnv1a(prov.data(), prov.size()) << std::dec
         << "_d" << depth_needed << ".mtab";
    cache_path = name.str();
    try {
      MomentTable t = MomentTable::load_file(cache_path);
      if (t.mvars() == (spec.method == Method::PushSum ? 2 * problem.nfractions()
                        : spec.method == Method::PolyPush ? 1
                                                          : 2) &&
          t.maxdeg() >= depth_needed)
        preloaded = std::move(t);
    } catch (const std::exception&) {
      // no usable cached table; it will be written after the sweep
    }
  }

  for (int d = spec.dmin; d <= spec.dmax; ++d) {
    int s = spec.s_fixed.value_or(d);
    try {
      switch (spec.method) {
        case Method::Poly:
          rows.push_back(upper_bound_poly(*f, oracle, d, opts));
          break;
        case Method::PolyPush: {
          auto t0 = Clock::now();
          if (!preloaded) uni_cache->extend(2 * d + 1);
          const MomentTable& raw = preloaded ? *preloaded : uni_cache->table();
          MomentTable table = opts.normalize_table ? raw.normalized() : raw;
          double ms = seconds_since(t0);
          Basis basis = make_basis(1, d);
          TableSource src(table);
          MatrixXld A = localizing_matrix_ld(PolyQ::variable(1, 0), src, basis);
          MatrixXld B = moment_matrix_ld(src, basis);
          auto t1 = Clock::now();
          GenEigOptions gopts;
          gopts.rank_tol = opts.rank_tol;
          GenEigResult ge = gen_eig_min_ld(A, B, gopts);
          if (table.exact() && problem.n <= 3 && !ge.unbounded && !ge.infeasible &&
              (ge.min_pivot < kExactRefineBelow || ge.range_restricted))
            ge.value = exact_pencil_refine(table, basis, Mono{1}, Mono{0}, ge.value);
          rows.push_back(pencil_result("poly-push", 1, problem.n, d, ge, ms,
                                       seconds_since(t1), true));
          break;
        }
        case Method::Std:
          rows.push_back(upper_bound_rational(*f, *g, oracle, d, opts));
          break;
        case Method::Push: {
          auto t0 = Clock::now();
          if (!preloaded) single_cache->extend(2 * d + 1);
          double ms = seconds_since(t0);
          rows.push_back(rational_pushforward_from_table(
              preloaded ? *preloaded : single_cache->table(), problem.n, d, opts, ms));
          break;
        }
        case Method::StdSum:
          rows.push_back(upper_bound_sum(problem, d, s, opts));
          break;
        case Method::PushSum: {
          auto t0 = Clock::now();
          if (!preloaded) multi_cache->extend(2 * d + s + 1);
          double ms = seconds_since(t0);
          rows.push_back(sum_pushforward_from_table(
              problem, preloaded ? *preloaded : multi_cache->table(), d, s, opts, ms));
          break;
        }
      }
    } catch (const std::exception& e) {
      HierarchyResult r;
      r.method = method_name(spec.method);
      r.N = problem.nfractions();
      r.n = problem.n;
      r.d = d;
      r.s = sum ? s : -1;
      r.bound = std::numeric_limits<double>::quiet_NaN();
      r.status = std::string("error: ") + e.what();
      rows.push_back(r);
    }
  }

  if (!cache_path.empty() && !preloaded) {
    try {
      if (single_cache && single_cache->table().maxdeg() >= depth_needed)
        single_cache->table().save_file(cache_path);
      else if (uni_cache && uni_cache->table().maxdeg() >= depth_needed)
        uni_cache->table().save_file(cache_path);
      else if (multi_cache && multi_cache->table().maxdeg() >= depth_needed)
        multi_cache->table().save_file(cache_path);
    } catch (const std::exception&) {
      // caching is best-effort
    }
  }
  return rows;
}

}  // namespace ratmin
