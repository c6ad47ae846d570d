#ifndef RATMIN_HIERARCHY_HPP
#define RATMIN_HIERARCHY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ratmin/eig.hpp"
#include "ratmin/moments.hpp"
#include "ratmin/problem.hpp"
#include "ratmin/sdp.hpp"

namespace ratmin {

enum class Method { Std, Push, StdSum, PushSum, Poly, PolyPush };

std::string method_name(Method m);
Method parse_method(const std::string& name);
bool is_sum_method(Method m);

enum class CoeffMode { Exact, Float };

struct HierarchyOptions {
  CoeffMode coeff = CoeffMode::Exact;
  bool normalize_table = true;   // rescale pushforward tables to unit mass
  double rank_tol = 1e-12;       // surfaced from the pencil solver
  SdpOptions sdp = tight_sdp_defaults();
  static SdpOptions tight_sdp_defaults() {
    // The per-order values feed difference and monotonicity checks, so the
    // drivers ask for more than the solver's stock tolerances.
    SdpOptions o;
    o.gap_tol = 1e-9;
    o.feas_tol = 1e-11;
    return o;
  }
  bool pfm_u1_form = false;      // literal u_1 multiplier weight, see README
  std::size_t table_entry_cap = std::size_t(1) << 26;
  std::uint64_t warm_start_samples = 10000;  // per-fraction sampled minima
  std::uint64_t warm_start_seed = 20240601;
  std::string cache_dir;  // persist pushforward tables across runs when set
};

// One order of one hierarchy: the bound, where the time went, and how
// trustworthy the number is. Sum-of-fractions values converge to the
// minimum but are not order-by-order certified; `certified` records that.
struct HierarchyResult {
  std::string method;
  int N = 1;
  int n = 0;
  int d = 0;
  int s = -1;  // -1 when the method has no truncation order
  double bound = 0.0;
  bool unbounded = false;
  double moment_seconds = 0.0;
  double solve_seconds = 0.0;
  std::string status;  // "optimal", "maxiter", "error: ..."
  bool certified = false;
  double min_pivot = 0.0;  // smallest kept pivot of the constraint-side matrix
};

HierarchyResult upper_bound_poly(const PolyQ& f, const MomentOracle& oracle, int d,
                                 const HierarchyOptions& opts = {});
HierarchyResult upper_bound_poly_pushforward(const PolyQ& f, const MomentOracle& oracle, int d,
                                             const HierarchyOptions& opts = {});
HierarchyResult upper_bound_rational(const PolyQ& f, const PolyQ& g, const MomentOracle& oracle,
                                     int d, const HierarchyOptions& opts = {});
HierarchyResult upper_bound_rational_pushforward(const PolyQ& f, const PolyQ& g,
                                                 const MomentOracle& oracle, int d,
                                                 const HierarchyOptions& opts = {});
HierarchyResult upper_bound_sum(const Problem& problem, int d, int s,
                                const HierarchyOptions& opts = {});
HierarchyResult upper_bound_sum_pushforward(const Problem& problem, int d, int s,
                                            const HierarchyOptions& opts = {});

struct SweepSpec {
  Method method = Method::Push;
  int dmin = 1;
  int dmax = 1;
  std::optional<int> s_fixed;  // empty = match d (the usual choice)
};

// Runs one hierarchy over a range of orders. Moment tables are extended
// incrementally across orders, never rebuilt; a failing order is recorded
// as an error row and the sweep continues.
std::vector<HierarchyResult> run_sweep(const Problem& problem, const SweepSpec& spec,
                                       const HierarchyOptions& opts = {});

// 1000-point quasi-random positivity spot-check of the denominators.
// Returns warnings (empty when nothing suspicious); not a proof.
std::vector<std::string> denominator_warnings(const Problem& problem);

}  // namespace ratmin

#endif
