#ifndef RATMIN_PROBLEM_IO_HPP
#define RATMIN_PROBLEM_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratmin/hierarchy.hpp"
#include "ratmin/problem.hpp"

namespace ratmin {

// JSON problem document: {"n":2, "set":"box", "fractions":[{"num":[...],
// "den":[...]}]} where each polynomial is a list of {"coef": "num/den" or
// number, "exps": [ints]}. See README for a full example.
Problem parse_problem(const std::string& path);
Problem parse_problem_text(const std::string& text, const std::string& origin = "<string>");

// Canonical emission (graded-lex terms, string rationals); parse followed
// by emit is a fixed point.
std::string emit_problem(const Problem& problem);

// f = sum x_i^{2n}, g = prod x_i^2 on the box; the minimum is exactly n.
Problem gen_example1(int n);

// Random quadratic ratio x'Ax / x'Bx on the box, B made positive
// definite, numerator shifted by the sampled minimum so the optimum
// lands near zero. Deterministic in the seed.
Problem gen_random_rayleigh(int n, std::uint64_t seed, std::uint64_t mc_samples);

// Sum variant with denominators 1 + x'B_i x; only the first numerator is
// shifted.
Problem gen_random_sum(int N, int n, std::uint64_t seed, std::uint64_t mc_samples);

// CSV rows in a fixed format: values at 6 significant digits, times at
// two decimals. Same results (timings aside) give byte-identical files.
void emit_table(const std::vector<HierarchyResult>& results, std::ostream& os,
                const std::string& metadata = "");
void emit_table_file(const std::vector<HierarchyResult>& results, const std::string& path,
                     const std::string& metadata = "");

std::string format_value(double v);  // the 6-significant-digit rule

struct RunConfig {
  // Problem source: file path, or generator name + parameters.
  std::string problem_path;
  std::string generate;  // "example1" | "rayleigh" | "sum"
  int n = 2;
  int N = 1;
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 1000000;

  Method method = Method::Push;
  int dmin = 1;
  int dmax = 1;
  std::optional<int> s_fixed;  // empty: s = d

  CoeffMode coeff = CoeffMode::Exact;
  bool oracle_check = false;
  bool pfm_u1_form = false;
  std::string out_path;        // empty: stdout
  std::string cache_dir;       // empty: no table caching
  std::string export_sdpa_path;

  void validate() const;
};

Problem load_or_generate(const RunConfig& cfg);

struct RunOutcome {
  std::vector<HierarchyResult> results;
  std::vector<std::string> warnings;
  bool oracle_check_passed = true;
};

RunOutcome execute_run(const RunConfig& cfg, std::ostream& log);

}  // namespace ratmin

#endif
