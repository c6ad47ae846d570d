#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ratmin/brute.hpp"
#include "ratmin/sdp.hpp"
#include "ratmin/sdp_build.hpp"
#include "test_util.hpp"

using namespace ratmin;

namespace {

SdpProblem scalar_problem(std::vector<double> diag_entries) {
  // maximize a s.t. diag(entries) - a I >= 0
  SdpProblem p;
  p.nvars = 1;
  p.objective = {1.0};
  int dim = int(diag_entries.size());
  SdpBlock b;
  b.F0 = SymMatrix(dim);
  for (int i = 0; i < dim; ++i) b.F0.at(i, i) = diag_entries[std::size_t(i)];
  SymMatrix negI(dim);
  for (int i = 0; i < dim; ++i) negI.at(i, i) = -1.0;
  b.F = {negI};
  p.blocks.push_back(b);
  return p;
}

}  // namespace

TEST_CASE("scalar problems") {
  SdpSolution s1 = sdp_solve(scalar_problem({2.0}));
  CHECK(s1.status == SdpStatus::Optimal);
  CHECK(s1.objective == doctest::Approx(2.0).epsilon(1e-6));

  SdpSolution s2 = sdp_solve(scalar_problem({2.0, 3.0}));
  CHECK(s2.status == SdpStatus::Optimal);
  CHECK(s2.objective == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("pencil problems match the eigensolver") {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 2 + int(rng.bits() % 7);
    SymMatrix A = testutil::random_pd_matrix(rng, dim);
    SymMatrix B = testutil::random_pd_matrix(rng, dim);
    SdpProblem p;
    p.nvars = 1;
    p.objective = {1.0};
    SdpBlock blk;
    blk.F0 = A;
    blk.F = {SymMatrix::linear(SymMatrix(dim), B, -1.0)};
    p.blocks.push_back(blk);
    SdpSolution sol = sdp_solve(p);
    REQUIRE(sol.status == SdpStatus::Optimal);
    double ge = gen_eig_min({A, B}).value;
    CHECK(std::abs(sol.objective - ge) <= 1e-6 * (1.0 + std::abs(ge)));
  }
}

TEST_CASE("solver never reports more than the feasible certificate") {
  Rng rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    int dim = 2 + int(rng.bits() % 6);
    SymMatrix A = testutil::random_pd_matrix(rng, dim);
    SymMatrix B = testutil::random_pd_matrix(rng, dim);
    SdpProblem p;
    p.nvars = 1;
    p.objective = {1.0};
    SdpBlock blk;
    blk.F0 = A;
    blk.F = {SymMatrix::linear(SymMatrix(dim), B, -1.0)};
    p.blocks.push_back(blk);
    SdpSolution sol = sdp_solve(p);
    REQUIRE(sol.status == SdpStatus::Optimal);
    double margin = sdp_feasibility_margin(p, sol.x);
    CHECK(margin >= -1e-6 * (1.0 + B.max_abs()));
  }
}

TEST_CASE("dimension caps are enforced") {
  SdpOptions opts;
  opts.dim_cap = 3;
  CHECK_THROWS_AS(sdp_solve(scalar_problem({1.0, 2.0, 3.0, 4.0}), opts), ResourceLimitError);
}

namespace {

Problem two_fraction_line(Rng& rng) {
  Problem prob;
  prob.n = 1;
  prob.set = SetKind::Box;
  for (int i = 0; i < 2; ++i) {
    PolyQ num = testutil::random_poly(rng, 1, 2, 3, 2);
    PolyQ den = testutil::random_positive_quadratic(rng, 1);
    prob.fractions.push_back({num, den});
  }
  return prob;
}

// Independent route for the N=2, n=1, d=s=1 program: bisection over a
// with an inner search over the affine multiplier h2 = c0 + c1 x. The
// block min-eigenvalue is concave in (c0, c1), so coarse-to-fine grid
// refinement down to 1e-3 locates the maximizer.
double grid_bisection_value(const SdpProblem& p) {
  REQUIRE(p.nvars == 3);
  auto block_eig_min = [&](double a, double c0, double c1) {
    double worst = 1e300;
    std::vector<double> x{a, c0, c1};
    for (const auto& b : p.blocks) {
      auto ev = sym_eig(sdp_block_value(b, x));
      worst = std::min(worst, ev.front());
    }
    return worst;
  };
  auto best_multiplier = [&](double a) {
    double bc0 = 0.0, bc1 = 0.0, best = -1e300;
    double span = 8.0;
    for (double step = 1.0; step >= 1e-3 / 2.0; step /= 4.0) {
      double nb0 = bc0, nb1 = bc1;
      for (double c0 = bc0 - span; c0 <= bc0 + span; c0 += step)
        for (double c1 = bc1 - span; c1 <= bc1 + span; c1 += step) {
          double v = block_eig_min(a, c0, c1);
          if (v > best) {
            best = v;
            nb0 = c0;
            nb1 = c1;
          }
        }
      bc0 = nb0;
      bc1 = nb1;
      span = 4.0 * step;
    }
    return best;
  };
  double lo = -64.0, hi = 64.0;
  REQUIRE(best_multiplier(lo) >= 0.0);
  REQUIRE(best_multiplier(hi) < 0.0);
  while (hi - lo > 1e-4) {
    double mid = 0.5 * (lo + hi);
    if (best_multiplier(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("two-fraction program agrees with the grid+bisection route") {
  Rng rng(101);
  Problem prob = two_fraction_line(rng);
  MomentOracle box = MomentOracle::box(1);
  SdpProblem p = build_sum_standard(prob.fractions, box, 1, 1);
  CHECK(p.nvars == 3);
  for (const auto& b : p.blocks) CHECK(b.F0.dim() == 2);
  CHECK(p.objective[0] == 1.0);
  CHECK(p.objective[1] == 0.0);
  CHECK(p.objective[2] == 0.0);

  SdpSolution sol = sdp_solve(p);
  REQUIRE(sol.status == SdpStatus::Optimal);
  double ref = grid_bisection_value(p);
  CHECK(std::abs(sol.objective - ref) <= 5e-3 * (1.0 + std::abs(ref)));
}

TEST_CASE("degenerate single-fraction builders reduce to the pencil") {
  Rng rng(57);
  MomentOracle box = MomentOracle::box(2);
  PolyQ f = testutil::random_poly(rng, 2, 2, 4, 2);
  PolyQ g = testutil::random_positive_quadratic(rng, 2);
  std::vector<Fraction> fr{{f, g}};

  SdpOptions tight;
  tight.gap_tol = 1e-9;
  tight.feas_tol = 1e-11;
  SdpProblem p = build_sum_standard(fr, box, 2, 1);
  CHECK(p.nvars == 1);
  REQUIRE(p.blocks.size() == 1);
  SdpSolution sol = sdp_solve(p, tight);
  REQUIRE(sol.status == SdpStatus::Optimal);
  Basis basis = make_basis(2, 2);
  OracleSource src(box);
  double pencil =
      gen_eig_min({localizing_matrix(f, src, basis), localizing_matrix(g, src, basis)}).value;
  CHECK(std::abs(sol.objective - pencil) <= 1e-6 * (1.0 + std::abs(pencil)));

  MomentTable t = pushforward_table_single(f, g, 2 * 2 + 1 + 1, box).normalized();
  SdpProblem pp = build_sum_pushforward(1, t, 2, 1);
  CHECK(pp.nvars == 1);
  SdpSolution psol = sdp_solve(pp, tight);
  REQUIRE(psol.status == SdpStatus::Optimal);
  Basis ibasis = make_basis(2, 2);
  TableSource tsrc(t);
  double ipencil = gen_eig_min({localizing_matrix(PolyQ::variable(2, 0), tsrc, ibasis),
                                localizing_matrix(PolyQ::variable(2, 1), tsrc, ibasis)})
                       .value;
  CHECK(std::abs(psol.objective - ipencil) <= 1e-6 * (1.0 + std::abs(ipencil)));
}

TEST_CASE("pushforward builder dimensions") {
  Rng rng(71);
  std::vector<Fraction> fr;
  for (int i = 0; i < 2; ++i)
    fr.push_back({testutil::random_poly(rng, 2, 2, 3, 2),
                  testutil::random_positive_quadratic(rng, 2)});
  MomentOracle box = MomentOracle::box(2);
  MomentTable t = pushforward_table_multi(fr, 2 * 2 + 1 + 1, box).normalized();
  SdpProblem p = build_sum_pushforward(2, t, 2, 1);
  CHECK(p.blocks[0].F0.dim() == 15);  // basis of degree <= 2 in 4 variables
  CHECK(p.nvars == 6);                // 1 + degree <= 1 multiplier coefficients
}

TEST_CASE("alternate first-constraint weight solves too") {
  Rng rng(91);
  std::vector<Fraction> fr;
  for (int i = 0; i < 2; ++i)
    fr.push_back({testutil::random_poly(rng, 2, 2, 3, 2),
                  testutil::random_positive_quadratic(rng, 2)});
  MomentOracle box = MomentOracle::box(2);
  MomentTable t = pushforward_table_multi(fr, 2 + 1 + 1, box).normalized();
  SdpProblem v1 = build_sum_pushforward(2, t, 1, 1, false);
  SdpProblem u1 = build_sum_pushforward(2, t, 1, 1, true);
  // Same shape, different first-block multiplier weight.
  CHECK(v1.nvars == u1.nvars);
  bool differ = false;
  for (std::size_t j = 1; j < v1.blocks[0].F.size() && !differ; ++j)
    for (int r = 0; r < v1.blocks[0].F0.dim() && !differ; ++r)
      for (int c = 0; c <= r && !differ; ++c)
        if (v1.blocks[0].F[j].at(r, c) != u1.blocks[0].F[j].at(r, c)) differ = true;
  CHECK(differ);
  SdpSolution su = sdp_solve(facial_reduce(u1, moment_matrix(TableSource(t), make_basis(4, 1))));
  CHECK(std::isfinite(su.objective));
}

TEST_CASE("order monotonicity on a random two-fraction instance") {
  Rng rng(83);
  Problem prob = two_fraction_line(rng);
  MomentOracle box = MomentOracle::box(1);

  // Larger multiplier space at fixed d: value can only go up.
  std::vector<double> by_s;
  for (int s = 0; s <= 2; ++s) {
    SdpSolution sol = sdp_solve(build_sum_standard(prob.fractions, box, 2, s));
    REQUIRE(sol.status == SdpStatus::Optimal);
    by_s.push_back(sol.objective);
  }
  CHECK(by_s[1] >= by_s[0] - 1e-6);
  CHECK(by_s[2] >= by_s[1] - 1e-6);

  // Larger matrices at fixed s: value can only go down.
  std::vector<double> by_d;
  for (int d = 1; d <= 3; ++d) {
    SdpSolution sol = sdp_solve(build_sum_standard(prob.fractions, box, d, 1));
    REQUIRE(sol.status == SdpStatus::Optimal);
    by_d.push_back(sol.objective);
  }
  CHECK(by_d[1] <= by_d[0] + 1e-6);
  CHECK(by_d[2] <= by_d[1] + 1e-6);
}

TEST_CASE("sdpa export layout") {
  SdpProblem p = scalar_problem({2.0, 3.0});
  std::ostringstream os;
  export_sdpa(p, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "1 = mDIM");
  std::getline(is, line);
  CHECK(line == "1 = nBLOCK");
  std::getline(is, line);
  CHECK(line == "2 = bLOCKsTRUCT");
  std::getline(is, line);
  CHECK(line == "-1");
}
