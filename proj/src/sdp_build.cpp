#include "ratmin/sdp_build.hpp"

#include <cmath>
#include <stdexcept>

namespace ratmin {

namespace {

// x = (a, h_2 coeffs, ..., h_N coeffs); h_i coefficient t starts at
// 1 + (i-2)*B + t, and t = 0 is the constant since bases open with it.
std::vector<double> warm_start(int nvars, int multiplier_count,
                               const std::vector<double>& frac_mins) {
  const int N = int(frac_mins.size());
  std::vector<double> x(std::size_t(nvars), 0.0);
  double a = 0.0;
  for (int i = 0; i < N; ++i) a += frac_mins[std::size_t(i)];
  for (int i = 2; i <= N; ++i) {
    double mi = frac_mins[std::size_t(i - 1)];
    double delta = 0.5 * (1.0 + std::abs(mi));
    x[std::size_t(1 + (i - 2) * multiplier_count)] = -mi + delta;
    a -= delta;
  }
  x[0] = a - 1.0 - 0.5 * std::abs(a);
  return x;
}

SdpProblem assemble(const std::vector<PolyQ>& nums, const std::vector<PolyQ>& dens,
                    const PolyQ& first_weight, const MomentSource& src, int d, int s,
                    const std::vector<double>* frac_mins) {
  const int N = int(nums.size());
  Basis basis = make_basis(src.nvars(), d);
  Basis mult = make_basis(src.nvars(), s);
  const int B = int(mult.size());

  SdpProblem p;
  p.nvars = 1 + (N - 1) * B;
  p.objective.assign(std::size_t(p.nvars), 0.0);
  p.objective[0] = 1.0;

  const int dim = int(basis.size());
  auto zero_block = [&](const SymMatrix& F0) {
    SdpBlock b;
    b.F0 = F0;
    b.F.assign(std::size_t(p.nvars), SymMatrix(dim));
    return b;
  };

  // First constraint.
  SdpBlock first = zero_block(localizing_matrix(nums[0], src, basis));
  first.F[0] = SymMatrix::linear(SymMatrix(dim), localizing_matrix(dens[0], src, basis), -1.0);
  for (int i = 2; i <= N; ++i)
    for (int t = 0; t < B; ++t) {
      PolyQ q = PolyQ::monomial(src.nvars(), mult.elems[std::size_t(t)], Rational(1)) *
                first_weight;
      first.F[std::size_t(1 + (i - 2) * B + t)] =
          SymMatrix::linear(SymMatrix(dim), localizing_matrix(q, src, basis), -1.0);
    }
  p.blocks.push_back(std::move(first));

  // One block per remaining fraction.
  for (int i = 2; i <= N; ++i) {
    SdpBlock blk = zero_block(localizing_matrix(nums[std::size_t(i - 1)], src, basis));
    for (int t = 0; t < B; ++t) {
      PolyQ q = PolyQ::monomial(src.nvars(), mult.elems[std::size_t(t)], Rational(1)) *
                dens[std::size_t(i - 1)];
      blk.F[std::size_t(1 + (i - 2) * B + t)] = localizing_matrix(q, src, basis);
    }
    p.blocks.push_back(std::move(blk));
  }

  if (frac_mins && int(frac_mins->size()) == N) p.init_x = warm_start(p.nvars, B, *frac_mins);
  return p;
}

}  // namespace

SdpProblem build_sum_standard(const std::vector<Fraction>& fractions, const MomentOracle& oracle,
                              int d, int s, const std::vector<double>* frac_mins) {
  if (fractions.empty()) throw std::invalid_argument("need at least one fraction");
  if (d < 0 || s < 0) throw std::invalid_argument("orders must be nonnegative");
  std::vector<PolyQ> nums, dens;
  for (const auto& fr : fractions) {
    if (fr.num.nvars() != oracle.n() || fr.den.nvars() != oracle.n())
      throw std::invalid_argument("fraction dimension does not match oracle");
    nums.push_back(fr.num);
    dens.push_back(fr.den);
  }
  OracleSource src(oracle);
  return assemble(nums, dens, dens[0], src, d, s, frac_mins);
}

SdpProblem facial_reduce(const SdpProblem& problem, const SymMatrix& moment_mat, double tol) {
  const int m = moment_mat.dim();
  Eigen::MatrixXd M = moment_mat.dense();
  Eigen::VectorXd dscale(m);
  for (int i = 0; i < m; ++i) {
    double mii = M(i, i);
    dscale(i) = mii > 0.0 ? 1.0 / std::sqrt(mii) : 1.0;
  }
  Eigen::MatrixXd Mhat = dscale.asDiagonal() * M * dscale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Mhat);
  double lmax = std::max(es.eigenvalues()(m - 1), 0.0);
  int r = 0;
  for (int i = 0; i < m; ++i)
    if (es.eigenvalues()(i) > tol * lmax) ++r;
  if (r == m || r == 0) return problem;
  Eigen::MatrixXd R = dscale.asDiagonal() * es.eigenvectors().rightCols(r);

  SdpProblem out;
  out.nvars = problem.nvars;
  out.objective = problem.objective;
  out.init_x = problem.init_x;
  for (const auto& b : problem.blocks) {
    if (b.F0.dim() != m) {
      out.blocks.push_back(b);
      continue;
    }
    SdpBlock nb;
    nb.F0 = SymMatrix::from_dense(R.transpose() * b.F0.dense() * R);
    for (const auto& f : b.F)
      nb.F.push_back(SymMatrix::from_dense(R.transpose() * f.dense() * R));
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

SdpProblem build_sum_pushforward(int nfractions, const MomentTable& table, int d, int s,
                                 bool u1_form, const std::vector<double>* frac_mins) {
  if (nfractions < 1) throw std::invalid_argument("need at least one fraction");
  if (d < 0 || s < 0) throw std::invalid_argument("orders must be nonnegative");
  const int mvars = 2 * nfractions;
  if (table.mvars() != mvars)
    throw std::invalid_argument("table variable count does not match fraction count");
  std::vector<PolyQ> nums, dens;
  for (int i = 0; i < nfractions; ++i) {
    nums.push_back(PolyQ::variable(mvars, 2 * i));      // u_i
    dens.push_back(PolyQ::variable(mvars, 2 * i + 1));  // v_i
  }
  TableSource src(table);
  return assemble(nums, dens, u1_form ? nums[0] : dens[0], src, d, s, frac_mins);
}

}  // namespace ratmin
