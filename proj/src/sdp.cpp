#include "ratmin/sdp.hpp"

#include <Eigen/Dense>

#include "ratmin/eig.hpp"
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ratmin {

void SdpProblem::validate() const {
  if (nvars < 1) throw std::invalid_argument("SDP needs at least one variable");
  if (int(objective.size()) != nvars) throw std::invalid_argument("objective length mismatch");
  if (blocks.empty()) throw std::invalid_argument("SDP needs at least one block");
  for (const auto& b : blocks) {
    if (int(b.F.size()) != nvars)
      throw std::invalid_argument("block has wrong number of coefficient matrices");
    for (const auto& f : b.F)
      if (f.dim() != b.F0.dim()) throw std::invalid_argument("block matrices must share dimension");
  }
  if (!init_x.empty() && int(init_x.size()) != nvars)
    throw std::invalid_argument("init_x length mismatch");
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Unbounded: return "unbounded";
    case SdpStatus::MaxIter: return "maxiter";
  }
  return "unknown";
}

SymMatrix sdp_block_value(const SdpBlock& block, std::span<const double> x) {
  SymMatrix out = block.F0;
  for (std::size_t j = 0; j < block.F.size(); ++j) {
    if (x[j] == 0.0) continue;
    out = SymMatrix::linear(out, block.F[j], x[j]);
  }
  return out;
}

double sdp_feasibility_margin(const SdpProblem& problem, std::span<const double> x) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& b : problem.blocks) {
    auto ev = sym_eig(sdp_block_value(b, x));
    margin = std::min(margin, ev.front());
  }
  return margin;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct BlockState {
  MatrixXd F0;
  std::vector<MatrixXd> F;
  MatrixXd X, S;  // primal matrix, dual slack
  int m = 0;
};

double inner(const MatrixXd& A, const MatrixXd& B) { return (A.array() * B.array()).sum(); }

MatrixXd symm(const MatrixXd& A) { return 0.5 * (A + A.transpose()); }

// Largest step in (0,1] keeping X + alpha*D PSD, via the Cholesky of X.
double max_step(const MatrixXd& X, const MatrixXd& D) {
  Eigen::LLT<MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) {
    MatrixXd Xs = X + 1e-12 * X.trace() / X.rows() * MatrixXd::Identity(X.rows(), X.cols());
    llt.compute(Xs);
    if (llt.info() != Eigen::Success) return 0.0;
  }
  MatrixXd L = llt.matrixL();
  MatrixXd G = L.triangularView<Eigen::Lower>().solve(D);
  G = L.triangularView<Eigen::Lower>().solve(G.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symm(G), Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

// Square factor G with G G^T = M. Cholesky when possible; otherwise an
// eigenvalue square root with a tiny floor, which the scaling-point
// formula accepts equally.
MatrixXd factor_psd(const MatrixXd& M) {
  Eigen::LLT<MatrixXd> llt(M);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symm(M));
  VectorXd lam = es.eigenvalues();
  double floor = 1e-15 * std::max(lam(lam.size() - 1), 1.0);
  for (int i = 0; i < lam.size(); ++i) lam(i) = std::sqrt(std::max(lam(i), floor));
  return es.eigenvectors() * lam.asDiagonal();
}

MatrixXd inv_psd(const MatrixXd& M) {
  Eigen::LLT<MatrixXd> llt(M);
  if (llt.info() == Eigen::Success)
    return symm(llt.solve(MatrixXd::Identity(M.rows(), M.cols())));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symm(M));
  VectorXd lam = es.eigenvalues();
  double floor = 1e-15 * std::max(lam(lam.size() - 1), 1.0);
  for (int i = 0; i < lam.size(); ++i) lam(i) = 1.0 / std::max(lam(i), floor);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

// Nesterov-Todd scaling point: T with T T^T = W and W S W = X.
MatrixXd nt_scaling(const MatrixXd& X, const MatrixXd& S) {
  MatrixXd Lx = factor_psd(X), Ls = factor_psd(S);
  Eigen::JacobiSVD<MatrixXd> svd(Ls.transpose() * Lx,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  VectorXd sing = svd.singularValues();
  for (int i = 0; i < sing.size(); ++i) sing(i) = 1.0 / std::sqrt(std::max(sing(i), 1e-300));
  return Lx * svd.matrixV() * sing.asDiagonal();
}

}  // namespace

SdpSolution sdp_solve(const SdpProblem& problem, const SdpOptions& opts) {
  problem.validate();
  const int n = problem.nvars;
  if (n > opts.dim_cap)
    throw ResourceLimitError("SDP variable count above cap", std::size_t(n));
  for (const auto& b : problem.blocks)
    if (b.F0.dim() > opts.dim_cap)
      throw ResourceLimitError("SDP block dimension above cap", std::size_t(b.F0.dim()));

  std::vector<BlockState> blocks;
  int total_m = 0;
  double f0_scale = 1.0;
  for (const auto& b : problem.blocks) {
    BlockState st;
    st.F0 = b.F0.dense();
    for (const auto& f : b.F) st.F.push_back(f.dense());
    st.m = b.F0.dim();
    total_m += st.m;
    f0_scale = std::max(f0_scale, st.F0.cwiseAbs().maxCoeff());
    blocks.push_back(std::move(st));
  }
  VectorXd c(n);
  for (int j = 0; j < n; ++j) c(j) = problem.objective[std::size_t(j)];
  const double c_scale = std::max(1.0, c.cwiseAbs().maxCoeff());

  // Start from the feasibility hint when it is strictly interior,
  // otherwise from a cold identity-scaled iterate.
  VectorXd x = VectorXd::Zero(n);
  bool hinted = false;
  if (!problem.init_x.empty()) {
    VectorXd xh(n);
    for (int j = 0; j < n; ++j) xh(j) = problem.init_x[std::size_t(j)];
    bool interior = true;
    for (auto& st : blocks) {
      MatrixXd Sh = st.F0;
      for (int j = 0; j < n; ++j) Sh += xh(j) * st.F[j];
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(symm(Sh), Eigen::EigenvaluesOnly);
      double scale = std::max(1.0, Sh.cwiseAbs().maxCoeff());
      if (es.eigenvalues()(0) <= 1e-8 * scale) {
        interior = false;
        break;
      }
    }
    if (interior) {
      x = xh;
      hinted = true;
    }
  }
  for (auto& st : blocks) {
    if (hinted) {
      st.S = st.F0;
      for (int j = 0; j < n; ++j) st.S += x(j) * st.F[j];
      st.S = symm(st.S);
    } else {
      st.S = std::max(1.0, f0_scale) * MatrixXd::Identity(st.m, st.m);
    }
    st.X = std::max(1.0, c_scale) * MatrixXd::Identity(st.m, st.m);
  }

  SdpSolution sol;
  sol.x.assign(std::size_t(n), 0.0);
  SdpSolution best = sol;
  double best_merit = std::numeric_limits<double>::infinity();
  int best_iter = 0;

  MatrixXd Mschur(n, n);
  VectorXd rp(n), rhs(n), dx(n), dx_aff(n);
  std::vector<MatrixXd> Rd(blocks.size()), T(blocks.size()), Sinv(blocks.size());
  std::vector<std::vector<MatrixXd>> G(blocks.size());  // T^T F_j T per block
  std::vector<MatrixXd> dS(blocks.size()), dX(blocks.size());
  std::vector<MatrixXd> dS_aff(blocks.size()), dX_aff(blocks.size());

  double sigma_floor = 0.0;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    // Residuals and merit quantities.
    double mu = 0.0;
    for (auto& st : blocks) mu += inner(st.X, st.S);
    mu /= double(total_m);
    double pobj = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k) pobj += inner(blocks[k].F0, blocks[k].X);
    double dobj = c.dot(x);

    double dinf = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      auto& st = blocks[k];
      MatrixXd R = st.F0 - st.S;
      for (int j = 0; j < n; ++j) R += x(j) * st.F[j];
      Rd[k] = symm(R);
      dinf = std::max(dinf, Rd[k].cwiseAbs().maxCoeff());
    }
    for (int j = 0; j < n; ++j) {
      double a = -c(j);
      for (auto& st : blocks) a -= inner(st.F[std::size_t(j)], st.X);
      rp(j) = a;
    }
    double pinf = rp.cwiseAbs().maxCoeff();

    double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    double pinf_rel = pinf / (1.0 + c_scale);
    double dinf_rel = dinf / (1.0 + f0_scale);
    sol.gap = relgap;
    sol.max_residual = std::max(pinf_rel, dinf_rel);
    sol.iterations = iter;
    for (int j = 0; j < n; ++j) sol.x[std::size_t(j)] = x(j);
    sol.objective = dobj;
    if (relgap + sol.max_residual < 0.999 * best_merit) {
      best_merit = relgap + sol.max_residual;
      best = sol;
      best_iter = iter;
    }
    if (iter - best_iter > 30) break;  // stalled; the cap would buy nothing

    if (relgap <= opts.gap_tol && pinf_rel <= opts.feas_tol && dinf_rel <= opts.feas_tol) {
      sol.status = SdpStatus::Optimal;
      return sol;
    }
    // Divergence exits. The programs this project builds are always
    // feasible, so these paths signal malformed external input.
    if (dobj > 1e12 * (1.0 + f0_scale) && dinf_rel <= opts.feas_tol) {
      sol.status = SdpStatus::Unbounded;
      return sol;
    }
    if (pobj < -1e12 * (1.0 + c_scale) && pinf_rel <= opts.feas_tol) {
      sol.status = SdpStatus::Infeasible;
      return sol;
    }

    // Scaling and Schur complement.
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      auto& st = blocks[k];
      T[k] = nt_scaling(st.X, st.S);
      Sinv[k] = inv_psd(st.S);
      G[k].resize(std::size_t(n));
      for (int j = 0; j < n; ++j)
        G[k][std::size_t(j)] = symm(T[k].transpose() * st.F[std::size_t(j)] * T[k]);
    }
    for (int j = 0; j < n; ++j)
      for (int l = j; l < n; ++l) {
        double v = 0.0;
        for (std::size_t k = 0; k < blocks.size(); ++k)
          v += inner(G[k][std::size_t(j)], G[k][std::size_t(l)]);
        Mschur(j, l) = Mschur(l, j) = v;
      }

    auto solve_direction = [&](double sigma_mu, const std::vector<MatrixXd>* corr,
                               VectorXd& dx_out, std::vector<MatrixXd>& dS_out,
                               std::vector<MatrixXd>& dX_out) {
      // Zt0 = target - X (- correction); the residual and step terms are
      // folded in through W(.)W below.
      std::vector<MatrixXd> Zt0(blocks.size());
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        Zt0[k] = sigma_mu * Sinv[k] - blocks[k].X;
        if (corr) Zt0[k] -= (*corr)[k];
      }
      std::vector<MatrixXd> scaled(blocks.size());
      for (std::size_t k = 0; k < blocks.size(); ++k)
        scaled[k] = Zt0[k] - T[k] * (T[k].transpose() * Rd[k] * T[k]) * T[k].transpose();
      for (int j = 0; j < n; ++j) {
        double v = -rp(j);
        for (std::size_t k = 0; k < blocks.size(); ++k)
          v += inner(blocks[k].F[std::size_t(j)], scaled[k]);
        rhs(j) = v;
      }
      Eigen::LDLT<MatrixXd> ldlt(Mschur);
      dx_out = ldlt.solve(rhs);
      dx_out += ldlt.solve(rhs - Mschur * dx_out);  // one refinement pass
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        auto& st = blocks[k];
        MatrixXd ds = Rd[k];
        for (int j = 0; j < n; ++j) ds += dx_out(j) * st.F[std::size_t(j)];
        dS_out[k] = symm(ds);
        dX_out[k] =
            symm(Zt0[k] - T[k] * (T[k].transpose() * dS_out[k] * T[k]) * T[k].transpose());
      }
    };

    // Predictor: pure Newton step toward complementarity zero.
    solve_direction(0.0, nullptr, dx_aff, dS_aff, dX_aff);
    double ap = 1.0, ad = 1.0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      ap = std::min(ap, max_step(blocks[k].X, dX_aff[k]));
      ad = std::min(ad, max_step(blocks[k].S, dS_aff[k]));
    }
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      mu_aff += inner(blocks[k].X + 0.98 * ap * dX_aff[k], blocks[k].S + 0.98 * ad * dS_aff[k]);
    mu_aff = std::max(mu_aff / double(total_m), 0.0);
    double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
    sigma = std::min(1.0, std::max({sigma, sigma_floor, 1e-8}));

    // Corrector with adaptive centering.
    solve_direction(sigma * mu, nullptr, dx, dS, dX);
    ap = 1.0;
    ad = 1.0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      ap = std::min(ap, max_step(blocks[k].X, dX[k]));
      ad = std::min(ad, max_step(blocks[k].S, dS[k]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    // Re-center on the next pass when progress collapses.
    sigma_floor = (std::min(ap, ad) < 1e-3) ? 0.5 : 0.0;

    x += ad * dx;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k].X = symm(blocks[k].X + ap * dX[k]);
      blocks[k].S = symm(blocks[k].S + ad * dS[k]);
    }
  }

  best.status = SdpStatus::MaxIter;
  return best;
}

void export_sdpa(const SdpProblem& problem, std::ostream& os) {
  problem.validate();
  // Exported as the equivalent minimization min (-objective).x with
  // constraint sum x_j F_j - (-F0) >= 0.
  os << problem.nvars << " = mDIM\n";
  os << problem.blocks.size() << " = nBLOCK\n";
  for (std::size_t k = 0; k < problem.blocks.size(); ++k)
    os << problem.blocks[k].F0.dim() << (k + 1 < problem.blocks.size() ? " " : " = bLOCKsTRUCT\n");
  for (int j = 0; j < problem.nvars; ++j) {
    double cj = problem.objective[std::size_t(j)];
    os << (cj == 0.0 ? 0.0 : -cj) << (j + 1 < problem.nvars ? " " : "\n");
  }
  auto emit = [&os](int matno, int blk, const SymMatrix& M, double scale) {
    for (int i = 0; i < M.dim(); ++i)
      for (int j = i; j < M.dim(); ++j)
        if (M.at(i, j) != 0.0)
          os << matno << " " << blk << " " << (i + 1) << " " << (j + 1) << " "
             << scale * M.at(i, j) << "\n";
  };
  for (std::size_t k = 0; k < problem.blocks.size(); ++k)
    emit(0, int(k) + 1, problem.blocks[k].F0, -1.0);
  for (int j = 0; j < problem.nvars; ++j)
    for (std::size_t k = 0; k < problem.blocks.size(); ++k)
      emit(j + 1, int(k) + 1, problem.blocks[k].F[std::size_t(j)], 1.0);
}

}  // namespace ratmin
