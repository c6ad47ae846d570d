#ifndef RATMIN_SDP_HPP
#define RATMIN_SDP_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ratmin/moment_matrix.hpp"

namespace ratmin {

// One linear matrix inequality F0 + sum_j x_j F[j] >= 0.
struct SdpBlock {
  SymMatrix F0;
  std::vector<SymMatrix> F;
};

// maximize objective . x subject to every block being PSD.
struct SdpProblem {
  int nvars = 0;
  std::vector<double> objective;
  std::vector<SdpBlock> blocks;
  std::vector<double> init_x;  // optional strictly feasible hint; may be empty

  void validate() const;
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, MaxIter };

std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIter;
  std::vector<double> x;
  double objective = 0.0;
  double gap = 0.0;           // relative duality gap at exit
  double max_residual = 0.0;  // worst primal/dual feasibility residual
  int iterations = 0;
};

struct SdpOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-8;
  int max_iter = 200;
  int dim_cap = 500;
};

// Dense primal-dual path-following with Nesterov-Todd scaling and a
// predictor-corrector centering rule. Built for the small dense blocks
// this project produces; refuses anything above the dimension cap.
SdpSolution sdp_solve(const SdpProblem& problem, const SdpOptions& opts = {});

// Value of one block's LMI at x.
SymMatrix sdp_block_value(const SdpBlock& block, std::span<const double> x);

// Smallest eigenvalue over all blocks at x; >= 0 means feasible.
double sdp_feasibility_margin(const SdpProblem& problem, std::span<const double> x);

// Sparse block-diagonal text export (SDPA initial-format layout) for
// cross-checks against external solvers. The exported problem is the
// equivalent minimization, see README.
void export_sdpa(const SdpProblem& problem, std::ostream& os);

}  // namespace ratmin

#endif
