#ifndef RATMIN_EIG_HPP
#define RATMIN_EIG_HPP

#include <Eigen/Dense>
#include <vector>

#include "ratmin/moment_matrix.hpp"

namespace ratmin {

// Symmetric-definite pencil (A, B); B is meant to be PSD.
struct Pencil {
  SymMatrix A;
  SymMatrix B;
};

// All eigenvalues, ascending.
std::vector<double> sym_eig(const SymMatrix& M);

struct SymEigPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};
SymEigPairs sym_eig_full(const SymMatrix& M);

// Pivoted Cholesky. For a numerically PD input, factor holds the full
// lower factor with P = identity ordering applied (P M P^T = L L^T).
// Otherwise rank < dim and the first `rank` columns of `factor`, mapped
// back through `perm`, span the numerical range.
struct CholeskyReport {
  bool pd = false;
  int rank = 0;
  double min_pivot = 0.0;
  Eigen::MatrixXd factor;     // dim x rank lower-trapezoidal (permuted rows)
  std::vector<int> perm;      // pivot order: row i of factor is row perm[i] of M
  double schur_min_diag = 0.0;  // extremes of the rejected trailing block
  double schur_max_abs = 0.0;
};
CholeskyReport cholesky(const SymMatrix& M, double tol = 1e-12);

// True if M + shift*I admits a Cholesky factorization under the pivoted
// tolerance test, i.e. M is PSD up to `shift` slack.
bool is_psd(const SymMatrix& M, double tol = 1e-12);

struct GenEigOptions {
  // Pivot/eigenvalue threshold relative to the largest diagonal entry.
  double rank_tol = 1e-12;
};

struct GenEigResult {
  double value = 0.0;
  bool unbounded = false;    // B vanishes and A is PSD: sup is +infinity
  bool infeasible = false;   // A indefinite where B vanishes: no feasible a
  int b_rank = 0;
  double min_pivot = 0.0;    // smallest kept pivot of the scaled B factor
  bool range_restricted = false;
  bool complement_psd = true;  // A-block on the B-null directions checked PSD
};

// sup { a : A - a B is PSD } for PSD B, computed by congruence reduction.
// Rank-deficient B restricts the pencil to the numerical range of B and
// reports whether the complementary A-block passed its PSD check.
GenEigResult gen_eig_min(const Pencil& pencil, const GenEigOptions& opts = {});

// Same computation on extended-precision inputs, used by the hierarchy
// drivers together with localizing_matrix_ld.
GenEigResult gen_eig_min_ld(const MatrixXld& A, const MatrixXld& B,
                            const GenEigOptions& opts = {});

}  // namespace ratmin

#endif
