#include "ratmin/eig.hpp"

#include <cmath>
#include <stdexcept>

namespace ratmin {

namespace {

using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

MatrixXld to_ld(const SymMatrix& M) {
  MatrixXld out(M.dim(), M.dim());
  for (int i = 0; i < M.dim(); ++i)
    for (int j = 0; j < M.dim(); ++j) out(i, j) = static_cast<long double>(M.at(i, j));
  return out;
}

}  // namespace

std::vector<double> sym_eig(const SymMatrix& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");
  std::vector<double> v(static_cast<std::size_t>(M.dim()));
  for (int i = 0; i < M.dim(); ++i) v[std::size_t(i)] = es.eigenvalues()(i);
  return v;
}

SymEigPairs sym_eig_full(const SymMatrix& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.dense());
  if (es.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");
  return SymEigPairs{es.eigenvalues(), es.eigenvectors()};
}

CholeskyReport cholesky(const SymMatrix& M, double tol) {
  const int n = M.dim();
  Eigen::MatrixXd A = M.dense();
  CholeskyReport rep;
  rep.perm.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) rep.perm[std::size_t(i)] = i;

  double maxdiag = 0.0;
  for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, std::abs(A(i, i)));
  const double thresh = tol * std::max(maxdiag, 1e-300);

  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  int r = 0;
  double minpiv = maxdiag;
  for (int k = 0; k < n; ++k) {
    // Diagonal pivoting: bring the largest remaining diagonal entry up.
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (A(i, i) > A(p, p)) p = i;
    if (p != k) {
      A.row(k).swap(A.row(p));
      A.col(k).swap(A.col(p));
      L.row(k).swap(L.row(p));
      std::swap(rep.perm[std::size_t(k)], rep.perm[std::size_t(p)]);
    }
    double piv = A(k, k);
    if (piv <= thresh) break;  // remaining block is numerically zero (PSD case)
    minpiv = std::min(minpiv, piv);
    double s = std::sqrt(piv);
    L(k, k) = s;
    for (int i = k + 1; i < n; ++i) L(i, k) = A(i, k) / s;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j <= i; ++j) A(i, j) = A(j, i) = A(i, j) - L(i, k) * L(j, k);
    r = k + 1;
  }
  rep.rank = r;
  rep.pd = (r == n);
  rep.min_pivot = (r == 0) ? 0.0 : minpiv;
  rep.factor = L.leftCols(r);
  if (r < n) {
    // Extremes of the untouched Schur complement; a PSD input leaves a
    // negligible remainder, an indefinite one a negative diagonal.
    for (int i = r; i < n; ++i) {
      rep.schur_min_diag = std::min(rep.schur_min_diag, A(i, i));
      for (int j = r; j <= i; ++j)
        rep.schur_max_abs = std::max(rep.schur_max_abs, std::abs(A(i, j)));
    }
  }
  return rep;
}

bool is_psd(const SymMatrix& M, double tol) {
  CholeskyReport rep = cholesky(M, tol);
  if (rep.pd) return true;
  double scale = std::max(M.max_abs(), 1e-300);
  double slack = std::max(tol * scale, 1e-14 * scale);
  return rep.schur_min_diag >= -slack && rep.schur_max_abs <= 16.0 * slack;
}

GenEigResult gen_eig_min(const Pencil& pencil, const GenEigOptions& opts) {
  if (pencil.A.dim() != pencil.B.dim())
    throw std::invalid_argument("pencil matrices must share dimension");
  return gen_eig_min_ld(to_ld(pencil.A), to_ld(pencil.B), opts);
}

GenEigResult gen_eig_min_ld(const MatrixXld& Ain, const MatrixXld& Bin,
                            const GenEigOptions& opts) {
  if (Ain.rows() != Bin.rows() || Ain.rows() != Ain.cols() || Bin.rows() != Bin.cols())
    throw std::invalid_argument("pencil matrices must share dimension");
  const int n = int(Ain.rows());
  GenEigResult res;

  MatrixXld A = Ain;
  MatrixXld B = Bin;

  // Jacobi equilibration: a pure diagonal congruence, so the pencil value
  // is unchanged while the dynamic range of the entries collapses.
  VectorXld d(n);
  for (int i = 0; i < n; ++i) {
    long double bii = B(i, i);
    d(i) = bii > 0.0L ? 1.0L / std::sqrt(bii) : 1.0L;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      A(i, j) *= d(i) * d(j);
      B(i, j) *= d(i) * d(j);
    }

  Eigen::SelfAdjointEigenSolver<MatrixXld> esB(B);
  if (esB.info() != Eigen::Success) throw std::runtime_error("eigensolver failed on B");
  const VectorXld lam = esB.eigenvalues();
  long double lmax = std::max(lam(n - 1), 0.0L);

  if (lmax <= 0.0L) {
    // B vanishes: every a is feasible iff A is PSD.
    res.b_rank = 0;
    res.min_pivot = 0.0;
    Eigen::SelfAdjointEigenSolver<MatrixXld> esA(A, Eigen::EigenvaluesOnly);
    long double amax = std::max({std::abs(esA.eigenvalues()(0)),
                                 std::abs(esA.eigenvalues()(n - 1)), 1.0L});
    if (esA.eigenvalues()(0) >= -1e-12L * amax)
      res.unbounded = true;
    else
      res.infeasible = true;
    return res;
  }

  const long double rank_thresh = static_cast<long double>(opts.rank_tol) * lmax;
  if (lam(0) < -std::max(rank_thresh, 1e-10L * lmax))
    throw std::domain_error("B side of the pencil is indefinite beyond tolerance");

  int r = 0;
  for (int i = 0; i < n; ++i)
    if (lam(i) > rank_thresh) ++r;
  const int first = n - r;  // eigenvalues ascend; kept ones are the last r
  res.b_rank = r;
  res.min_pivot = double(lam(first) / lmax);
  res.range_restricted = (r < n);

  // Reduce on the kept subspace: C = S^T A S with S = Q_r diag(lam^-1/2).
  MatrixXld S(n, r);
  for (int c = 0; c < r; ++c)
    S.col(c) = esB.eigenvectors().col(first + c) / std::sqrt(lam(first + c));
  MatrixXld C = S.transpose() * A * S;
  C = ((C + C.transpose()) * 0.5L).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXld> esC(C, Eigen::EigenvaluesOnly);
  if (esC.info() != Eigen::Success) throw std::runtime_error("eigensolver failed on reduced pencil");
  res.value = double(esC.eigenvalues()(0));

  if (r < n) {
    // Feasibility off the range requires the complementary A-block PSD.
    MatrixXld Nb = esB.eigenvectors().leftCols(first);
    MatrixXld An = Nb.transpose() * A * Nb;
    An = ((An + An.transpose()) * 0.5L).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXld> esN(An, Eigen::EigenvaluesOnly);
    long double scale = std::max(A.cwiseAbs().maxCoeff(), 1.0L);
    res.complement_psd = esN.eigenvalues()(0) >= -1e-8L * scale;
    if (!res.complement_psd && esN.eigenvalues()(0) < -1e-6L * scale) res.infeasible = true;
  }
  return res;
}

}  // namespace ratmin
