#ifndef RATMIN_MOMENT_MATRIX_HPP
#define RATMIN_MOMENT_MATRIX_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <vector>

#include "ratmin/moments.hpp"
#include "ratmin/polynomial.hpp"

namespace ratmin {

// Monomial basis of total degree <= order in graded-lex order. The first
// element is always the constant.
struct Basis {
  int mvars = 0;
  int order = 0;
  std::vector<Mono> elems;

  std::size_t size() const { return elems.size(); }
};

Basis make_basis(int mvars, int order);

// Dense symmetric matrix, packed lower triangle.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : dim_(dim), lower_(std::size_t(dim) * (dim + 1) / 2, 0.0) {}

  static SymMatrix identity(int dim);
  static SymMatrix from_dense(const Eigen::MatrixXd& M);  // symmetrizes
  // A + s*B, the workhorse of pencil feasibility tests.
  static SymMatrix linear(const SymMatrix& A, const SymMatrix& B, double s);

  int dim() const { return dim_; }
  double& at(int i, int j) { return lower_[index(i, j)]; }
  double at(int i, int j) const { return lower_[index(i, j)]; }

  Eigen::MatrixXd dense() const;
  double max_abs() const;

  void print(std::ostream& os) const;  // whitespace-separated rows

 private:
  std::size_t index(int i, int j) const {
    if (i < j) std::swap(i, j);
    return std::size_t(i) * (i + 1) / 2 + std::size_t(j);
  }
  int dim_ = 0;
  std::vector<double> lower_;
};

// Uniform view over a base-measure oracle or a pushforward table.
// Exact sources let matrix assembly accumulate in rationals and round
// once per entry.
class MomentSource {
 public:
  virtual ~MomentSource() = default;
  virtual int nvars() const = 0;
  virtual int depth() const = 0;  // max usable total degree; INT_MAX when closed-form
  virtual bool exact() const = 0;
  virtual double moment_f(const Mono&) const = 0;
  virtual Rational moment_q(const Mono&) const = 0;  // exact sources only
};

class OracleSource final : public MomentSource {
 public:
  explicit OracleSource(const MomentOracle& o) : oracle_(o) {}
  int nvars() const override { return oracle_.n(); }
  int depth() const override;
  bool exact() const override { return oracle_.exact(); }
  double moment_f(const Mono& m) const override { return oracle_.moment_f(m); }
  Rational moment_q(const Mono& m) const override { return oracle_.moment_q(m); }

 private:
  MomentOracle oracle_;
};

class TableSource final : public MomentSource {
 public:
  explicit TableSource(const MomentTable& t) : table_(t) {}
  int nvars() const override { return table_.mvars(); }
  int depth() const override { return table_.maxdeg(); }
  bool exact() const override { return table_.exact(); }
  double moment_f(const Mono& m) const override { return table_.value_f(m); }
  Rational moment_q(const Mono& m) const override { return table_.value_q(m); }

 private:
  const MomentTable& table_;
};

// Entry (i,j) = moment at basis[i] + basis[j].
SymMatrix moment_matrix(const MomentSource& src, const Basis& basis);

// Entry (i,j) = sum_g q_g * moment(g + basis[i] + basis[j]); the sum is
// accumulated exactly when both q and the source are exact.
SymMatrix localizing_matrix(const PolyQ& q, const MomentSource& src, const Basis& basis);
SymMatrix localizing_matrix(const PolyF& q, const MomentSource& src, const Basis& basis);

// Extended-precision assembly for the pencil drivers: exact entries are
// rounded to 64-bit mantissas instead of 53, which matters for the deep
// ill-conditioned pencils.
using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
MatrixXld moment_matrix_ld(const MomentSource& src, const Basis& basis);
MatrixXld localizing_matrix_ld(const PolyQ& q, const MomentSource& src, const Basis& basis);

}  // namespace ratmin

#endif
