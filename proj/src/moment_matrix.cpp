#include "ratmin/moment_matrix.hpp"

#include <climits>
#include <ostream>
#include <stdexcept>

namespace ratmin {

namespace {

void enumerate(int mvars, int order, int var, int remaining, Mono& cur, std::vector<Mono>& out) {
  if (var == mvars) {
    out.push_back(cur);
    return;
  }
  // Counting down keeps the within-degree order lex-descending, which
  // combined with the outer degree loop yields graded-lex.
  for (int e = remaining; e >= 0; --e) {
    cur.e[std::size_t(var)] = std::uint16_t(e);
    enumerate(mvars, order, var + 1, remaining - e, cur, out);
  }
  cur.e[std::size_t(var)] = 0;
}

}  // namespace

Basis make_basis(int mvars, int order) {
  if (mvars < 1) throw std::invalid_argument("basis needs mvars >= 1");
  if (order < 0) throw std::invalid_argument("basis needs order >= 0");
  Basis b;
  b.mvars = mvars;
  b.order = order;
  Mono cur(mvars);
  for (int d = 0; d <= order; ++d) {
    std::vector<Mono> level;
    enumerate(mvars, order, 0, d, cur, level);
    for (auto& m : level)
      if (m.degree() == d) b.elems.push_back(std::move(m));
  }
  return b;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("matrix is not square");
  SymMatrix m(int(M.rows()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j <= i; ++j) m.at(i, j) = 0.5 * (M(i, j) + M(j, i));
  return m;
}

SymMatrix SymMatrix::linear(const SymMatrix& A, const SymMatrix& B, double s) {
  if (A.dim() != B.dim()) throw std::invalid_argument("matrix dimension mismatch");
  SymMatrix out(A.dim());
  for (std::size_t k = 0; k < out.lower_.size(); ++k)
    out.lower_[k] = A.lower_[k] + s * B.lower_[k];
  return out;
}

Eigen::MatrixXd SymMatrix::dense() const {
  Eigen::MatrixXd M(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j <= i; ++j) M(i, j) = M(j, i) = at(i, j);
  return M;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : lower_) m = std::max(m, std::abs(v));
  return m;
}

void SymMatrix::print(std::ostream& os) const {
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (j) os << " ";
      os << at(i, j);
    }
    os << "\n";
  }
}

int OracleSource::depth() const { return INT_MAX; }

namespace {

void check_depth(const MomentSource& src, const Basis& basis, int extra) {
  if (basis.mvars != src.nvars())
    throw std::invalid_argument("basis dimension does not match moment source");
  if (src.depth() != INT_MAX && 2 * basis.order + extra > src.depth())
    throw std::out_of_range("moment source too shallow for requested matrix order");
}

template <class C>
SymMatrix localizing_impl(const Poly<C>& q, const MomentSource& src, const Basis& basis) {
  check_depth(src, basis, q.degree());
  if (q.nvars() != src.nvars())
    throw std::invalid_argument("localizing polynomial dimension mismatch");
  const int m = int(basis.size());
  SymMatrix out(m);
  constexpr bool exact_coeffs = std::is_same_v<C, Rational>;
  const bool exact = exact_coeffs && src.exact();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      Mono base = basis.elems[std::size_t(i)].plus(basis.elems[std::size_t(j)]);
      if (exact) {
        Rational acc(0);
        if constexpr (exact_coeffs) {
          for (const auto& [g, c] : q.terms()) acc += c * src.moment_q(g.plus(base));
        }
        out.at(i, j) = to_double(acc);
      } else {
        double acc = 0.0;
        for (const auto& [g, c] : q.terms())
          acc += detail::coef_to_double(c) * src.moment_f(g.plus(base));
        out.at(i, j) = acc;
      }
    }
  }
  return out;
}

}  // namespace

SymMatrix moment_matrix(const MomentSource& src, const Basis& basis) {
  check_depth(src, basis, 0);
  const int m = int(basis.size());
  SymMatrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      out.at(i, j) = src.moment_f(basis.elems[std::size_t(i)].plus(basis.elems[std::size_t(j)]));
  return out;
}

SymMatrix localizing_matrix(const PolyQ& q, const MomentSource& src, const Basis& basis) {
  return localizing_impl(q, src, basis);
}

SymMatrix localizing_matrix(const PolyF& q, const MomentSource& src, const Basis& basis) {
  return localizing_impl(q, src, basis);
}

MatrixXld moment_matrix_ld(const MomentSource& src, const Basis& basis) {
  check_depth(src, basis, 0);
  const int m = int(basis.size());
  MatrixXld out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      Mono key = basis.elems[std::size_t(i)].plus(basis.elems[std::size_t(j)]);
      long double v = src.exact() ? to_long_double(src.moment_q(key))
                                  : static_cast<long double>(src.moment_f(key));
      out(i, j) = out(j, i) = v;
    }
  return out;
}

MatrixXld localizing_matrix_ld(const PolyQ& q, const MomentSource& src, const Basis& basis) {
  check_depth(src, basis, q.degree());
  if (q.nvars() != src.nvars())
    throw std::invalid_argument("localizing polynomial dimension mismatch");
  const int m = int(basis.size());
  MatrixXld out(m, m);
  const bool exact = src.exact();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      Mono base = basis.elems[std::size_t(i)].plus(basis.elems[std::size_t(j)]);
      long double v;
      if (exact) {
        Rational acc(0);
        for (const auto& [g, c] : q.terms()) acc += c * src.moment_q(g.plus(base));
        v = to_long_double(acc);
      } else {
        long double accf = 0.0L;
        for (const auto& [g, c] : q.terms())
          accf += static_cast<long double>(to_double(c)) *
                  static_cast<long double>(src.moment_f(g.plus(base)));
        v = accf;
      }
      out(i, j) = out(j, i) = v;
    }
  return out;
}

}  // namespace ratmin
