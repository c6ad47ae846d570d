#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ratmin/brute.hpp"
#include "ratmin/eig.hpp"
#include "test_util.hpp"

using namespace ratmin;

namespace {

SymMatrix diag(std::initializer_list<double> d) {
  SymMatrix m(int(d.size()));
  int i = 0;
  for (double v : d) m.at(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("symmetric eigenvalues") {
  CHECK(sym_eig(SymMatrix::identity(3)) == std::vector<double>{1.0, 1.0, 1.0});
  auto ev = sym_eig(diag({3, 1, 2}));
  CHECK(ev[0] == doctest::Approx(1));
  CHECK(ev[1] == doctest::Approx(2));
  CHECK(ev[2] == doctest::Approx(3));
  SymMatrix m(2);
  m.at(0, 0) = m.at(1, 1) = 2;
  m.at(1, 0) = 1;
  auto ev2 = sym_eig(m);
  CHECK(ev2[0] == doctest::Approx(1));
  CHECK(ev2[1] == doctest::Approx(3));
}

TEST_CASE("eigenpairs satisfy the residual bound") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 2 + int(rng.bits() % 9);
    SymMatrix M = testutil::random_pd_matrix(rng, dim, 0.1);
    SymEigPairs pairs = sym_eig_full(M);
    Eigen::MatrixXd D = M.dense();
    double scale = M.max_abs();
    for (int k = 0; k < dim; ++k) {
      Eigen::VectorXd r = D * pairs.vectors.col(k) - pairs.values(k) * pairs.vectors.col(k);
      CHECK(r.norm() <= 1e-10 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("pivoted cholesky") {
  CholeskyReport id = cholesky(SymMatrix::identity(3));
  CHECK(id.pd);
  CHECK(id.rank == 3);
  CHECK(id.factor.isApprox(Eigen::MatrixXd::Identity(3, 3)));

  CholeskyReport r = cholesky(diag({1, 0}), 1e-12);
  CHECK_FALSE(r.pd);
  CHECK(r.rank == 1);

  SymMatrix M(2);
  M.at(0, 0) = 4;
  M.at(1, 0) = 2;
  M.at(1, 1) = 2;
  CholeskyReport f = cholesky(M);
  REQUIRE(f.pd);
  CHECK(f.factor(0, 0) == doctest::Approx(2));
  CHECK(f.factor(1, 0) == doctest::Approx(1));
  CHECK(f.factor(1, 1) == doctest::Approx(1));
}

TEST_CASE("psd test distinguishes semidefinite from indefinite") {
  CHECK(is_psd(diag({1, 0})));
  CHECK(is_psd(diag({0, 0})));
  CHECK_FALSE(is_psd(diag({1, -1e-3})));
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    SymMatrix M = testutil::random_pd_matrix(rng, 6, 0.2);
    CHECK(is_psd(M));
    SymMatrix shifted = SymMatrix::linear(M, SymMatrix::identity(6), -(sym_eig(M)[0] + 1e-4));
    CHECK_FALSE(is_psd(shifted));
  }
}

TEST_CASE("generalized eigenvalue basics") {
  Rng rng(4);
  SymMatrix A = testutil::random_pd_matrix(rng, 4);
  GenEigResult same = gen_eig_min({A, A});
  CHECK(same.value == doctest::Approx(1.0).epsilon(1e-10));

  GenEigResult d = gen_eig_min({diag({2, 5}), diag({1, 2})});
  CHECK(d.value == doctest::Approx(2.0));
  CHECK(d.b_rank == 2);
}

TEST_CASE("generalized eigenvalue agrees with bisection on random pencils") {
  Rng rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    int dim = 2 + int(rng.bits() % 9);
    SymMatrix A = testutil::random_pd_matrix(rng, dim);
    SymMatrix B = testutil::random_pd_matrix(rng, dim);
    double ge = gen_eig_min({A, B}).value;
    double bi = bisection_pencil(A, B, 0.0, 10.0, 1e-9);
    CHECK(std::abs(ge - bi) <= 1e-7 * (1.0 + std::abs(ge)));
  }
}

TEST_CASE("congruence invariance under diagonal scaling") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 3 + int(rng.bits() % 5);
    SymMatrix A = testutil::random_pd_matrix(rng, dim);
    SymMatrix B = testutil::random_pd_matrix(rng, dim);
    double base = gen_eig_min({A, B}).value;
    SymMatrix DA(dim), DB(dim);
    std::vector<double> s(static_cast<std::size_t>(dim));
    for (auto& v : s) v = std::pow(10.0, 3.0 * rng.sym());
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j) {
        DA.at(i, j) = A.at(i, j) * s[std::size_t(i)] * s[std::size_t(j)];
        DB.at(i, j) = B.at(i, j) * s[std::size_t(i)] * s[std::size_t(j)];
      }
    double scaled = gen_eig_min({DA, DB}).value;
    CHECK(std::abs(scaled - base) <= 1e-8 * (1.0 + std::abs(base)));
  }
}

TEST_CASE("shift covariance") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    SymMatrix A = testutil::random_pd_matrix(rng, 5);
    SymMatrix B = testutil::random_pd_matrix(rng, 5);
    double base = gen_eig_min({A, B}).value;
    for (double t : {-1.0, 0.5, 3.0}) {
      double shifted = gen_eig_min({SymMatrix::linear(A, B, t), B}).value;
      CHECK(std::abs(shifted - (base + t)) <= 1e-9 * (1.0 + std::abs(base) + std::abs(t)));
    }
  }
}

TEST_CASE("optimum sits on the feasibility boundary") {
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    SymMatrix A = testutil::random_pd_matrix(rng, 6);
    SymMatrix B = testutil::random_pd_matrix(rng, 6);
    double a = gen_eig_min({A, B}).value;
    double eps = 1e-6 * (1.0 + std::abs(a));
    CHECK(is_psd(SymMatrix::linear(A, B, -(a - eps))));
    CHECK_FALSE(is_psd(SymMatrix::linear(A, B, -(a + eps))));
  }
}

TEST_CASE("rank-deficient constraint side restricts to the range") {
  // B acts only on the first two coordinates; A is PSD on the rest.
  SymMatrix A = diag({2, 5, 7});
  SymMatrix B = diag({1, 2, 0});
  GenEigResult r = gen_eig_min({A, B});
  CHECK(r.b_rank == 2);
  CHECK(r.range_restricted);
  CHECK(r.complement_psd);
  CHECK_FALSE(r.infeasible);
  CHECK(r.value == doctest::Approx(2.0));

  // A negative where B vanishes: no feasible shift at all.
  SymMatrix Abad = diag({2, 5, -1});
  GenEigResult bad = gen_eig_min({Abad, B});
  CHECK_FALSE(bad.complement_psd);
  CHECK(bad.infeasible);
}

TEST_CASE("vanishing constraint side") {
  SymMatrix zero(3);
  GenEigResult un = gen_eig_min({SymMatrix::identity(3), zero});
  CHECK(un.unbounded);
  SymMatrix Aneg = diag({1, -1, 1});
  GenEigResult inf = gen_eig_min({Aneg, zero});
  CHECK(inf.infeasible);
}

TEST_CASE("indefinite constraint side is an error") {
  SymMatrix B = diag({1, -1});
  CHECK_THROWS_AS(gen_eig_min({SymMatrix::identity(2), B}), std::domain_error);
}
