#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ratmin/eig.hpp"
#include "ratmin/moment_matrix.hpp"
#include "test_util.hpp"

using namespace ratmin;

TEST_CASE("graded-lex basis enumeration") {
  Basis b1 = make_basis(1, 2);
  REQUIRE(b1.size() == 3);
  CHECK(b1.elems[0].e[0] == 0);
  CHECK(b1.elems[1].e[0] == 1);
  CHECK(b1.elems[2].e[0] == 2);

  Basis b2 = make_basis(2, 1);
  REQUIRE(b2.size() == 3);
  CHECK(b2.elems[0] == Mono{0, 0});
  CHECK(b2.elems[1] == Mono{1, 0});
  CHECK(b2.elems[2] == Mono{0, 1});

  CHECK(make_basis(2, 8).size() == 45);
  // First element is always the constant.
  CHECK(make_basis(4, 3).elems[0].degree() == 0);
}

TEST_CASE("univariate lebesgue moment matrix") {
  MomentOracle box = MomentOracle::box(1);
  OracleSource src(box);
  SymMatrix M = moment_matrix(src, make_basis(1, 2));
  CHECK(M.at(0, 0) == doctest::Approx(2.0));
  CHECK(M.at(0, 1) == doctest::Approx(0.0));
  CHECK(M.at(0, 2) == doctest::Approx(2.0 / 3.0));
  CHECK(M.at(1, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(M.at(1, 2) == doctest::Approx(0.0));
  CHECK(M.at(2, 2) == doctest::Approx(2.0 / 5.0));
}

namespace {

// Univariate table with handpicked entries, for structural checks.
MomentTable symbolic_table(const std::vector<long>& values) {
  MomentTable t(1, int(values.size()) - 1, true, "symbolic");
  for (std::size_t k = 0; k < values.size(); ++k) {
    Mono m(1);
    m.e[0] = std::uint16_t(k);
    t.set(m, Rational(values[std::size_t(k)]));
  }
  return t;
}

}  // namespace

TEST_CASE("moment matrix has the hankel pattern") {
  std::vector<long> y{2, 3, 5, 7, 11};
  MomentTable t = symbolic_table(y);
  TableSource src(t);
  SymMatrix M = moment_matrix(src, make_basis(1, 2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(M.at(i, j) == doctest::Approx(double(y[std::size_t(i + j)])));
}

TEST_CASE("localizing matrix of a - x^2 has the shifted hankel pattern") {
  std::vector<long> y{2, 3, 5, 7, 11, 13, 17};
  MomentTable t = symbolic_table(y);
  TableSource src(t);
  const double a = 4.0;
  PolyQ q = PolyQ::constant(1, Rational(4)) - pow(PolyQ::variable(1, 0), 2);
  SymMatrix M = localizing_matrix(q, src, make_basis(1, 2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(M.at(i, j) ==
            doctest::Approx(a * double(y[std::size_t(i + j)]) - double(y[std::size_t(i + j + 2)])));
}

TEST_CASE("localizing with q = 1 reproduces the moment matrix") {
  MomentOracle box = MomentOracle::box(2);
  OracleSource src(box);
  Basis basis = make_basis(2, 3);
  SymMatrix M = moment_matrix(src, basis);
  SymMatrix L = localizing_matrix(PolyQ::constant(2, Rational(1)), src, basis);
  for (int i = 0; i < M.dim(); ++i)
    for (int j = 0; j <= i; ++j) CHECK(L.at(i, j) == doctest::Approx(M.at(i, j)));
}

TEST_CASE("image-variable localizing on the example table") {
  PolyQ f = pow(PolyQ::variable(2, 0), 4) + pow(PolyQ::variable(2, 1), 4);
  Mono m22{2, 2};
  PolyQ g = PolyQ::monomial(2, m22, Rational(1));
  MomentTable t = pushforward_table_single(f, g, 1, MomentOracle::box(2));
  TableSource src(t);
  SymMatrix M = localizing_matrix(PolyQ::variable(2, 0), src, make_basis(2, 0));
  REQUIRE(M.dim() == 1);
  CHECK(M.at(0, 0) == doctest::Approx(8.0 / 5.0));

  MomentTable norm = t.normalized();
  TableSource nsrc(norm);
  SymMatrix Mn = moment_matrix(nsrc, make_basis(2, 0));
  CHECK(Mn.at(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("moment matrices of measures are positive semidefinite") {
  Rng rng(3);
  for (int n = 1; n <= 3; ++n) {
    OracleSource src(MomentOracle::box(n));
    for (int d = 0; d <= 3; ++d) {
      SymMatrix M = moment_matrix(src, make_basis(n, d));
      auto ev = sym_eig(M);
      CHECK(ev.front() >= -1e-9 * M.max_abs());
    }
  }
}

TEST_CASE("localizing is linear in the polynomial") {
  Rng rng(9);
  MomentOracle box = MomentOracle::box(2);
  MomentTable t = pushforward_table_single(testutil::random_poly(rng, 2, 2, 3, 2),
                                           testutil::random_positive_quadratic(rng, 2), 5,
                                           box)
                      .normalized();
  TableSource src(t);
  Basis basis = make_basis(2, 2);
  PolyQ q1 = testutil::random_poly(rng, 2, 1, 2, 2);
  PolyQ q2 = testutil::random_poly(rng, 2, 1, 2, 2);
  SymMatrix L1 = localizing_matrix(q1, src, basis);
  SymMatrix L2 = localizing_matrix(q2, src, basis);
  SymMatrix L12 = localizing_matrix(q1 + q2, src, basis);
  for (int i = 0; i < L12.dim(); ++i)
    for (int j = 0; j <= i; ++j)
      CHECK(std::abs(L12.at(i, j) - L1.at(i, j) - L2.at(i, j)) <= 1e-12);
}

TEST_CASE("order-d matrix nests inside order-(d+1)") {
  OracleSource src(MomentOracle::box(2));
  SymMatrix small = moment_matrix(src, make_basis(2, 2));
  SymMatrix large = moment_matrix(src, make_basis(2, 3));
  for (int i = 0; i < small.dim(); ++i)
    for (int j = 0; j <= i; ++j) CHECK(small.at(i, j) == doctest::Approx(large.at(i, j)));
}

TEST_CASE("localizing matrix of a positive polynomial is positive definite") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 1 + int(rng.bits() % 3);
    PolyQ g = testutil::random_positive_quadratic(rng, n);
    OracleSource src(MomentOracle::box(n));
    for (int d = 0; d <= 2; ++d) {
      SymMatrix L = localizing_matrix(g, src, make_basis(n, d));
      auto ev = sym_eig(L);
      CHECK(ev.front() > 0.0);
    }
  }
}

TEST_CASE("shallow sources are rejected") {
  PolyQ f = pow(PolyQ::variable(2, 0), 4) + pow(PolyQ::variable(2, 1), 4);
  Mono m22{2, 2};
  PolyQ g = PolyQ::monomial(2, m22, Rational(1));
  MomentTable t = pushforward_table_single(f, g, 3, MomentOracle::box(2));
  TableSource src(t);
  CHECK_THROWS_AS(moment_matrix(src, make_basis(2, 2)), std::out_of_range);
  CHECK_THROWS_AS(localizing_matrix(PolyQ::variable(2, 0), src, make_basis(2, 2)),
                  std::out_of_range);
  // Depth exactly sufficient works.
  SymMatrix ok = localizing_matrix(PolyQ::variable(2, 0), src, make_basis(2, 1));
  CHECK(ok.dim() == 3);
}

TEST_CASE("symmetric matrix printing") {
  SymMatrix M(2);
  M.at(0, 0) = 1.5;
  M.at(1, 0) = -2.0;
  M.at(1, 1) = 3.0;
  std::ostringstream os;
  M.print(os);
  CHECK(os.str() == "1.5 -2\n-2 3\n");
}
