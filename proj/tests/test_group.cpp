#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <random>

#include "shadow/group.hpp"

using namespace shadow;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

Matrix diag(std::initializer_list<Int> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Int v : values) m(i, i) = v, ++i;
  return m;
}

// sum_{i<terms} x^i / i! over Q, each term reduced to Z/p^r afterwards.
Matrix rational_exponential(const Ring& ring, const Matrix& x, int terms) {
  const auto n = x.rows();
  std::vector<std::vector<cpp_rational>> power(n, std::vector<cpp_rational>(n)), sum(n, std::vector<cpp_rational>(n));
  for (Eigen::Index i = 0; i < n; ++i) power[i][i] = sum[i][i] = 1;
  cpp_int fact = 1;
  for (int k = 1; k < terms; ++k) {
    std::vector<std::vector<cpp_rational>> next(n, std::vector<cpp_rational>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l) next[i][j] += power[i][l] * cpp_rational(x(l, j));
    power = next;
    fact *= k;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) sum[i][j] += power[i][j] / cpp_rational(fact);
  }
  Matrix out(n, n);
  const cpp_int mod = ring.modulus();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      cpp_int num = numerator(sum[i][j]), den = denominator(sum[i][j]);
      REQUIRE(den % ring.p() != 0);
      num %= mod;
      if (num < 0) num += mod;
      den %= mod;
      const Int inv = ring.unit_inverse(static_cast<Int>(den));
      out(i, j) = ring.mul(static_cast<Int>(num), inv);
    }
  return out;
}

Matrix random_p_multiple(const Ring& ring, int n, std::mt19937_64& rng, bool traceless) {
  Matrix x(n, n);
  const auto m = static_cast<std::uint64_t>(ring.modulus() / ring.p());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = ring.p() * static_cast<Int>(rng() % m);
  if (traceless) x(n - 1, n - 1) = ring.sub(x(n - 1, n - 1), trace(ring, x));
  return x;
}

}  // namespace

TEST_CASE("sl membership examples") {
  const Ring z25(5, 2), f5(5, 1);
  Matrix u = identity(z25, 2);
  u(0, 1) = 2;
  CHECK(sl_membership(z25, u));
  CHECK_FALSE(sl_membership(f5, diag({2, 2})));
  CHECK(sl_membership(f5, diag({2, 3, 1})));
  CHECK_THROWS_AS(GroupElement(f5, diag({2, 2})), ContractError);
}

TEST_CASE("adjoint action examples") {
  const Ring f5(5, 1);
  const Matrix h = canon(f5, diag({1, -1}));
  CHECK(adjoint_action(f5, GroupElement(f5, identity(f5, 2)), h) == h);
  Matrix g = identity(f5, 2);
  g(0, 1) = 1;
  CHECK(adjoint_action(f5, GroupElement(f5, g), h) == sub(f5, h, scale(f5, 2, unit_matrix(2, 0, 1))));

  const Ring z25(5, 2);
  const auto sl3 = LieLattice::sl(3);
  const auto gens = elementary_generators(z25, 3);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    Matrix a = identity(z25, 3), b = identity(z25, 3);
    for (int k = 0; k < 6; ++k) {
      a = mul(z25, a, gens[rng() % gens.size()].matrix());
      b = mul(z25, b, gens[rng() % gens.size()].matrix());
    }
    Vector c(8);
    for (int k = 0; k < 8; ++k) c(k) = static_cast<Int>(rng() % 25);
    const Matrix x = sl3.element(z25, c);
    const GroupElement ga(z25, a), gb(z25, b), gab(z25, mul(z25, a, b));
    const Matrix lhs = adjoint_action(z25, gab, x);
    CHECK(lhs == adjoint_action(z25, ga, adjoint_action(z25, gb, x)));
    CHECK(trace(z25, lhs) == 0);
    CHECK(adjoint_matrix(z25, sl3, mul(z25, a, b)) ==
          mul(z25, adjoint_matrix(z25, sl3, a), adjoint_matrix(z25, sl3, b)));
  }
}

TEST_CASE("generators and group orders") {
  const Ring z125(5, 3);
  CHECK(elementary_generators(z125, 2).size() == 6);
  CHECK(elementary_generators(z125, 3).size() == 18);
  CHECK(sl_order(2, 5) == 120);
  CHECK(sl_order(3, 5) == 372000);
  CHECK(sl_order(2, 5, 2) == 15000);
  CHECK(sl_order(2, 3, 3) == 24 * 729);
  // brute-force count of SL_2(Z/9)
  const Ring z9(3, 2);
  int count = 0;
  for (Int i = 0; i < 9 * 9 * 9 * 9; ++i) {
    Matrix m(2, 2);
    m << i % 9, (i / 9) % 9, (i / 81) % 9, i / 729;
    if (sl_membership(z9, m)) ++count;
  }
  CHECK(sl_order(2, 3, 2) == count);
}

TEST_CASE("exponential series plan") {
  // j - v_5(j!) >= 2 for j >= 2; >= 3 for j >= 3 ... except j = 5 where 5 - 1 = 4
  CHECK(exp_series_plan(5, 2).terms == 2);
  CHECK(exp_series_plan(5, 2).extra_precision == 0);
  const auto p3 = exp_series_plan(3, 4);
  for (Int j = p3.terms; j < 60; ++j) CHECK(j - factorial_valuation(3, j) >= 4);
  CHECK(p3.terms - 1 - factorial_valuation(3, p3.terms - 1) < 4);
}

TEST_CASE("exponential examples") {
  const Ring z25(5, 2);
  CHECK(exponential(z25, Matrix::Zero(2, 2)) == identity(z25, 2));
  const Matrix e = scale(z25, 5, unit_matrix(2, 0, 1));
  CHECK(exponential(z25, e) == add(z25, identity(z25, 2), e));
  CHECK(exponential(z25, canon(z25, diag({5, -5}))) == diag({6, 21}));
  CHECK_THROWS_AS(exponential(z25, unit_matrix(2, 0, 1)), ContractError);

  CHECK(exp_lie_criterion(z25, e));
  CHECK(exponential(z25, diag({5, 0})) == diag({6, 1}));
  CHECK_FALSE(exp_lie_criterion(z25, diag({5, 0})));
  CHECK(exp_lie_criterion(z25, Matrix::Zero(2, 2)));
}

TEST_CASE("exponential agrees with a rational-series oracle") {
  std::mt19937_64 rng(8);
  for (const Ring ring : {Ring(3, 1), Ring(3, 3), Ring(3, 5), Ring(5, 3), Ring(7, 2)}) {
    for (int t = 0; t < 30; ++t) {
      const Matrix x = random_p_multiple(ring, 3, rng, false);
      CHECK(exponential(ring, x) == rational_exponential(ring, x, 40));
    }
  }
}

TEST_CASE("exponential identities on p.gl2(Z/25) exhaustively") {
  const Ring z25(5, 2);
  int failures = 0;
  for (Int i = 0; i < 625; ++i) {
    Matrix x(2, 2);
    x << 5 * (i % 5), 5 * ((i / 5) % 5), 5 * ((i / 25) % 5), 5 * (i / 125);
    const Matrix ex = exponential(z25, x);
    if (mul(z25, ex, exponential(z25, neg(z25, x))) != identity(z25, 2)) ++failures;
    if (exp_lie_criterion(z25, x) != (trace(z25, x) == 0)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("Ad of exp equals exp of ad on sl3(Z/25) samples") {
  const Ring z25(5, 2);
  const auto sl3 = LieLattice::sl(3);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Matrix x = random_p_multiple(z25, 3, rng, true);
    CHECK(adjoint_matrix(z25, sl3, exponential(z25, x)) == exponential(z25, sl3.ad_matrix(z25, x)));
    Int a = static_cast<Int>(rng() % 25), b = static_cast<Int>(rng() % 25);
    CHECK(exponential(z25, scale(z25, z25.add(a, b), x)) ==
          mul(z25, exponential(z25, scale(z25, a, x)), exponential(z25, scale(z25, b, x))));
  }
}
