#include <doctest.h>

#include <algorithm>
#include <random>

#include "shadow/lie_lattice.hpp"
#include "shadow/matrix.hpp"
#include "test_support.hpp"

using namespace shadow;

TEST_CASE("kernel mod p examples") {
  CHECK(kernel_mod_p(5, Matrix::Zero(3, 3)).size() == 3);
  CHECK(kernel_mod_p(5, Matrix::Identity(8, 8)).empty());

  const Ring f5(5, 1);
  const auto sl2 = LieLattice::sl(2);
  const Matrix e12 = unit_matrix(2, 0, 1);
  const auto ker = kernel_mod_p(5, sl2.ad_matrix(f5, e12));
  REQUIRE(ker.size() == 1);
  // only multiples of e12 = first basis vector
  CHECK(ker[0](0) != 0);
  CHECK(ker[0](1) == 0);
  CHECK(ker[0](2) == 0);
}

TEST_CASE("rank mod p examples") {
  CHECK(rank_mod_p(5, Matrix::Identity(4, 4)) == 4);
  CHECK(rank_mod_p(5, Matrix::Zero(8, 8)) == 0);
  Matrix m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 0, 5;
  CHECK(rank_mod_p(5, m) == 1);
  CHECK(rank_mod_p(7, m) == 2);
}

TEST_CASE("antisymmetric profile examples") {
  const Ring z125(5, 3);
  auto zero = antisymmetric_profile(z125, Matrix::Zero(8, 8));
  CHECK(zero.exponents == std::vector<int>{3, 3, 3, 3});

  Matrix m = Matrix::Zero(6, 6);
  const Int s[3] = {1, 5, 25};
  for (int b = 0; b < 3; ++b) {
    m(2 * b, 2 * b + 1) = s[b];
    m(2 * b + 1, 2 * b) = z125.neg(s[b]);
  }
  CHECK(antisymmetric_profile(z125, m).exponents == std::vector<int>{0, 1, 2});

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(antisymmetric_profile(z125, bad), ContractError);
}

TEST_CASE("antisymmetric profile agrees with an integer Smith normal form of a lift") {
  std::mt19937_64 rng(42);
  for (int r = 1; r <= 3; ++r) {
    const Ring ring(5, r);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 2 + static_cast<int>(rng() % 6);
      Matrix m = testing::random_antisymmetric(ring, d, rng, trial % 3 == 0);
      auto prof = antisymmetric_profile(ring, m);
      auto oracle = testing::integer_elementary_divisor_valuations(5, m);
      std::vector<int> capped;
      for (int v : oracle) capped.push_back(std::min(v, r));
      std::sort(capped.begin(), capped.end());
      std::vector<int> paired;
      for (std::size_t i = 0; i + 1 < capped.size(); i += 2) paired.push_back(capped[i]);
      CHECK(prof.exponents == paired);
    }
  }
}

TEST_CASE("profile invariant under congruence and consistent with capping") {
  std::mt19937_64 rng(7);
  for (int r = 1; r <= 3; ++r) {
    const Ring ring(5, r);
    for (int trial = 0; trial < 100; ++trial) {
      const int d = 2 + static_cast<int>(rng() % 7);
      Matrix m = testing::random_antisymmetric(ring, d, rng, trial % 2 == 0);
      Matrix u = testing::random_invertible(ring, d, rng);
      Matrix conj = mul(ring, mul(ring, u.transpose(), m), u);
      const auto prof = antisymmetric_profile(ring, m);
      CHECK(antisymmetric_profile(ring, conj) == prof);
      for (int r2 = 1; r2 <= r; ++r2) {
        auto lower = antisymmetric_profile(ring.at_level(r2), reduce(ring, m, r2));
        std::vector<int> expect;
        for (int a : prof.exponents) expect.push_back(std::min(a, r2));
        CHECK(lower.exponents == expect);
      }
      // antisymmetric matrices over a field have even rank
      CHECK(rank_mod_p(5, m) % 2 == 0);
      CHECK(rank_mod_p(5, m) == 2 * static_cast<int>(std::count(prof.exponents.begin(), prof.exponents.end(), 0)));
    }
  }
}

TEST_CASE("rank-nullity mod p on random samples") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 8);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = (rng() % 3 == 0) ? static_cast<Int>(rng() % 5) : 0;
    const auto ker = kernel_mod_p(5, m);
    CHECK(rank_mod_p(5, m) + static_cast<int>(ker.size()) == d);
    for (const auto& v : ker) CHECK(is_zero(mul(Ring(5, 1), m, v)));
    std::vector<int> flat(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) flat[i * d + j] = static_cast<int>(m(i, j));
    CHECK(rank_mod_p_inplace(5, d, d, flat.data()) == rank_mod_p(5, m));
  }
}

TEST_CASE("determinant and inverse over local rings") {
  std::mt19937_64 rng(11);
  const Ring ring(5, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    Matrix a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = static_cast<Int>(rng() % 125) * ((trial % 4 == 0) ? 5 : 1) % 125;
        b(i, j) = static_cast<Int>(rng() % 125);
      }
    CHECK(determinant(ring, mul(ring, a, b)) == ring.mul(determinant(ring, a), determinant(ring, b)));
    CHECK(determinant(ring, a) == testing::integer_determinant_mod(a, 125));
    auto inv = inverse(ring, a);
    CHECK(inv.has_value() == ring.is_unit(determinant(ring, a)));
    if (inv) CHECK(mul(ring, a, *inv) == identity(ring, n));
  }
}

TEST_CASE("kernel reduction mod p via local Smith form") {
  const Ring z25(5, 2);
  // diag(1, 5, 0): kernel over Z/25 is {(0, 5t, s)}, reduction mod 5 is spanned by e3
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 5;
  auto basis = kernel_reduction_mod_p(z25, m);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0](2) != 0);
  CHECK(basis[0](0) == 0);
  CHECK(basis[0](1) == 0);
}

TEST_CASE("matrix JSON round trip") {
  const Ring ring(7, 2);
  Matrix m(2, 3);
  m << 1, 48, 0, 7, 3, 2;
  auto j = to_json(ring, m);
  CHECK(j["ring"]["p"] == 7);
  auto [r2, m2] = matrix_from_json(j);
  CHECK(r2 == ring);
  CHECK(m2 == m);
}
