#pragma once

// Independent oracles and generators shared by the unit tests. Nothing here calls into the
// local-ring diagonalisation it is used to check.

#include <boost/multiprecision/cpp_int.hpp>

#include <random>
#include <vector>

#include "shadow/matrix.hpp"

namespace shadow::testing {

using BigInt = boost::multiprecision::cpp_int;

inline Matrix random_antisymmetric(const Ring& ring, int d, std::mt19937_64& rng, bool structured) {
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Int v = static_cast<Int>(rng() % static_cast<std::uint64_t>(ring.modulus()));
      if (structured) v = ring.mul(v, ring.pow(ring.p(), static_cast<Int>(rng() % (ring.level() + 1))));
      m(i, j) = v;
      m(j, i) = ring.neg(v);
    }
  return m;
}

inline Matrix random_invertible(const Ring& ring, int d, std::mt19937_64& rng) {
  for (;;) {
    Matrix u(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) u(i, j) = static_cast<Int>(rng() % static_cast<std::uint64_t>(ring.modulus()));
    if (inverse(ring, u)) return u;
  }
}

/// p-adic valuations of the integer elementary divisors of m (entries read as integers);
/// zero divisors report a large sentinel.
inline std::vector<int> integer_elementary_divisor_valuations(Int p, const Matrix& m) {
  const auto rows = m.rows(), cols = m.cols();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a[i][j] = BigInt(m(i, j));
  const Eigen::Index k = std::min(rows, cols);
  std::vector<BigInt> diag;
  for (Eigen::Index t = 0; t < k; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block
      Eigen::Index pr = -1, pc = -1;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr < 0 || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) {
        for (Eigen::Index rest = t; rest < k; ++rest) diag.push_back(0);
        goto done;
      }
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        BigInt q = a[i][t] / a[t][t];
        for (Eigen::Index j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        BigInt q = a[t][j] / a[t][t];
        for (Eigen::Index i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the rest of the block
      bool divides = true;
      for (Eigen::Index i = t + 1; i < rows && divides; ++i)
        for (Eigen::Index j = t + 1; j < cols && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (Eigen::Index c = t; c < cols; ++c) a[t][c] += a[i][c];
            divides = false;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
done:
  std::vector<int> vals;
  for (const auto& dv : diag) {
    if (dv == 0) {
      vals.push_back(1 << 20);
      continue;
    }
    int v = 0;
    BigInt x = dv;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    vals.push_back(v);
  }
  return vals;
}

/// Bareiss fraction-free determinant over Z, reduced mod `modulus`.
inline Int integer_determinant_mod(const Matrix& m, Int modulus) {
  const auto n = m.rows();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i][j] = BigInt(m(i, j));
  BigInt prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      Eigen::Index sw = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      std::swap(a[k], a[sw]);
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  BigInt det = n == 0 ? BigInt(1) : a[n - 1][n - 1] * sign;
  BigInt r = det % modulus;
  if (r < 0) r += modulus;
  return static_cast<Int>(r);
}

}  // namespace shadow::testing
