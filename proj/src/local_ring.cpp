#include "shadow/local_ring.hpp"

#include <limits>

namespace shadow {

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int checked_pow(Int base, int exp) {
  if (exp < 0) throw ConfigError("negative exponent");
  __int128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<Int>::max())
      throw ConfigError("integer power overflows 64 bits");
  }
  return static_cast<Int>(acc);
}

int factorial_valuation(Int p, Int k) {
  int v = 0;
  for (Int q = k / p; q > 0; q /= p) v += static_cast<int>(q);
  return v;
}

Ring::Ring(Int p, int r) : p_(p), r_(r) {
  if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw ConfigError("p = 2 is not supported");
  if (r < 1) throw ConfigError("level must be at least 1");
  __int128 m = 1;
  for (int i = 0; i < r; ++i) {
    m *= p;
    if (m > kMaxModulus) throw ConfigError("p^r exceeds 2^62");
  }
  modulus_ = static_cast<Int>(m);
}

Int Ring::pow(Int a, Int e) const {
  Int result = canon(1);
  Int base = canon(a);
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

int Ring::valuation(Int x) const {
  x = canon(x);
  if (x == 0) return r_;
  int v = 0;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

std::optional<Int> Ring::inverse(Int x) const {
  x = canon(x);
  if (x % p_ == 0) return std::nullopt;
  // extended Euclid on (x, modulus)
  __int128 old_r = x, r = modulus_, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return canon(static_cast<Int>(old_s % modulus_));
}

Int Ring::unit_inverse(Int x) const {
  auto inv = inverse(x);
  if (!inv) throw ContractError("element " + std::to_string(x) + " is not a unit in " + to_string());
  return *inv;
}

Int Ring::reduce(Int x, int r_target) const {
  if (r_target > r_ || r_target < 1)
    throw ContractError("cannot reduce from level " + std::to_string(r_) + " to level " +
                        std::to_string(r_target));
  return canon(x) % checked_pow(p_, r_target);
}

std::string Ring::to_string() const {
  return "Z/" + std::to_string(p_) + "^" + std::to_string(r_);
}

ValuationAndInverse valuation_and_inverse(const Ring& ring, Int x) {
  return {ring.valuation(x), ring.inverse(x)};
}

Int exact_divide_lifted(const Ring& target, int extra_precision, Int numerator, Int k) {
  const Int p = target.p();
  const int need = factorial_valuation(p, k);
  if (extra_precision < need)
    throw ContractError("lifted precision too small for division by " + std::to_string(k) + "!");
  const Ring lifted = target.at_level(target.level() + extra_precision);
  Int num = lifted.canon(numerator);
  if (lifted.valuation(num) < need)
    throw ContractError("numerator " + std::to_string(numerator) + " is not divisible by the p-part of " +
                        std::to_string(k) + "!");
  for (int i = 0; i < need; ++i) num /= p;
  // prime-to-p part of k!
  Int unit = 1;
  for (Int j = 2; j <= k; ++j) {
    Int f = j;
    while (f % p == 0) f /= p;
    unit = target.mul(unit, target.canon(f));
  }
  return target.mul(target.canon(num), target.unit_inverse(unit));
}

}  // namespace shadow
