#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace shadow {

using Int = std::int64_t;

/// Thrown when a caller breaks a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown for configurations the library refuses to handle (p = 2, p^r too large, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(Int n);

/// Integer power with overflow detection; throws ConfigError on overflow.
Int checked_pow(Int base, int exp);

/// v_p(k!) by Legendre's formula.
int factorial_valuation(Int p, Int k);

/// The ring Z/p^r. Immutable value type.
class Ring {
 public:
  static constexpr Int kMaxModulus = Int{1} << 62;

  Ring(Int p, int r);

  Int p() const { return p_; }
  int level() const { return r_; }
  Int modulus() const { return modulus_; }

  /// Same prime, another level.
  Ring at_level(int r) const { return Ring(p_, r); }
  Ring residue_field() const { return Ring(p_, 1); }

  Int canon(Int x) const {
    Int v = x % modulus_;
    return v < 0 ? v + modulus_ : v;
  }
  Int add(Int a, Int b) const { return canon(a + b); }
  Int sub(Int a, Int b) const { return canon(a - b); }
  Int neg(Int a) const { return canon(-a); }
  Int mul(Int a, Int b) const {
    const auto v = static_cast<Int>((static_cast<__int128>(a) * b) % modulus_);
    return v < 0 ? v + modulus_ : v;
  }
  Int pow(Int a, Int e) const;

  /// Largest k <= r with p^k | x; valuation(0) = r.
  int valuation(Int x) const;
  bool is_unit(Int x) const { return canon(x) % p_ != 0; }
  std::optional<Int> inverse(Int x) const;
  /// Inverse of a unit; throws ContractError otherwise.
  Int unit_inverse(Int x) const;

  /// Reduction Z/p^r -> Z/p^r'.
  Int reduce(Int x, int r_target) const;

  bool operator==(const Ring& o) const { return p_ == o.p_ && r_ == o.r_; }

  std::string to_string() const;

 private:
  Int p_;
  int r_;
  Int modulus_;
};

struct ValuationAndInverse {
  int valuation;
  std::optional<Int> inverse;
};

ValuationAndInverse valuation_and_inverse(const Ring& ring, Int x);

/// Divides a residue known modulo p^(r+E) by k!, returning the quotient modulo p^r.
///
/// Only the p-part of k! needs exact division; the prime-to-p part is inverted.
/// Throws ContractError if E < v_p(k!) or if v_p(numerator) < v_p(k!) at the lifted precision.
Int exact_divide_lifted(const Ring& target, int extra_precision, Int numerator, Int k);

}  // namespace shadow
