#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <string>
#include <vector>

namespace shadow {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in one variable t with exact rational coefficients; coefficient k multiplies t^k.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  /// c t^k
  static Poly monomial(const Rational& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// p(lambda t)
  Poly scale_variable(const Rational& lambda) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// num / den in t; den has a nonzero constant term.
struct RationalFunc {
  Poly num;
  Poly den = Poly::constant(1);

  RationalFunc operator+(const RationalFunc& o) const;
  RationalFunc operator*(const RationalFunc& o) const;
  RationalFunc scale_variable(const Rational& lambda) const;
  RationalFunc operator*(const Rational& s) const;

  /// Coefficients of t^0..t^k of the power series expansion.
  std::vector<Rational> expand(int k) const;
  /// num * o.den == o.num * den
  bool same_function(const RationalFunc& o) const;
};

/// "a" or "a/b" in lowest terms.
std::string to_string(const Rational& r);
/// Integers up to 2^53 as JSON numbers, larger ones and fractions as strings.
nlohmann::json to_json(const Rational& r);
/// Coefficient list as [numerator, denominator] pairs of decimal strings.
nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const RationalFunc& f);

/// q^k for any integer k.
Rational rational_power(long long q, int k);

}  // namespace shadow
