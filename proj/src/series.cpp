#include "shadow/series.hpp"

#include <stdexcept>

#include "shadow/local_ring.hpp"

namespace shadow {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }

Poly Poly::monomial(const Rational& c, int k) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return Poly(std::move(v));
}

Rational Poly::coeff(int k) const {
  return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Rational(-1); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(v));
}

Poly Poly::operator*(const Rational& s) const {
  std::vector<Rational> v = c_;
  for (auto& x : v) x *= s;
  return Poly(std::move(v));
}

Poly Poly::scale_variable(const Rational& lambda) const {
  std::vector<Rational> v = c_;
  Rational power = 1;
  for (auto& x : v) {
    x *= power;
    power *= lambda;
  }
  return Poly(std::move(v));
}

RationalFunc RationalFunc::operator+(const RationalFunc& o) const {
  if (den == o.den) return {num + o.num, den};
  return {num * o.den + o.num * den, den * o.den};
}

RationalFunc RationalFunc::operator*(const RationalFunc& o) const { return {num * o.num, den * o.den}; }

RationalFunc RationalFunc::operator*(const Rational& s) const { return {num * s, den}; }

RationalFunc RationalFunc::scale_variable(const Rational& lambda) const {
  return {num.scale_variable(lambda), den.scale_variable(lambda)};
}

std::vector<Rational> RationalFunc::expand(int k) const {
  const Rational d0 = den.coeff(0);
  if (d0 == 0) throw ContractError("denominator has no constant term");
  std::vector<Rational> out(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    Rational acc = num.coeff(i);
    for (int j = 1; j <= std::min(i, den.degree()); ++j) acc -= den.coeff(j) * out[static_cast<std::size_t>(i - j)];
    out[static_cast<std::size_t>(i)] = acc / d0;
  }
  return out;
}

bool RationalFunc::same_function(const RationalFunc& o) const { return num * o.den == o.num * den; }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

nlohmann::json to_json(const Rational& r) {
  static const boost::multiprecision::cpp_int limit = boost::multiprecision::cpp_int(1) << 53;
  if (denominator(r) == 1 && abs(numerator(r)) <= limit) return numerator(r).convert_to<long long>();
  return to_string(r);
}

nlohmann::json to_json(const Poly& p) {
  auto out = nlohmann::json::array();
  for (const auto& c : p.coeffs()) out.push_back({numerator(c).str(), denominator(c).str()});
  return out;
}

nlohmann::json to_json(const RationalFunc& f) {
  return {{"variable", "t = q^-s"}, {"numerator", to_json(f.num)}, {"denominator", to_json(f.den)}};
}

Rational rational_power(long long q, int k) {
  Rational base = k >= 0 ? Rational(q) : Rational(1) / Rational(q);
  Rational out = 1;
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) out *= base;
  return out;
}

}  // namespace shadow
