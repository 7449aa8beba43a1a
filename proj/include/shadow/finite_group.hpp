#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "shadow/matrix.hpp"

namespace shadow {

using Code = std::uint64_t;

/// n x n matrices over F_p packed into integers (row-major base-p digits).
class ModPMatrices {
 public:
  /// Throws ConfigError when p^(n^2) does not fit into 64 bits.
  ModPMatrices(int n, Int p);

  int n() const { return n_; }
  Int p() const { return p_; }
  /// p^(n^2): number of codes.
  std::uint64_t universe() const { return universe_; }

  Code encode(const Matrix& m) const;
  Matrix decode(Code c) const;
  Code identity() const { return identity_; }
  Code multiply(Code a, Code b) const;
  /// Inverse of an element of determinant 1 (adjugate for n <= 3).
  Code inverse(Code a) const;
  Int determinant(Code a) const;
  int element_order(Code a) const;

 private:
  using Digits = std::array<Int, 16>;
  Digits digits(Code c) const;
  Code pack(const Digits& d) const;

  int n_;
  Int p_;
  std::uint64_t universe_;
  Code identity_;
};

/// A subgroup of SL_n(F_p) (or GL_n(F_p)) stored as its sorted element codes.
class Subgroup {
 public:
  Subgroup() = default;

  /// Closure of the generators under multiplication.
  static Subgroup generated(const ModPMatrices& codec, std::vector<Code> generators);
  /// Throws ContractError unless `elements` is closed under multiplication.
  static Subgroup from_elements(const ModPMatrices& codec, std::vector<Code> elements);

  std::size_t order() const { return elements_.size(); }
  const std::vector<Code>& elements() const { return elements_; }
  const std::vector<Code>& generators() const { return generators_; }
  bool contains(Code c) const;

  /// g S g^{-1}
  Subgroup conjugate(const ModPMatrices& codec, Code g) const;
  bool is_abelian(const ModPMatrices& codec) const;
  /// element order -> number of elements of that order
  std::map<int, std::size_t> order_histogram(const ModPMatrices& codec) const;

  bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }
  bool operator<(const Subgroup& o) const { return elements_ < o.elements_; }

 private:
  std::vector<Code> elements_;
  std::vector<Code> generators_;
};

/// SL_n(F_p), generated by the elementary matrices I + e_ij.
Subgroup special_linear_group(const ModPMatrices& codec);
/// All codes of GL_n(F_p) (brute force; small n only).
std::vector<Code> general_linear_elements(const ModPMatrices& codec);

/// Lexicographically least sorted element list among the GL_n(F_p)-conjugates of S.
/// Equal keys mean GL_n(F_p)-conjugate subgroups.
std::vector<Code> conjugacy_key(const ModPMatrices& codec, const Subgroup& s, const std::vector<Code>& gl_elements);

}  // namespace shadow
