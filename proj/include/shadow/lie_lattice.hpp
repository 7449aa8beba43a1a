#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "shadow/matrix.hpp"

namespace shadow {

/// Antisymmetric matrix whose entries are linear forms: entry (i, j) is sum_k coeff(i, j, k) Y_k.
class LinearFormMatrix {
 public:
  LinearFormMatrix(Ring ring, int dim, int variables);

  const Ring& ring() const { return ring_; }
  int dim() const { return dim_; }
  int variables() const { return vars_; }

  Int coeff(int i, int j, int k) const { return coeffs_[index(i, j, k)]; }
  void set_coeff(int i, int j, int k, Int c) { coeffs_[index(i, j, k)] = ring_.canon(c); }

  /// Substitutes Y = w. The result lives over `target`, which must share the prime.
  Matrix evaluate(const Ring& target, const Vector& w) const;

  /// Variables with a nonzero coefficient somewhere in the matrix.
  std::vector<int> occurring_variables() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * vars_ + k;
  }
  Ring ring_;
  int dim_;
  int vars_;
  std::vector<Int> coeffs_;
};

/// Coordinates of matrices with respect to a list of basis matrices over Z/p^r.
///
/// The basis must be linearly independent mod p. Coordinates are recovered from a square
/// submatrix of the flattened basis that is invertible mod p, then checked by reconstruction.
class BasisCoordinates {
 public:
  BasisCoordinates(Ring ring, std::vector<Matrix> basis);

  const Ring& ring() const { return ring_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  /// Throws ContractError when x is not in the span.
  Vector coordinates(const Matrix& x) const;
  std::optional<Vector> try_coordinates(const Matrix& x) const;
  Matrix element(const Vector& coords) const;

 private:
  Ring ring_;
  std::vector<Matrix> basis_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> chosen_entries_;
  Matrix selector_inverse_;
};

Matrix bracket(const Ring& ring, const Matrix& x, const Matrix& y);

/// Commutator matrix of the span of `basis` over `ring`, or ContractError naming the first
/// pair whose bracket leaves the span.
LinearFormMatrix commutator_matrix(const Ring& ring, const std::vector<Matrix>& basis);

/// sl_n or gl_n over Z with a fixed integral basis, structure constants and trace-form Gram matrix.
class LieLattice {
 public:
  enum class Kind { sl, gl };

  /// sl_2 = (e12, e11-e22, e21); sl_3 = (e12, e13, e23, e11-e22, e22-e33, e21, e31, e32);
  /// general n: upper e_ij, then e_kk - e_{k+1,k+1}, then lower e_ij.
  static LieLattice sl(int n);
  /// gl_n with basis e_ij in row-major order.
  static LieLattice gl(int n);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int half_dim() const { return dim() / 2; }
  std::string name() const;

  const std::vector<Matrix>& basis() const { return basis_; }
  /// [b_i, b_j] = sum_k structure(i, j, k) b_k, integers.
  Int structure(int i, int j, int k) const;
  /// Gram matrix of the trace form, scaled by `form_scale` (a unit rescaling of kappa).
  const Matrix& gram() const { return gram_; }

  /// Same lattice with kappa replaced by form_scale * kappa.
  LieLattice with_form_scale(Int form_scale) const;
  Int form_scale() const { return form_scale_; }

  bool contains(const Ring& ring, const Matrix& x) const;
  Vector coordinates(const Ring& ring, const Matrix& x) const;
  Matrix element(const Ring& ring, const Vector& coords) const;

  /// Column j holds the coordinates of [x, b_j].
  Matrix ad_matrix(const Ring& ring, const Matrix& x) const;
  Int form(const Ring& ring, const Matrix& x, const Matrix& y) const;

  /// w_k = kappa(e, b_k). Throws ConfigError if the Gram determinant is not a unit mod p.
  Vector dual_coordinates(const Ring& ring, const Matrix& e) const;
  /// The element e with dual_coordinates(e) = w.
  Matrix from_dual_coordinates(const Ring& ring, const Vector& w) const;

  LinearFormMatrix commutator_matrix(const Ring& ring) const;

  nlohmann::json to_json() const;

 private:
  LieLattice(Kind kind, int n, std::vector<Matrix> basis);
  void require_unit_gram(const Ring& ring) const;

  Kind kind_;
  int n_;
  std::vector<Matrix> basis_;
  std::vector<Int> structure_;
  Matrix gram_;
  Int form_scale_ = 1;
};

}  // namespace shadow
