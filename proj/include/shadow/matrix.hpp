#pragma once

#include <Eigen/Core>
#include <json.hpp>

#include <optional>
#include <vector>

#include "shadow/local_ring.hpp"

namespace shadow {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense matrix of canonical residues; the ring travels alongside as an argument.
using Matrix = MatrixX<Int>;
using Vector = VectorX<Int>;

Matrix canon(const Ring& ring, const Matrix& m);
Matrix identity(const Ring& ring, Eigen::Index n);
Matrix unit_matrix(Eigen::Index n, Eigen::Index i, Eigen::Index j);

Matrix add(const Ring& ring, const Matrix& a, const Matrix& b);
Matrix sub(const Ring& ring, const Matrix& a, const Matrix& b);
Matrix neg(const Ring& ring, const Matrix& a);
Matrix scale(const Ring& ring, Int s, const Matrix& a);
Matrix mul(const Ring& ring, const Matrix& a, const Matrix& b);
Vector mul(const Ring& ring, const Matrix& a, const Vector& v);
Int trace(const Ring& ring, const Matrix& a);

/// Entrywise reduction from `ring` to level r'. Throws ContractError when r' > level.
Matrix reduce(const Ring& ring, const Matrix& m, int r_target);
/// Minimum valuation over all entries (level for the zero matrix).
int valuation(const Ring& ring, const Matrix& m);
bool is_zero(const Matrix& m);

Int determinant(const Ring& ring, const Matrix& m);
/// Inverse over Z/p^r, present iff the reduction mod p is invertible.
std::optional<Matrix> inverse(const Ring& ring, const Matrix& m);

/// Kernel basis over F_p (row echelon with first-nonzero pivots); `m` is reduced mod p first.
std::vector<Vector> kernel_mod_p(Int p, const Matrix& m);
int rank_mod_p(Int p, const Matrix& m);

/// Rank of a small row-major matrix over F_p, in place. Used by the hot census loops.
int rank_mod_p_inplace(int p, int rows, int cols, int* entries);

/// Result of diagonalising a matrix over Z/p^r by row and column operations:
/// P * M * Q = diag(p^v_1, ..., p^v_k, 0, ...). Only Q is kept.
struct LocalSmithForm {
  std::vector<int> valuations;  // ascending, capped at the level, length min(rows, cols)
  Matrix column_transform;      // Q, invertible over Z/p^r
};

LocalSmithForm local_smith_form(const Ring& ring, const Matrix& m);

/// Basis mod p of the reduction of ker(M) ⊆ (Z/p^r)^cols.
std::vector<Vector> kernel_reduction_mod_p(const Ring& ring, const Matrix& m);

/// Paired elementary-divisor exponents of an antisymmetric matrix, capped at the level.
struct DivisorProfile {
  int level = 0;
  std::vector<int> exponents;  // ascending, length floor(d/2)

  int pair_count() const { return static_cast<int>(exponents.size()); }
  /// Number of pairs whose divisor is nonzero mod p^level.
  int pairs_below_level() const;
  bool operator==(const DivisorProfile&) const = default;
};

bool is_antisymmetric(const Ring& ring, const Matrix& m);
/// Throws ContractError for non-antisymmetric input.
DivisorProfile antisymmetric_profile(const Ring& ring, const Matrix& m);

/// Subspace of F_p^m held as the rows of its reduced row echelon form, so equal subspaces
/// compare equal.
class Subspace {
 public:
  Subspace() : Subspace(0, 0) {}
  Subspace(Int p, int ambient);
  Subspace(Int p, int ambient, const std::vector<Vector>& spanning);

  Int p() const { return p_; }
  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.rows()); }
  std::vector<Vector> basis() const;

  /// Adds v to the span; returns false when it was already there.
  bool insert(const Vector& v);
  bool contains(const Vector& v) const;
  /// Coefficients of v in basis(); throws ContractError if v is outside.
  Vector coordinates(const Vector& v) const;
  /// {v in this : f(v) = 0 for every row f of `functionals`}.
  Subspace intersect_kernel(const Matrix& functionals) const;

  bool operator==(const Subspace& o) const { return p_ == o.p_ && ambient_ == o.ambient_ && dim() == o.dim() && rows_ == o.rows_; }

 private:
  Int p_;
  int ambient_;
  Matrix rows_;
  std::vector<Eigen::Index> pivots_;
};

/// Row-major flattening of an n x n matrix and its inverse.
Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& v, Eigen::Index n);

nlohmann::json to_json(const Ring& ring, const Matrix& m);
/// Parses {"ring": {"p", "r"}, "entries": [[...]]}.
std::pair<Ring, Matrix> matrix_from_json(const nlohmann::json& j);

}  // namespace shadow
