#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "shadow/lie_lattice.hpp"
#include "shadow/matrix.hpp"

namespace shadow {

using BigInt = boost::multiprecision::cpp_int;

/// An element of SL_n(Z/p^r).
class GroupElement {
 public:
  /// Throws ContractError unless det(m) = 1.
  GroupElement(const Ring& ring, Matrix m);

  const Matrix& matrix() const { return m_; }
  Int determinant() const { return det_; }
  GroupElement inverse(const Ring& ring) const;

 private:
  Matrix m_;
  Int det_;
};

bool sl_membership(const Ring& ring, const Matrix& m);

/// Ad_g(x) = g x g^{-1}.
Matrix adjoint_action(const Ring& ring, const GroupElement& g, const Matrix& x);
Matrix adjoint_action(const Ring& ring, const Matrix& g, const Matrix& g_inverse, const Matrix& x);

/// Elementary matrices I + t e_ij (i != j) with t in {1, p, ..., p^(r-1)}.
std::vector<GroupElement> elementary_generators(const Ring& ring, int n);

/// |SL_n(F_p)| and |SL_n(Z/p^r)| = p^((r-1)(n^2-1)) |SL_n(F_p)|.
BigInt sl_order(int n, Int p, int r = 1);

/// Truncation data of the exponential series on p * Mat_n(Z/p^r).
struct ExpSeriesPlan {
  int terms;            // sum over i < terms
  int extra_precision;  // E = v_p((terms - 1)!)
};
ExpSeriesPlan exp_series_plan(Int p, int r);

/// sum_i x^i / i! for a square matrix x with every entry divisible by p.
/// Works for any square matrix, so it also computes sum ad_x^i / i!.
/// Throws ContractError when some entry of x is a unit.
Matrix exponential(const Ring& ring, const Matrix& x);

/// det(exp x) = 1, for x in p * gl_n(Z/p^r).
bool exp_lie_criterion(const Ring& ring, const Matrix& x);

/// Matrix of Ad_g on the lattice coordinates (column j = coords of g b_j g^{-1}).
Matrix adjoint_matrix(const Ring& ring, const LieLattice& lie, const Matrix& g);

}  // namespace shadow
