#include "shadow/group.hpp"

namespace shadow {

GroupElement::GroupElement(const Ring& ring, Matrix m) : m_(canon(ring, m)), det_(shadow::determinant(ring, m_)) {
  if (det_ != 1) throw ContractError("matrix does not have determinant 1");
}

GroupElement GroupElement::inverse(const Ring& ring) const { return GroupElement(ring, *shadow::inverse(ring, m_)); }

bool sl_membership(const Ring& ring, const Matrix& m) {
  return m.rows() == m.cols() && determinant(ring, m) == ring.canon(1);
}

Matrix adjoint_action(const Ring& ring, const Matrix& g, const Matrix& g_inverse, const Matrix& x) {
  return mul(ring, mul(ring, g, x), g_inverse);
}

Matrix adjoint_action(const Ring& ring, const GroupElement& g, const Matrix& x) {
  return adjoint_action(ring, g.matrix(), *inverse(ring, g.matrix()), x);
}

std::vector<GroupElement> elementary_generators(const Ring& ring, int n) {
  std::vector<GroupElement> gens;
  for (int level = 0; level < ring.level(); ++level) {
    const Int t = checked_pow(ring.p(), level);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Matrix g = identity(ring, n);
        g(i, j) = ring.canon(t);
        gens.emplace_back(ring, g);
      }
  }
  return gens;
}

BigInt sl_order(int n, Int p, int r) {
  BigInt q = p;
  BigInt order = pow(q, n * (n - 1) / 2);
  for (int i = 2; i <= n; ++i) order *= pow(q, i) - 1;
  return order * pow(q, (r - 1) * (n * n - 1));
}

ExpSeriesPlan exp_series_plan(Int p, int r) {
  // j - v_p(j!) >= r for every j >= terms; j - v_p(j!) >= j(p-2)/(p-1) bounds the search.
  const Int limit = static_cast<Int>(r) * (p - 1) / (p - 2) + 2;
  Int last_bad = 0;
  for (Int j = 1; j <= limit; ++j)
    if (j - factorial_valuation(p, j) < r) last_bad = j;
  const int terms = static_cast<int>(last_bad + 1);
  return {terms, factorial_valuation(p, terms - 1)};
}

Matrix exponential(const Ring& ring, const Matrix& x) {
  if (x.rows() != x.cols()) throw ContractError("exponential of a non-square matrix");
  if (valuation(ring, x) < 1) throw ContractError("exponential needs every entry of x divisible by p");
  const auto plan = exp_series_plan(ring.p(), ring.level());
  const Ring lifted = ring.at_level(ring.level() + plan.extra_precision);
  const Matrix xl = canon(ring, x);  // canonical residues serve as the lift
  Matrix power = identity(lifted, x.rows());
  Matrix sum = identity(ring, x.rows());
  for (int i = 1; i < plan.terms; ++i) {
    power = mul(lifted, power, xl);
    Matrix term = power.unaryExpr([&](Int v) { return exact_divide_lifted(ring, plan.extra_precision, v, i); });
    sum = add(ring, sum, term);
  }
  return sum;
}

bool exp_lie_criterion(const Ring& ring, const Matrix& x) { return determinant(ring, exponential(ring, x)) == 1; }

Matrix adjoint_matrix(const Ring& ring, const LieLattice& lie, const Matrix& g) {
  const auto ginv = inverse(ring, g);
  if (!ginv) throw ContractError("adjoint_matrix: g is not invertible");
  Matrix out(lie.dim(), lie.dim());
  for (int j = 0; j < lie.dim(); ++j)
    out.col(j) = lie.coordinates(ring, adjoint_action(ring, g, *ginv, canon(ring, lie.basis()[j])));
  return out;
}

}  // namespace shadow
