#include "shadow/lie_lattice.hpp"

#include <algorithm>

namespace shadow {

namespace {

// Large prime standing in for Z when every quantity involved is a small integer.
const Ring& integer_proxy() {
  static const Ring proxy(2147483647, 1);
  return proxy;
}

Int symmetric_lift(const Ring& ring, Int x) {
  x = ring.canon(x);
  return x > ring.modulus() / 2 ? x - ring.modulus() : x;
}

}  // namespace

LinearFormMatrix::LinearFormMatrix(Ring ring, int dim, int variables)
    : ring_(ring), dim_(dim), vars_(variables), coeffs_(static_cast<std::size_t>(dim) * dim * variables, 0) {}

Matrix LinearFormMatrix::evaluate(const Ring& target, const Vector& w) const {
  if (target.p() != ring_.p() || target.level() > ring_.level())
    throw ContractError("commutator matrix evaluated over an incompatible ring");
  if (w.size() != vars_) throw ContractError("wrong number of variables in evaluation");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      Int acc = 0;
      for (int k = 0; k < vars_; ++k) {
        const Int c = coeff(i, j, k);
        if (c != 0) acc = target.add(acc, target.mul(c, target.canon(w(k))));
      }
      out(i, j) = acc;
    }
  return out;
}

std::vector<int> LinearFormMatrix::occurring_variables() const {
  std::vector<int> vars;
  for (int k = 0; k < vars_; ++k) {
    bool seen = false;
    for (int i = 0; i < dim_ && !seen; ++i)
      for (int j = 0; j < dim_ && !seen; ++j) seen = coeff(i, j, k) != 0;
    if (seen) vars.push_back(k);
  }
  return vars;
}

BasisCoordinates::BasisCoordinates(Ring ring, std::vector<Matrix> basis) : ring_(ring), basis_(std::move(basis)) {
  const auto d = static_cast<Eigen::Index>(basis_.size());
  if (d == 0) return;
  const auto rows = basis_[0].rows(), cols = basis_[0].cols();
  Matrix flat(rows * cols, d);
  for (Eigen::Index k = 0; k < d; ++k) flat.col(k) = flatten(canon(ring_, basis_[k]));
  Matrix chosen(0, d);
  int rank = 0;
  for (Eigen::Index e = 0; e < flat.rows() && rank < d; ++e) {
    Matrix trial(chosen.rows() + 1, d);
    trial << chosen, flat.row(e);
    const int rk = rank_mod_p(ring_.p(), trial);
    if (rk > rank) {
      chosen = trial;
      rank = rk;
      chosen_entries_.emplace_back(e / cols, e % cols);
    }
  }
  if (rank < d) throw ContractError("basis is not linearly independent mod p");
  selector_inverse_ = *inverse(ring_, chosen);
}

std::optional<Vector> BasisCoordinates::try_coordinates(const Matrix& x) const {
  const auto d = dim();
  Vector sel(d);
  for (int k = 0; k < d; ++k) sel(k) = ring_.canon(x(chosen_entries_[k].first, chosen_entries_[k].second));
  Vector c = mul(ring_, selector_inverse_, sel);
  if (element(c) != canon(ring_, x)) return std::nullopt;
  return c;
}

Vector BasisCoordinates::coordinates(const Matrix& x) const {
  auto c = try_coordinates(x);
  if (!c) throw ContractError("element is not in the span of the basis");
  return *c;
}

Matrix BasisCoordinates::element(const Vector& coords) const {
  Matrix out = Matrix::Zero(basis_[0].rows(), basis_[0].cols());
  for (int k = 0; k < dim(); ++k) out = add(ring_, out, scale(ring_, coords(k), basis_[k]));
  return out;
}

Matrix bracket(const Ring& ring, const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
    throw ContractError("bracket: dimension mismatch");
  return sub(ring, mul(ring, x, y), mul(ring, y, x));
}

LinearFormMatrix commutator_matrix(const Ring& ring, const std::vector<Matrix>& basis) {
  const BasisCoordinates coords(ring, basis);
  const int d = coords.dim();
  LinearFormMatrix out(ring, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto c = coords.try_coordinates(bracket(ring, basis[i], basis[j]));
      if (!c)
        throw ContractError("span is not closed under the bracket: [b" + std::to_string(i) + ", b" +
                            std::to_string(j) + "] leaves it");
      for (int k = 0; k < d; ++k) out.set_coeff(i, j, k, (*c)(k));
    }
  return out;
}

LieLattice::LieLattice(Kind kind, int n, std::vector<Matrix> basis) : kind_(kind), n_(n), basis_(std::move(basis)) {
  const Ring& z = integer_proxy();
  const BasisCoordinates coords(z, basis_);
  const int d = dim();
  structure_.assign(static_cast<std::size_t>(d) * d * d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Vector c = coords.coordinates(bracket(z, basis_[i], basis_[j]));
      for (int k = 0; k < d; ++k) structure_[(static_cast<std::size_t>(i) * d + j) * d + k] = symmetric_lift(z, c(k));
    }
  gram_ = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram_(i, j) = symmetric_lift(z, trace(z, mul(z, basis_[i], basis_[j])));
}

LieLattice LieLattice::sl(int n) {
  if (n < 2) throw ConfigError("sl_n needs n >= 2");
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) basis.push_back(unit_matrix(n, i, j));
  for (int k = 0; k + 1 < n; ++k) {
    Matrix h = Matrix::Zero(n, n);
    h(k, k) = 1;
    h(k + 1, k + 1) = -1;
    basis.push_back(h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) basis.push_back(unit_matrix(n, i, j));
  // lower part ordered by column then row for sl_3: e21, e31, e32
  std::sort(basis.end() - n * (n - 1) / 2, basis.end(), [](const Matrix& a, const Matrix& b) {
    Eigen::Index ar, ac, br, bc;
    a.maxCoeff(&ar, &ac);
    b.maxCoeff(&br, &bc);
    return std::pair(ac, ar) < std::pair(bc, br);
  });
  return LieLattice(Kind::sl, n, std::move(basis));
}

LieLattice LieLattice::gl(int n) {
  if (n < 1) throw ConfigError("gl_n needs n >= 1");
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(unit_matrix(n, i, j));
  return LieLattice(Kind::gl, n, std::move(basis));
}

std::string LieLattice::name() const { return (kind_ == Kind::sl ? "sl" : "gl") + std::to_string(n_); }

Int LieLattice::structure(int i, int j, int k) const {
  const int d = dim();
  return structure_[(static_cast<std::size_t>(i) * d + j) * d + k];
}

LieLattice LieLattice::with_form_scale(Int form_scale) const {
  LieLattice copy = *this;
  copy.gram_ = gram_ * form_scale;
  copy.form_scale_ = form_scale_ * form_scale;
  return copy;
}

bool LieLattice::contains(const Ring& ring, const Matrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) return false;
  return kind_ == Kind::gl || trace(ring, x) == 0;
}

Vector LieLattice::coordinates(const Ring& ring, const Matrix& x) const {
  if (!contains(ring, x)) throw ContractError("element is not in " + name());
  const int d = dim();
  Vector c(d);
  int idx = 0;
  if (kind_ == Kind::gl) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) c(idx++) = ring.canon(x(i, j));
    return c;
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) c(idx++) = ring.canon(x(i, j));
  Int partial = 0;
  for (int k = 0; k + 1 < n_; ++k) {
    partial = ring.add(partial, x(k, k));
    c(idx++) = partial;
  }
  for (int j = 0; j < n_; ++j)
    for (int i = j + 1; i < n_; ++i) c(idx++) = ring.canon(x(i, j));
  return c;
}

Matrix LieLattice::element(const Ring& ring, const Vector& coords) const {
  Matrix out = Matrix::Zero(n_, n_);
  for (int k = 0; k < dim(); ++k)
    if (coords(k) != 0) out = add(ring, out, scale(ring, coords(k), basis_[k]));
  return out;
}

Matrix LieLattice::ad_matrix(const Ring& ring, const Matrix& x) const {
  const int d = dim();
  Matrix out(d, d);
  for (int j = 0; j < d; ++j) out.col(j) = coordinates(ring, bracket(ring, x, canon(ring, basis_[j])));
  return out;
}

Int LieLattice::form(const Ring& ring, const Matrix& x, const Matrix& y) const {
  return ring.mul(form_scale_, trace(ring, mul(ring, x, y)));
}

void LieLattice::require_unit_gram(const Ring& ring) const {
  if (!ring.is_unit(determinant(ring.residue_field(), canon(ring.residue_field(), gram_))))
    throw ConfigError("the trace form on " + name() + " is degenerate mod " + std::to_string(ring.p()));
}

Vector LieLattice::dual_coordinates(const Ring& ring, const Matrix& e) const {
  require_unit_gram(ring);
  return mul(ring, canon(ring, gram_), coordinates(ring, e));
}

Matrix LieLattice::from_dual_coordinates(const Ring& ring, const Vector& w) const {
  require_unit_gram(ring);
  const auto ginv = inverse(ring, canon(ring, gram_));
  return element(ring, mul(ring, *ginv, w));
}

LinearFormMatrix LieLattice::commutator_matrix(const Ring& ring) const {
  const int d = dim();
  LinearFormMatrix out(ring, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) out.set_coeff(i, j, k, structure(i, j, k));
  return out;
}

nlohmann::json LieLattice::to_json() const {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : basis_) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < n_; ++j) row.push_back(b(i, j));
      rows.push_back(row);
    }
    basis.push_back(rows);
  }
  nlohmann::json structure = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k)
        if (this->structure(i, j, k) != 0) structure.push_back({i, j, k, this->structure(i, j, k)});
  nlohmann::json gram = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < dim(); ++j) row.push_back(gram_(i, j));
    gram.push_back(row);
  }
  return {{"name", name()}, {"n", n_},        {"d", dim()},      {"h", half_dim()},
          {"basis", basis}, {"structure", structure}, {"gram", gram}, {"formScale", form_scale_}};
}

}  // namespace shadow
