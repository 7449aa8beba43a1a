#include "shadow/matrix.hpp"

#include <algorithm>
#include <utility>

namespace shadow {

Matrix canon(const Ring& ring, const Matrix& m) {
  return m.unaryExpr([&](Int x) { return ring.canon(x); });
}

Matrix identity(const Ring& ring, Eigen::Index n) {
  Matrix id = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) id(i, i) = ring.canon(1);
  return id;
}

Matrix unit_matrix(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1;
  return e;
}

Matrix add(const Ring& ring, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractError("dimension mismatch in add");
  return a.binaryExpr(b, [&](Int x, Int y) { return ring.add(x, y); });
}

Matrix sub(const Ring& ring, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractError("dimension mismatch in sub");
  return a.binaryExpr(b, [&](Int x, Int y) { return ring.sub(x, y); });
}

Matrix neg(const Ring& ring, const Matrix& a) {
  return a.unaryExpr([&](Int x) { return ring.neg(ring.canon(x)); });
}

Matrix scale(const Ring& ring, Int s, const Matrix& a) {
  const Int c = ring.canon(s);
  return a.unaryExpr([&](Int x) { return ring.mul(c, ring.canon(x)); });
}

Matrix mul(const Ring& ring, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ContractError("dimension mismatch in mul");
  Matrix out(a.rows(), b.cols());
  const __int128 mod = ring.modulus();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      __int128 acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        acc += static_cast<__int128>(a(i, k)) * b(k, j);
        acc %= mod;
      }
      out(i, j) = ring.canon(static_cast<Int>(acc));
    }
  return out;
}

Vector mul(const Ring& ring, const Matrix& a, const Vector& v) {
  Matrix col = v;
  return mul(ring, a, col).col(0);
}

Int trace(const Ring& ring, const Matrix& a) {
  Int t = 0;
  for (Eigen::Index i = 0; i < std::min(a.rows(), a.cols()); ++i) t = ring.add(t, a(i, i));
  return t;
}

Matrix reduce(const Ring& ring, const Matrix& m, int r_target) {
  if (r_target > ring.level() || r_target < 1)
    throw ContractError("cannot reduce a matrix to a higher level");
  const Int mod = checked_pow(ring.p(), r_target);
  return m.unaryExpr([&](Int x) { return ring.canon(x) % mod; });
}

int valuation(const Ring& ring, const Matrix& m) {
  int v = ring.level();
  for (Eigen::Index i = 0; i < m.size(); ++i) v = std::min(v, ring.valuation(m.data()[i]));
  return v;
}

bool is_zero(const Matrix& m) { return (m.array() == 0).all(); }

Int determinant(const Ring& ring, const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractError("determinant of a non-square matrix");
  const auto n = m.rows();
  if (n == 0) return ring.canon(1);
  if (n == 1) return ring.canon(m(0, 0));
  if (n == 2) return ring.sub(ring.mul(m(0, 0), m(1, 1)), ring.mul(m(0, 1), m(1, 0)));
  if (n == 3) {
    Int d = ring.mul(m(0, 0), ring.sub(ring.mul(m(1, 1), m(2, 2)), ring.mul(m(1, 2), m(2, 1))));
    d = ring.sub(d, ring.mul(m(0, 1), ring.sub(ring.mul(m(1, 0), m(2, 2)), ring.mul(m(1, 2), m(2, 0)))));
    d = ring.add(d, ring.mul(m(0, 2), ring.sub(ring.mul(m(1, 0), m(2, 1)), ring.mul(m(1, 1), m(2, 0)))));
    return d;
  }
  // Unit pivot anywhere in the matrix; if none, every entry is divisible by p and
  // det(A) = p^n det(A/p), where det(A/p) is only needed modulo p^(r-n).
  Matrix a = canon(ring, m);
  Eigen::Index pr = -1, pc = -1;
  for (Eigen::Index i = 0; i < n && pr < 0; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (ring.is_unit(a(i, j))) {
        pr = i;
        pc = j;
        break;
      }
  if (pr < 0) {
    if (n >= ring.level()) return 0;
    const Ring lower = ring.at_level(ring.level() - static_cast<int>(n));
    Matrix scaled = a.unaryExpr([&](Int x) { return x / ring.p(); });
    return ring.mul(checked_pow(ring.p(), static_cast<int>(n)), determinant(lower, scaled));
  }
  Int sign = 1;
  if (pr != 0) {
    a.row(0).swap(a.row(pr));
    sign = -sign;
  }
  if (pc != 0) {
    a.col(0).swap(a.col(pc));
    sign = -sign;
  }
  const Int inv = ring.unit_inverse(a(0, 0));
  for (Eigen::Index i = 1; i < n; ++i) {
    if (a(i, 0) == 0) continue;
    const Int f = ring.mul(a(i, 0), inv);
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = ring.sub(a(i, j), ring.mul(f, a(0, j)));
  }
  const Int minor = determinant(ring, a.bottomRightCorner(n - 1, n - 1));
  return ring.mul(ring.canon(sign), ring.mul(a(0, 0), minor));
}

std::optional<Matrix> inverse(const Ring& ring, const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractError("inverse of a non-square matrix");
  const auto n = m.rows();
  Matrix a = canon(ring, m);
  Matrix inv = identity(ring, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (ring.is_unit(a(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    a.row(col).swap(a.row(piv));
    inv.row(col).swap(inv.row(piv));
    const Int s = ring.unit_inverse(a(col, col));
    for (Eigen::Index j = 0; j < n; ++j) {
      a(col, j) = ring.mul(a(col, j), s);
      inv(col, j) = ring.mul(inv(col, j), s);
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Int f = a(r, col);
      for (Eigen::Index j = 0; j < n; ++j) {
        a(r, j) = ring.sub(a(r, j), ring.mul(f, a(col, j)));
        inv(r, j) = ring.sub(inv(r, j), ring.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

namespace {

// Reduced row echelon form over F_p; returns pivot columns.
std::vector<Eigen::Index> rref_mod_p(const Ring& field, Matrix& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < a.rows(); ++r)
      if (a(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    a.row(row).swap(a.row(piv));
    const Int s = field.unit_inverse(a(row, col));
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(row, j) = field.mul(a(row, j), s);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Int f = a(r, col);
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(r, j) = field.sub(a(r, j), field.mul(f, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<Vector> kernel_mod_p(Int p, const Matrix& m) {
  const Ring field(p, 1);
  Matrix a = canon(field, m);
  const auto pivots = rref_mod_p(field, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (Eigen::Index free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = Vector::Zero(a.cols());
    v(free) = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v(pivots[k]) = field.neg(a(k, free));
    basis.push_back(v);
  }
  return basis;
}

Subspace::Subspace(Int p, int ambient) : p_(p), ambient_(ambient), rows_(0, ambient) {}

Subspace::Subspace(Int p, int ambient, const std::vector<Vector>& spanning) : Subspace(p, ambient) {
  if (spanning.empty()) return;
  const Ring field(p, 1);
  Matrix a(static_cast<Eigen::Index>(spanning.size()), ambient);
  for (std::size_t i = 0; i < spanning.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = canon(field, spanning[i]).transpose();
  pivots_ = rref_mod_p(field, a);
  rows_ = a.topRows(static_cast<Eigen::Index>(pivots_.size()));
}

std::vector<Vector> Subspace::basis() const {
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) out.emplace_back(rows_.row(i).transpose());
  return out;
}

bool Subspace::contains(const Vector& v) const {
  const Ring field(p_, 1);
  Vector rest = canon(field, v);
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const Int f = rest(pivots_[k]);
    if (f == 0) continue;
    for (Eigen::Index j = 0; j < ambient_; ++j) rest(j) = field.sub(rest(j), field.mul(f, rows_(static_cast<Eigen::Index>(k), j)));
  }
  return is_zero(rest);
}

bool Subspace::insert(const Vector& v) {
  if (contains(v)) return false;
  auto vectors = basis();
  vectors.push_back(v);
  *this = Subspace(p_, ambient_, vectors);
  return true;
}

Vector Subspace::coordinates(const Vector& v) const {
  if (!contains(v)) throw ContractError("vector outside the subspace");
  const Ring field(p_, 1);
  Vector c(dim());
  for (std::size_t k = 0; k < pivots_.size(); ++k) c(static_cast<Eigen::Index>(k)) = field.canon(v(pivots_[k]));
  return c;
}

Subspace Subspace::intersect_kernel(const Matrix& functionals) const {
  // coefficient vectors x with functionals * rows^T * x = 0
  const Ring field(p_, 1);
  const Matrix images = mul(field, canon(field, functionals), Matrix(rows_.transpose()));
  std::vector<Vector> out;
  for (const auto& x : kernel_mod_p(p_, images)) out.push_back(mul(field, Matrix(rows_.transpose()), x));
  return Subspace(p_, ambient_, out);
}

Vector flatten(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Matrix unflatten(const Vector& v, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

int rank_mod_p(Int p, const Matrix& m) {
  const Ring field(p, 1);
  Matrix a = canon(field, m);
  return static_cast<int>(rref_mod_p(field, a).size());
}

int rank_mod_p_inplace(int p, int rows, int cols, int* e) {
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (e[r * cols + col] % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < cols; ++j) std::swap(e[piv * cols + j], e[rank * cols + j]);
    int pv = ((e[rank * cols + col] % p) + p) % p;
    // inverse by Fermat, p is small
    int inv = 1;
    for (int k = 0; k < p - 2; ++k) inv = inv * pv % p;
    for (int r = rank + 1; r < rows; ++r) {
      int f = ((e[r * cols + col] % p) + p) % p;
      if (f == 0) continue;
      f = f * inv % p;
      for (int j = col; j < cols; ++j) e[r * cols + j] = ((e[r * cols + j] - f * e[rank * cols + j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

LocalSmithForm local_smith_form(const Ring& ring, const Matrix& m) {
  Matrix a = canon(ring, m);
  const auto rows = a.rows(), cols = a.cols();
  Matrix q = identity(ring, cols);
  const Eigen::Index k = std::min(rows, cols);
  std::vector<int> vals;
  vals.reserve(k);
  for (Eigen::Index step = 0; step < k; ++step) {
    // minimum-valuation pivot, first in row-major order
    int best = ring.level();
    Eigen::Index pr = -1, pc = -1;
    for (Eigen::Index i = step; i < rows && best > 0; ++i)
      for (Eigen::Index j = step; j < cols; ++j) {
        const int v = ring.valuation(a(i, j));
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
          if (v == 0) break;
        }
      }
    if (pr < 0) {
      vals.resize(k, ring.level());
      break;
    }
    a.row(step).swap(a.row(pr));
    a.col(step).swap(a.col(pc));
    q.col(step).swap(q.col(pc));
    // normalise pivot to p^v by scaling the row with a unit
    const Int pv = checked_pow(ring.p(), best);
    const Int unit = a(step, step) / pv;
    const Int uinv = ring.unit_inverse(unit);
    for (Eigen::Index j = step; j < cols; ++j) a(step, j) = ring.mul(a(step, j), uinv);
    for (Eigen::Index i = step + 1; i < rows; ++i) {
      if (a(i, step) == 0) continue;
      const Int f = a(i, step) / pv;
      for (Eigen::Index j = step; j < cols; ++j) a(i, j) = ring.sub(a(i, j), ring.mul(f, a(step, j)));
    }
    for (Eigen::Index j = step + 1; j < cols; ++j) {
      if (a(step, j) == 0) continue;
      const Int f = a(step, j) / pv;
      a(step, j) = 0;
      for (Eigen::Index i = 0; i < cols; ++i) q(i, j) = ring.sub(q(i, j), ring.mul(f, q(i, step)));
    }
    vals.push_back(best);
  }
  return {std::move(vals), std::move(q)};
}

std::vector<Vector> kernel_reduction_mod_p(const Ring& ring, const Matrix& m) {
  const auto snf = local_smith_form(ring, m);
  std::vector<Vector> basis;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const bool zero_divisor =
        j >= static_cast<Eigen::Index>(snf.valuations.size()) || snf.valuations[j] >= ring.level();
    if (!zero_divisor) continue;
    Vector v = snf.column_transform.col(j);
    basis.push_back(v.unaryExpr([&](Int x) { return x % ring.p(); }));
  }
  return basis;
}

int DivisorProfile::pairs_below_level() const {
  return static_cast<int>(std::count_if(exponents.begin(), exponents.end(), [&](int a) { return a < level; }));
}

bool is_antisymmetric(const Ring& ring, const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (ring.add(m(i, j), m(j, i)) != 0) return false;
  return true;
}

DivisorProfile antisymmetric_profile(const Ring& ring, const Matrix& m) {
  if (!is_antisymmetric(ring, m)) throw ContractError("antisymmetric_profile: matrix is not antisymmetric");
  auto vals = local_smith_form(ring, m).valuations;
  std::sort(vals.begin(), vals.end());
  const auto h = vals.size() / 2;
  DivisorProfile prof{ring.level(), {}};
  for (std::size_t i = 0; i < h; ++i) {
    if (vals[2 * i] != vals[2 * i + 1]) throw ContractError("elementary divisors of antisymmetric matrix do not pair");
    prof.exponents.push_back(vals[2 * i]);
  }
  if (vals.size() % 2 == 1 && vals.back() != ring.level())
    throw ContractError("odd antisymmetric matrix with nonzero extra divisor");
  return prof;
}

nlohmann::json to_json(const Ring& ring, const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(ring.canon(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"ring", {{"p", ring.p()}, {"r", ring.level()}}}, {"entries", std::move(rows)}};
}

std::pair<Ring, Matrix> matrix_from_json(const nlohmann::json& j) {
  Ring ring(j.at("ring").at("p").get<Int>(), j.at("ring").at("r").get<int>());
  const auto& rows = j.at("entries");
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = nr == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
  Matrix m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != nc) throw ContractError("ragged matrix in JSON");
    for (Eigen::Index c = 0; c < nc; ++c) m(i, c) = ring.canon(rows[i][c].get<Int>());
  }
  return {ring, m};
}

}  // namespace shadow
