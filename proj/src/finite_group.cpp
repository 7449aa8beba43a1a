#include "shadow/finite_group.hpp"

#include <algorithm>
#include <unordered_set>

namespace shadow {

ModPMatrices::ModPMatrices(int n, Int p) : n_(n), p_(p), universe_(1), identity_(0) {
  if (n < 1 || n > 4) throw ConfigError("matrix codes support 1 <= n <= 4");
  for (int i = 0; i < n * n; ++i) {
    if (universe_ > UINT64_MAX / static_cast<std::uint64_t>(p)) throw ConfigError("p^(n^2) exceeds 64 bits");
    universe_ *= static_cast<std::uint64_t>(p);
  }
  identity_ = encode(Matrix::Identity(n, n));
}

ModPMatrices::Digits ModPMatrices::digits(Code c) const {
  Digits d{};
  for (int i = n_ * n_ - 1; i >= 0; --i) {
    d[i] = static_cast<Int>(c % static_cast<std::uint64_t>(p_));
    c /= static_cast<std::uint64_t>(p_);
  }
  return d;
}

Code ModPMatrices::pack(const Digits& d) const {
  Code c = 0;
  for (int i = 0; i < n_ * n_; ++i) c = c * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(d[i]);
  return c;
}

Code ModPMatrices::encode(const Matrix& m) const {
  Digits d{};
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) d[i * n_ + j] = ((m(i, j) % p_) + p_) % p_;
  return pack(d);
}

Matrix ModPMatrices::decode(Code c) const {
  const auto d = digits(c);
  Matrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = d[i * n_ + j];
  return m;
}

Code ModPMatrices::multiply(Code a, Code b) const {
  const auto x = digits(a), y = digits(b);
  Digits z{};
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Int s = 0;
      for (int k = 0; k < n_; ++k) s += x[i * n_ + k] * y[k * n_ + j];
      z[i * n_ + j] = s % p_;
    }
  return pack(z);
}

Int ModPMatrices::determinant(Code a) const {
  const auto x = digits(a);
  Int d;
  if (n_ == 1) {
    d = x[0];
  } else if (n_ == 2) {
    d = x[0] * x[3] - x[1] * x[2];
  } else if (n_ == 3) {
    d = x[0] * (x[4] * x[8] - x[5] * x[7]) - x[1] * (x[3] * x[8] - x[5] * x[6]) + x[2] * (x[3] * x[7] - x[4] * x[6]);
  } else {
    return shadow::determinant(Ring(p_, 1), decode(a));
  }
  return ((d % p_) + p_) % p_;
}

Code ModPMatrices::inverse(Code a) const {
  const auto x = digits(a);
  auto m = [&](Int v) { return ((v % p_) + p_) % p_; };
  if (n_ > 3) {
    const auto inv = shadow::inverse(Ring(p_, 1), decode(a));
    if (!inv) throw ContractError("inverse of a singular matrix mod p");
    return encode(*inv);
  }
  const Int det = determinant(a);
  if (det == 0) throw ContractError("inverse of a singular matrix mod p");
  const Int s = det == 1 ? 1 : Ring(p_, 1).unit_inverse(det);
  Digits z{};
  if (n_ == 1) {
    z[0] = s;
  } else if (n_ == 2) {
    z[0] = x[3];
    z[1] = m(-x[1]);
    z[2] = m(-x[2]);
    z[3] = x[0];
  } else {
    auto e = [&](int i, int j) { return x[i * 3 + j]; };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // cofactor of (j, i)
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        z[i * 3 + j] = m(e(r0, c0) * e(r1, c1) - e(r0, c1) * e(r1, c0));
      }
  }
  if (s != 1)
    for (int i = 0; i < n_ * n_; ++i) z[i] = z[i] * s % p_;
  return pack(z);
}

int ModPMatrices::element_order(Code a) const {
  int k = 1;
  for (Code x = a; x != identity_; x = multiply(x, a)) ++k;
  return k;
}

namespace {

std::vector<Code> closure(const ModPMatrices& codec, const std::vector<Code>& generators) {
  // Small groups live in a hash set; large ones switch to a bitmap over all codes.
  std::vector<Code> elements{codec.identity()};
  std::unordered_set<Code> seen{codec.identity()};
  std::vector<bool> bitmap;
  const bool bitmap_allowed = codec.universe() <= (std::uint64_t{1} << 33);
  auto mark = [&](Code c) {
    if (!bitmap.empty()) {
      if (bitmap[c]) return false;
      bitmap[c] = true;
      return true;
    }
    if (!seen.insert(c).second) return false;
    if (bitmap_allowed && seen.size() > (1u << 16)) {
      bitmap.assign(codec.universe(), false);
      for (Code x : seen) bitmap[x] = true;
      seen.clear();
    }
    return true;
  };
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (Code g : generators) {
      const Code y = codec.multiply(elements[i], g);
      if (mark(y)) elements.push_back(y);
    }
  std::sort(elements.begin(), elements.end());
  return elements;
}

}  // namespace

Subgroup Subgroup::generated(const ModPMatrices& codec, std::vector<Code> generators) {
  Subgroup s;
  s.elements_ = closure(codec, generators);
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  s.generators_ = std::move(generators);
  return s;
}

Subgroup Subgroup::from_elements(const ModPMatrices& codec, std::vector<Code> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup s = generated(codec, {});
  std::vector<Code> gens;
  for (Code c : elements)
    if (!s.contains(c)) {
      gens.push_back(c);
      s = generated(codec, gens);
    }
  if (s.elements_ != elements) throw ContractError("element set is not a subgroup");
  return s;
}

bool Subgroup::contains(Code c) const { return std::binary_search(elements_.begin(), elements_.end(), c); }

Subgroup Subgroup::conjugate(const ModPMatrices& codec, Code g) const {
  const Code gi = codec.inverse(g);
  Subgroup s;
  s.elements_.reserve(elements_.size());
  for (Code x : elements_) s.elements_.push_back(codec.multiply(codec.multiply(g, x), gi));
  for (Code x : generators_) s.generators_.push_back(codec.multiply(codec.multiply(g, x), gi));
  std::sort(s.elements_.begin(), s.elements_.end());
  std::sort(s.generators_.begin(), s.generators_.end());
  return s;
}

bool Subgroup::is_abelian(const ModPMatrices& codec) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (codec.multiply(generators_[i], generators_[j]) != codec.multiply(generators_[j], generators_[i])) return false;
  return true;
}

std::map<int, std::size_t> Subgroup::order_histogram(const ModPMatrices& codec) const {
  std::map<int, std::size_t> h;
  for (Code x : elements_) ++h[codec.element_order(x)];
  return h;
}

Subgroup special_linear_group(const ModPMatrices& codec) {
  std::vector<Code> gens;
  for (int i = 0; i < codec.n(); ++i)
    for (int j = 0; j < codec.n(); ++j)
      if (i != j) {
        Matrix g = Matrix::Identity(codec.n(), codec.n());
        g(i, j) = 1;
        gens.push_back(codec.encode(g));
      }
  return Subgroup::generated(codec, gens);
}

std::vector<Code> general_linear_elements(const ModPMatrices& codec) {
  if (codec.universe() > 100000000) throw ConfigError("GL_n(F_p) enumeration too large");
  std::vector<Code> out;
  for (Code c = 0; c < codec.universe(); ++c)
    if (codec.determinant(c) != 0) out.push_back(c);
  return out;
}

std::vector<Code> conjugacy_key(const ModPMatrices& codec, const Subgroup& s, const std::vector<Code>& gl_elements) {
  std::vector<Code> best;
  std::vector<Code> conj(s.order());
  for (Code g : gl_elements) {
    const Code gi = codec.inverse(g);
    for (std::size_t i = 0; i < s.order(); ++i) conj[i] = codec.multiply(codec.multiply(g, s.elements()[i]), gi);
    std::sort(conj.begin(), conj.end());
    if (best.empty() || conj < best) best = conj;
  }
  return best;
}

}  // namespace shadow
