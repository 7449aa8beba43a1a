#include "shadow/orbits.hpp"

#include "shadow/group.hpp"

namespace shadow {

namespace {

struct SparseEntry {
  int row;
  int col;
  Int value;
};

std::vector<SparseEntry> sparse(const Matrix& m) {
  std::vector<SparseEntry> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out.push_back({static_cast<int>(i), static_cast<int>(j), m(i, j)});
  return out;
}

}  // namespace

AdjointAtlas::AdjointAtlas(LieLattice lie, Ring ring, std::uint64_t bound)
    : lie_(std::move(lie)), ring_(ring), codec_(lie_.n(), ring.p()), size_(1) {
  for (int k = 0; k < lie_.dim(); ++k) {
    if (size_ > bound / static_cast<std::uint64_t>(ring_.modulus()))
      throw ConfigError("lattice over " + ring_.to_string() + " exceeds the enumeration bound");
    size_ *= static_cast<std::uint64_t>(ring_.modulus());
  }
  const auto gens = elementary_generators(ring_, lie_.n());
  std::vector<std::vector<SparseEntry>> actions;
  std::vector<Code> images;
  for (const auto& g : gens) {
    actions.push_back(sparse(adjoint_matrix(ring_, lie_, g.matrix())));
    images.push_back(codec_.encode(g.matrix()));
  }
  const int d = lie_.dim();
  const Int mod = ring_.modulus();
  part_ = schreier_orbits(size_, codec_, images, [&](std::size_t g, std::uint64_t x) {
    Int in[16], out[16] = {};
    for (int k = 0; k < d; ++k) {
      in[k] = static_cast<Int>(x % static_cast<std::uint64_t>(mod));
      x /= static_cast<std::uint64_t>(mod);
    }
    for (const auto& e : actions[g]) out[e.row] = (out[e.row] + e.value * in[e.col]) % mod;
    std::uint64_t y = 0;
    for (int k = d - 1; k >= 0; --k) y = y * static_cast<std::uint64_t>(mod) + static_cast<std::uint64_t>(out[k]);
    return y;
  });
}

std::uint64_t AdjointAtlas::index_of(const Vector& coords) const {
  std::uint64_t y = 0;
  for (Eigen::Index k = coords.size() - 1; k >= 0; --k)
    y = y * static_cast<std::uint64_t>(ring_.modulus()) + static_cast<std::uint64_t>(ring_.canon(coords(k)));
  return y;
}

Vector AdjointAtlas::coordinates_of(std::uint64_t index) const {
  Vector c(lie_.dim());
  for (int k = 0; k < lie_.dim(); ++k) {
    c(k) = static_cast<Int>(index % static_cast<std::uint64_t>(ring_.modulus()));
    index /= static_cast<std::uint64_t>(ring_.modulus());
  }
  return c;
}

Subgroup AdjointAtlas::shadow_of(std::uint64_t index) const {
  return representative_shadow(orbit_of(index)).conjugate(codec_, part_.transversal[index]);
}

std::uint64_t functional_index(const Vector& c, Int p) {
  std::uint64_t y = 0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) y = y * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(c(k));
  return y;
}

Vector functional_coordinates(std::uint64_t index, int dim, Int p) {
  Vector c(dim);
  for (int k = 0; k < dim; ++k) {
    c(k) = static_cast<Int>(index % static_cast<std::uint64_t>(p));
    index /= static_cast<std::uint64_t>(p);
  }
  return c;
}

Matrix coadjoint_action_matrix(const ModPMatrices& codec, Code g, const Subspace& w) {
  const Ring field(codec.p(), 1);
  const Matrix gm = codec.decode(g), gi = codec.decode(codec.inverse(g));
  const auto basis = w.basis();
  // A(i, j) = i-th coordinate of g^{-1} w_j g; (g.c)_j = sum_i c_i A(i, j)
  Matrix a(w.dim(), w.dim());
  for (int j = 0; j < w.dim(); ++j) {
    const Matrix y = mul(field, mul(field, gi, unflatten(basis[j], codec.n())), gm);
    a.col(j) = w.coordinates(flatten(y));
  }
  return a.transpose();
}

CoadjointCensus coadjoint_orbits(const ModPMatrices& codec, const Subgroup& s, const Subspace& w) {
  CoadjointCensus census;
  census.dim = w.dim();
  std::uint64_t points = 1;
  for (int k = 0; k < w.dim(); ++k) points *= static_cast<std::uint64_t>(codec.p());
  for (Code g : s.generators()) census.generator_actions.push_back(coadjoint_action_matrix(codec, g, w));
  const Int p = codec.p();
  const int dim = w.dim();
  const auto& actions = census.generator_actions;
  census.orbits = schreier_orbits(points, codec, s.generators(), [&](std::size_t g, std::uint64_t x) {
    Int in[16], out[16] = {};
    for (int k = 0; k < dim; ++k) {
      in[k] = static_cast<Int>(x % static_cast<std::uint64_t>(p));
      x /= static_cast<std::uint64_t>(p);
    }
    const Matrix& m = actions[g];
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k < dim; ++k) out[i] += m(i, k) * in[k];
      out[i] %= p;
    }
    std::uint64_t y = 0;
    for (int k = dim - 1; k >= 0; --k) y = y * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(out[k]);
    return y;
  });
  return census;
}

}  // namespace shadow
