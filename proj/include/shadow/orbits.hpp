#pragma once

#include <cstdint>
#include <vector>

#include "shadow/finite_group.hpp"
#include "shadow/lie_lattice.hpp"

namespace shadow {

/// Orbits of a group given by generators acting on {0, ..., points-1}.
///
/// The group is an abstract G with a homomorphism to GL_n(F_p); generator_images[g] is
/// the image of generator g. For each point x the transversal element t(x) satisfies
/// t(x) . rep = x, and only its image is stored. Stabilizer images come from Schreier
/// generators t(s.x)^{-1} s t(x), whose images generate the image of the stabilizer.
struct OrbitPartition {
  std::vector<std::int32_t> orbit_of;
  std::vector<Code> transversal;
  std::vector<std::uint64_t> representatives;  // least point of each orbit
  std::vector<std::uint64_t> sizes;
  std::vector<Subgroup> stabilizers;

  std::size_t orbit_count() const { return representatives.size(); }
};

template <class Act>
OrbitPartition schreier_orbits(std::uint64_t points, const ModPMatrices& codec, const std::vector<Code>& generator_images,
                               Act&& act) {
  OrbitPartition out;
  out.orbit_of.assign(points, -1);
  out.transversal.assign(points, codec.identity());
  std::vector<std::uint64_t> queue;
  for (std::uint64_t seed = 0; seed < points; ++seed) {
    if (out.orbit_of[seed] >= 0) continue;
    const auto id = static_cast<std::int32_t>(out.representatives.size());
    out.orbit_of[seed] = id;
    queue.assign(1, seed);
    std::vector<Code> stab_gens;
    Subgroup stab = Subgroup::generated(codec, {});
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::uint64_t x = queue[i];
      const Code tx = out.transversal[x];
      for (std::size_t g = 0; g < generator_images.size(); ++g) {
        const std::uint64_t y = act(g, x);
        const Code stx = codec.multiply(generator_images[g], tx);
        if (out.orbit_of[y] < 0) {
          out.orbit_of[y] = id;
          out.transversal[y] = stx;
          queue.push_back(y);
          continue;
        }
        const Code schreier = codec.multiply(codec.inverse(out.transversal[y]), stx);
        if (!stab.contains(schreier)) {
          stab_gens.push_back(schreier);
          stab = Subgroup::generated(codec, stab_gens);
        }
      }
    }
    out.representatives.push_back(seed);
    out.sizes.push_back(queue.size());
    out.stabilizers.push_back(std::move(stab));
  }
  return out;
}

/// All adjoint orbits of SL_n(Z/p^k) on a Lie lattice over Z/p^k, with the shadow of
/// every element available through the stored transversal.
class AdjointAtlas {
 public:
  /// Throws ConfigError when the lattice has more than `bound` elements.
  AdjointAtlas(LieLattice lie, Ring ring, std::uint64_t bound = 10'000'000);

  const LieLattice& lie() const { return lie_; }
  const Ring& ring() const { return ring_; }
  const ModPMatrices& codec() const { return codec_; }
  std::uint64_t size() const { return size_; }

  /// Element index: coordinates read as base-p^k digits, first coordinate least significant.
  std::uint64_t index_of(const Vector& coords) const;
  Vector coordinates_of(std::uint64_t index) const;

  std::int32_t orbit_of(std::uint64_t index) const { return part_.orbit_of[index]; }
  std::size_t orbit_count() const { return part_.orbit_count(); }
  std::uint64_t orbit_size(std::int32_t orbit) const { return part_.sizes[orbit]; }
  std::uint64_t representative(std::int32_t orbit) const { return part_.representatives[orbit]; }
  /// Shadow of the orbit representative.
  const Subgroup& representative_shadow(std::int32_t orbit) const { return part_.stabilizers[orbit]; }
  /// Shadow of an arbitrary element: t S_rep t^{-1}.
  Subgroup shadow_of(std::uint64_t index) const;

 private:
  LieLattice lie_;
  Ring ring_;
  ModPMatrices codec_;
  std::uint64_t size_;
  OrbitPartition part_;
};

/// Orbits of S <= SL_n(F_p) on the dual of W (a subspace of flattened n x n matrices),
/// with (g.c)(y) = c(g^{-1} y g). Functionals are indexed by their coordinates in the
/// dual basis of W.basis(), first coordinate least significant.
struct CoadjointCensus {
  int dim = 0;
  OrbitPartition orbits;
  /// action matrices of the generators of S on functional coordinates
  std::vector<Matrix> generator_actions;
};

/// Matrix of c -> g.c on functional coordinates.
Matrix coadjoint_action_matrix(const ModPMatrices& codec, Code g, const Subspace& w);
CoadjointCensus coadjoint_orbits(const ModPMatrices& codec, const Subgroup& s, const Subspace& w);

/// Index <-> coordinate vector over F_p used by the coadjoint census.
std::uint64_t functional_index(const Vector& c, Int p);
Vector functional_coordinates(std::uint64_t index, int dim, Int p);

}  // namespace shadow
