#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

#include "shadow/finite_group.hpp"
#include "shadow/lie_lattice.hpp"
#include "shadow/orbits.hpp"

namespace shadow {

inline constexpr std::uint64_t kDefaultOracleBound = 10'000'000;

/// Reduction mod p of the centralizer of a in the lattice over `ring`, as a subspace of
/// flattened n x n matrices over F_p.
Subspace lie_shadow(const LieLattice& lie, const Ring& ring, const Matrix& a);
std::vector<Matrix> subspace_matrices(const Subspace& s, int n);

/// F_p-span of the elements of S, intersected with the lattice mod p (trace zero for sl).
Subspace additive_span(const ModPMatrices& codec, const Subgroup& s, LieLattice::Kind kind);

/// Dimension of the functionals on W fixed by every element of S.
int fixed_dual_dimension(const ModPMatrices& codec, const Subgroup& s, const Subspace& w);

/// Conjugation-invariant data used to compare shadows up to isomorphism.
struct ShadowSignature {
  std::size_t order = 0;
  int span_dim = 0;
  int z = 0;
  std::map<int, std::size_t> element_orders;

  auto operator<=>(const ShadowSignature&) const = default;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

ShadowSignature signature(const ModPMatrices& codec, const Subgroup& s, LieLattice::Kind kind);

/// Shadow via the centralizer module {X in Mat_n(Z/p^r) : Xa = aX}: its elements of
/// determinant 1 form the stabilizer, reduced mod p. Throws ConfigError when the module has
/// more than `bound` elements. a = 0 is answered with SL_n(F_p) directly.
Subgroup group_shadow_oracle(const LieLattice& lie, const Ring& ring, const Matrix& a,
                             std::uint64_t bound = kDefaultOracleBound);
/// Number of elements of the centralizer module the oracle would enumerate.
std::uint64_t centralizer_module_size(const Ring& ring, const Matrix& a);

struct RecursiveShadow {
  Subgroup group;
  /// "oracle" at level one, "recursive" when every lift was confirmed by the oracle,
  /// "recursive/lie-filtered" when some lift was accepted on its Lie shadow alone
  std::string provenance;
};

/// Shadow computed level by level: shadow(a) is the stabilizer in shadow(b) of the
/// functional kappa(x, -) on the Lie shadow of b, where a = b^ + p^(r-1) x for a
/// shadow-preserving lift b^ of b = a mod p^(r-1).
RecursiveShadow group_shadow_recursive(const LieLattice& lie, const Ring& ring, const Matrix& a,
                                       std::uint64_t bound = kDefaultOracleBound);

struct ShadowLift {
  Matrix lift;             // over ring.at_level(r + 1)
  bool confirmed = false;  // group shadows compared by the oracle
};

/// First lift (constant lift first, then lexicographic in the correction coordinates) whose
/// Lie shadow equals that of a; confirmed against the oracle when both modules fit `bound`.
std::optional<ShadowLift> shadow_preserving_lift(const LieLattice& lie, const Ring& ring, const Matrix& a,
                                                 std::uint64_t bound = kDefaultOracleBound);

enum class Sl3Label { SL, L, J, R, OTHER };
std::string to_string(Sl3Label label);

/// Label of an element of sl3(F_p): SL for 0, R for Lie shadow dimension 2, L for minimal
/// polynomial (X - alpha)(X + 2 alpha) with alpha != 0, J for a^2 = 0, OTHER otherwise.
Sl3Label classify_shadow_sl3(const Matrix& a, Int p);

/// Labels shadows of sl_n (n = 2, 3) by signature: SL, L, J, R, or OTHER(signature).
class ShadowLabeler {
 public:
  ShadowLabeler(const LieLattice& lie, Int p);
  std::string label(const ShadowSignature& sig) const;
  const ModPMatrices& codec() const { return codec_; }

 private:
  LieLattice lie_;
  ModPMatrices codec_;
  std::size_t full_order_;
  std::optional<ShadowSignature> sig_l_, sig_j_;
};

struct ShadowRecord {
  Subgroup group;
  Subspace lie;
  int d = 0;
  int z = 0;
  std::string label;
  std::string provenance;

  nlohmann::json to_json() const;
};

enum class ShadowStrategy { oracle, recursive };

ShadowRecord shadow_record(const ShadowLabeler& labeler, const LieLattice& lie, const Ring& ring, const Matrix& a,
                           ShadowStrategy strategy, std::uint64_t bound = kDefaultOracleBound);

/// Lambda(S, T) tallies over the functionals on W = Lie shadow, and z_S.
struct LambdaTable {
  std::map<std::string, std::uint64_t> counts;  // label -> number of functionals
  std::map<ShadowSignature, std::uint64_t> by_signature;
  int z = 0;
  int d = 0;
  /// dim ker R_W(c) equals the span dimension of Stab_S(c) for every functional
  bool kernel_matches_span = true;
  /// z agrees with the dimension of {c : R_W(c) = 0}
  bool z_matches_commutator = true;

  nlohmann::json to_json() const;
};

LambdaTable lambda_and_z(const ShadowLabeler& labeler, const LieLattice& lie, const Subgroup& s, const Subspace& w,
                         const std::string& label_of_s);

}  // namespace shadow
