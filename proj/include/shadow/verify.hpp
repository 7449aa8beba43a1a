#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "shadow/finite_group.hpp"
#include "shadow/lie_lattice.hpp"
#include "shadow/shadows.hpp"

namespace shadow {

/// Outcome of one verification target: instance and failure counts plus the first witnesses.
struct VerifyReport {
  std::string target;
  std::string algebra;
  Int p = 0;
  std::vector<int> levels;
  std::uint64_t instances = 0;
  std::uint64_t skipped = 0;
  std::uint64_t failures = 0;
  std::vector<nlohmann::json> witnesses;
  nlohmann::json details = nlohmann::json::object();

  static constexpr std::size_t kMaxWitnesses = 20;
  void fail(nlohmann::json witness);
  void absorb(const VerifyReport& other);
  bool passed() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// Direct lift counts by target signature for every element sharing one exact shadow.
struct ShadowLiftCounts {
  std::map<ShadowSignature, std::uint64_t> counts;
  std::uint64_t elements = 0;
  std::uint64_t mismatches = 0;
  nlohmann::json first_mismatch;
};

/// Lifts from level r to r + 1 of every element of the lattice over Z/p^r, compared with the
/// coadjoint action of its shadow on the dual of its Lie shadow:
///   A: SL_n(Z/p^(r+1))-orbits meeting the fiber = coadjoint orbits;
///   B: multiset of stabilizer signatures (and GL_2-conjugacy keys for n = 2) agree;
///   D: lifts with shadow signature T = q^(d - d_S) #{c : Stab_S(c) has signature T}.
/// Elements without a shadow-preserving lift are skipped and counted.
struct LiftingStudy {
  Int p = 0;
  int r = 0;
  VerifyReport thm_a, thm_b, thm_d;
  std::map<std::vector<Code>, ShadowLiftCounts> lift_counts;
};

/// Throws ConfigError when the lattice over Z/p^(r+1) exceeds `bound`.
LiftingStudy study_lifts(const LieLattice& lie, Int p, int r, std::uint64_t bound = 10'000'000);

/// Elements with identical shadow subgroups (within and across the studies) have identical
/// lift counts for every target signature.
VerifyReport verify_lift_independence(const std::vector<LiftingStudy>& studies);

struct ExpSuiteOptions {
  Int p = 5;
  int threads = 1;
  std::uint64_t seed = 1;
  std::uint64_t gl3_samples = 1000;
};

/// exp(x) exp(-x) = I, exp((a+b)x) = exp(ax) exp(bx), Ad_exp(x) = exp(ad_x) and
/// [x in p sl <=> det exp(x) = 1], exhaustively over p gl_2(Z/p^2) and p sl_2(Z/p^3), and on
/// seeded samples of p gl_3(Z/p^2).
VerifyReport verify_exp(const ExpSuiteOptions& options);

/// Shadow consistency. sl2: for every element over Z/p^r the oracle, the recursive strategy and
/// the atlas agree and the additive span of the shadow is the Lie shadow. sl3 (r = 1): the same
/// span identity plus label agreement on representatives of every class type.
VerifyReport verify_shadows(const LieLattice& lie, Int p, int r, std::uint64_t bound = 10'000'000);

}  // namespace shadow
