#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shadow/group.hpp"
#include "shadow/lie_lattice.hpp"
#include "shadow/series.hpp"

namespace shadow {

/// Where a reported number comes from.
enum class Provenance { POLY, ORACLE, CERT_ZERO, ESTIMATE, FORMULA_ONLY, UNKNOWN };
std::string to_string(Provenance p);

/// Ranks of the commutator matrix at every nonzero w in F_p^d, and the shadow labels of the
/// matching elements (the element e with kappa(e, -) = w). Labels: R when the Lie shadow has
/// dimension n - 1, L or J for the subregular sl3 classes, OTHER for anything else.
struct LevelOneCensus {
  std::string algebra;
  Int p = 0;
  std::map<int, std::uint64_t> ranks;
  std::map<std::string, std::uint64_t> labels;

  nlohmann::json to_json() const;
  /// rank,count lines
  std::string to_csv() const;
};

LevelOneCensus level_one_census(const LieLattice& lie, Int p, int threads);

/// An index set I with exponents r_I, as in the level/profile decomposition of P(s).
struct Pattern {
  std::vector<int> indices;    // i_1 < ... < i_l in [0, h-1]
  std::vector<int> exponents;  // r_1, ..., r_l >= 1

  int level() const;                  // N = sum r_j
  int t_degree(int h) const;          // sum r_j (h - i_j)
  int rank_mod_p(int h) const;        // 2 (h - i_l)
  auto operator<=>(const Pattern&) const = default;
  std::string to_string() const;
};

/// The pattern matched by the capped profile nu (ascending, length h) at level N, if any.
std::optional<Pattern> pattern_of(const std::vector<int>& nu, int level, int h);
/// All nonempty patterns with t-degree at most `cap`, ordered by degree then lexicographically.
std::vector<Pattern> patterns_up_to(int h, int cap);

struct PatternTerm {
  Pattern pattern;
  BigInt count = 0;
  Provenance provenance = Provenance::UNKNOWN;
};

/// Truncation of P(s) in t = q^-s by counting primitive vectors per profile pattern.
struct PoincareTruncation {
  std::string algebra;
  Int p = 0;
  int cap = 0;
  int feasible_level = 0;
  std::vector<BigInt> coeffs;
  std::vector<Provenance> provenance;
  std::vector<PatternTerm> terms;

  nlohmann::json to_json() const;
};

struct EnumerationOptions {
  int threads = 1;
  std::uint64_t bound = 10'000'000;  // largest number of vectors enumerated at one level
  std::optional<std::uint64_t> seed;  // enables ESTIMATE cells for infeasible patterns
  std::uint64_t samples = 20'000;
};

/// Profile histogram of the primitive vectors of (Z/p^N)^d (ascending capped exponents).
std::map<std::vector<int>, std::uint64_t> profile_census(const LieLattice& lie, Int p, int level, int threads);

PoincareTruncation poincare_enumerate(const LieLattice& lie, Int p, int cap, const EnumerationOptions& options);

/// Shadow data feeding the multiplicative formula: per label S its d'_S, z'_S, delta'(S),
/// Delta(G, S) and transitions Delta(S, T).
struct ShadowLabelData {
  std::string label;
  int d_prime = 0;
  int z_prime = 0;
  int delta_prime = 0;
  BigInt from_top = 0;
  std::map<std::string, BigInt> transitions;
};

struct ShadowData {
  std::string algebra;
  int d = 0;
  int h = 0;
  std::vector<ShadowLabelData> labels;
};

/// 1 + sum over decreasing shadow sequences of F'_I(q) prod_S X_S / (1 - X_S) with
/// X_S = q^(d - d'_S + z'_S) t^delta'(S). Throws ContractError when a needed transition is
/// missing.
RationalFunc poincare_from_shadow_data(const ShadowData& data, Int q);

/// The sl3 table: polynomial values always, enumerated values when `oracle` is set.
struct TableCell {
  BigInt poly = 0;
  std::optional<BigInt> oracle;
  bool match() const { return !oracle || *oracle == poly; }
  nlohmann::json to_json() const;
};

struct Sl3Row {
  std::string s;
  std::string t;  // "n.a." for the regular row
  TableCell d_prime, z_prime, delta_prime, delta;
};

struct Sl3Table {
  Int q = 0;
  bool oracle = false;
  std::vector<Sl3Row> rows;
  std::optional<LevelOneCensus> census;
  /// Checks beyond the cells: lambda kernels, fixed points, regular centralizers abelian,
  /// sum of Delta(SL, -) = q^8 - 1.
  std::map<std::string, bool> checks;

  bool all_match() const;
  /// Shadow data from the oracle values when present, else from the polynomials.
  ShadowData shadow_data() const;
  nlohmann::json to_json() const;
};

/// Throws ConfigError unless q is a prime other than 2 and 3.
Sl3Table sl3_table(Int q, bool oracle, int threads, std::uint64_t bound = 10'000'000);

/// q^(8m) (1 + u(q) q^-3 t^2 + u(1/q) q^-2 t^3 + q^-5 t^5) / ((1 - q t^2)(1 - q^2 t^3)),
/// u(X) = X^3 + X^2 - X - 1 - 1/X.
RationalFunc zeta_closed_form(Int q, int m);
/// zeta = q^(dm) P(s + 2): substitutes t -> q^-2 t and scales.
RationalFunc zeta_from_poincare(const RationalFunc& poincare, Int q, int d, int m);
std::vector<Rational> dirichlet_expand(const RationalFunc& f, int k);

struct ClosedFormCheck {
  Int q = 0;
  int m = 0;
  bool identity = false;          // closed form == q^(8m) P(s + 2) as rational functions
  std::vector<Rational> p_coeffs;  // from the shadow data, t^0..t^3
  std::vector<Rational> recovered;  // t^0..t^3 of the closed form after s -> s - 2, divided by q^(8m)
  nlohmann::json to_json() const;
};

ClosedFormCheck check_closed_form(const Sl3Table& table, int m);

struct Sl2Pipeline {
  Int p = 0;
  int m = 0;
  LevelOneCensus census;
  ShadowData data;
  RationalFunc poincare;
  RationalFunc zeta;
  RationalFunc expected;  // q^(3m) (1 - q^-2 t) / (1 - q t)
  PoincareTruncation enumerated;
  std::vector<Rational> formula_truncation;
  bool closed_form_matches = false;
  bool truncation_matches = false;

  nlohmann::json to_json() const;
};

/// Throws ConfigError unless p is an odd prime.
Sl2Pipeline sl2_pipeline(Int p, int m, const EnumerationOptions& options);

}  // namespace shadow
