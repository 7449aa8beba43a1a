#include "shadow/shadows.hpp"

#include <cmath>
#include <sstream>

#include "shadow/group.hpp"

namespace shadow {

Subspace lie_shadow(const LieLattice& lie, const Ring& ring, const Matrix& a) {
  const Ring field = ring.residue_field();
  std::vector<Vector> vectors;
  for (const auto& v : kernel_reduction_mod_p(ring, lie.ad_matrix(ring, a))) vectors.push_back(flatten(lie.element(field, v)));
  return Subspace(ring.p(), lie.n() * lie.n(), vectors);
}

std::vector<Matrix> subspace_matrices(const Subspace& s, int n) {
  std::vector<Matrix> out;
  for (const auto& v : s.basis()) out.push_back(unflatten(v, n));
  return out;
}

Subspace additive_span(const ModPMatrices& codec, const Subgroup& s, LieLattice::Kind kind) {
  const int n = codec.n();
  Subspace span(codec.p(), n * n);
  for (Code c : s.elements()) {
    span.insert(flatten(codec.decode(c)));
    if (span.dim() == n * n) break;
  }
  if (kind == LieLattice::Kind::gl) return span;
  Matrix tr = Matrix::Zero(1, n * n);
  for (int i = 0; i < n; ++i) tr(0, i * n + i) = 1;
  return span.intersect_kernel(tr);
}

int fixed_dual_dimension(const ModPMatrices& codec, const Subgroup& s, const Subspace& w) {
  const int k = w.dim();
  const Ring field(codec.p(), 1);
  const auto& gens = s.generators();
  if (gens.empty() || k == 0) return k;
  Matrix stacked(static_cast<Eigen::Index>(gens.size()) * k, k);
  for (std::size_t g = 0; g < gens.size(); ++g)
    stacked.middleRows(static_cast<Eigen::Index>(g) * k, k) =
        sub(field, coadjoint_action_matrix(codec, gens[g], w), identity(field, k));
  return static_cast<int>(kernel_mod_p(codec.p(), stacked).size());
}

std::string ShadowSignature::to_string() const {
  std::ostringstream os;
  os << "order=" << order << ",d=" << span_dim << ",z=" << z << ",orders={";
  bool first = true;
  for (const auto& [o, c] : element_orders) {
    os << (first ? "" : ",") << o << ":" << c;
    first = false;
  }
  os << "}";
  return os.str();
}

nlohmann::json ShadowSignature::to_json() const {
  nlohmann::json orders = nlohmann::json::object();
  for (const auto& [o, c] : element_orders) orders[std::to_string(o)] = c;
  return {{"order", order}, {"d", span_dim}, {"z", z}, {"elementOrders", orders}};
}

ShadowSignature signature(const ModPMatrices& codec, const Subgroup& s, LieLattice::Kind kind) {
  ShadowSignature sig;
  sig.order = s.order();
  const Subspace span = additive_span(codec, s, kind);
  sig.span_dim = span.dim();
  sig.z = fixed_dual_dimension(codec, s, span);
  sig.element_orders = s.order_histogram(codec);
  return sig;
}

namespace {

// Matrix of X -> Xa - aX on row-major flattened n x n matrices.
Matrix commutator_map(const Ring& ring, const Matrix& a) {
  const auto n = a.rows();
  Matrix t = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) {
        t(i * n + j, i * n + k) = ring.add(t(i * n + j, i * n + k), a(k, j));
        t(i * n + j, k * n + j) = ring.sub(t(i * n + j, k * n + j), a(i, k));
      }
  return t;
}

Int flat_determinant(const Ring& ring, int n, const Int* x) {
  using W = __int128;
  const Int m = ring.modulus();
  if (n == 2) return ring.canon(static_cast<Int>((static_cast<W>(x[0]) * x[3] - static_cast<W>(x[1]) * x[2]) % m));
  if (n == 3) {
    auto minor = [&](int a, int b, int c, int d) {
      return static_cast<Int>((static_cast<W>(x[a]) * x[b] - static_cast<W>(x[c]) * x[d]) % m);
    };
    const W det = static_cast<W>(x[0]) * minor(4, 8, 5, 7) - static_cast<W>(x[1]) * minor(3, 8, 5, 6) +
                  static_cast<W>(x[2]) * minor(3, 7, 4, 6);
    return ring.canon(static_cast<Int>(det % m));
  }
  Matrix mat(n, n);
  for (int i = 0; i < n * n; ++i) mat(i / n, i % n) = x[i];
  return determinant(ring, mat);
}

}  // namespace

std::uint64_t centralizer_module_size(const Ring& ring, const Matrix& a) {
  const auto smith = local_smith_form(ring, commutator_map(ring, canon(ring, a)));
  std::uint64_t size = 1;
  for (int v : smith.valuations) {
    const auto f = static_cast<std::uint64_t>(checked_pow(ring.p(), v));
    if (size > UINT64_MAX / f) return UINT64_MAX;
    size *= f;
  }
  return size;
}

Subgroup group_shadow_oracle(const LieLattice& lie, const Ring& ring, const Matrix& a, std::uint64_t bound) {
  const ModPMatrices codec(lie.n(), ring.p());
  const Matrix ac = canon(ring, a);
  if (is_zero(ac)) return special_linear_group(codec);
  const int n = lie.n(), nn = n * n;
  const auto smith = local_smith_form(ring, commutator_map(ring, ac));
  std::uint64_t size = 1;
  std::vector<Int> radix;
  std::vector<std::vector<Int>> steps;
  for (int i = 0; i < nn; ++i) {
    const int v = smith.valuations[i];
    if (v == 0) continue;
    const Int r = checked_pow(ring.p(), v);
    if (size > bound / static_cast<std::uint64_t>(r))
      throw ConfigError("centralizer module exceeds the oracle bound " + std::to_string(bound));
    size *= static_cast<std::uint64_t>(r);
    radix.push_back(r);
    const Int unit = checked_pow(ring.p(), ring.level() - v);
    std::vector<Int> step(nn);
    for (int k = 0; k < nn; ++k) step[k] = ring.mul(unit, smith.column_transform(k, i));
    steps.push_back(std::move(step));
  }
  // Odometer over the module; a digit wrapping from radix-1 to 0 changes X by +step as well.
  std::vector<Int> digit(radix.size(), 0), x(nn, 0);
  std::vector<Code> found;
  const Int p = ring.p();
  for (std::uint64_t count = 0; count < size; ++count) {
    if (flat_determinant(ring, n, x.data()) == 1) {
      Code c = 0;
      for (int k = 0; k < nn; ++k) c = c * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(x[k] % p);
      found.push_back(c);
    }
    for (std::size_t d = 0; d < radix.size(); ++d) {
      for (int k = 0; k < nn; ++k) x[k] = ring.add(x[k], steps[d][k]);
      if (++digit[d] < radix[d]) break;
      digit[d] = 0;
    }
  }
  return Subgroup::from_elements(codec, std::move(found));
}

std::optional<ShadowLift> shadow_preserving_lift(const LieLattice& lie, const Ring& ring, const Matrix& a,
                                                 std::uint64_t bound) {
  const Ring next = ring.at_level(ring.level() + 1);
  const Ring field = ring.residue_field();
  const Matrix base = canon(ring, a);
  const Subspace target = lie_shadow(lie, ring, base);
  const bool can_confirm_a = centralizer_module_size(ring, base) <= bound;
  std::optional<Subgroup> shadow_a;
  std::uint64_t candidates = 1;
  for (int k = 0; k < lie.dim(); ++k) candidates *= static_cast<std::uint64_t>(ring.p());
  const Int step = ring.modulus();
  for (std::uint64_t y = 0; y < candidates; ++y) {
    const Matrix correction = lie.element(field, functional_coordinates(y, lie.dim(), ring.p()));
    const Matrix b = canon(next, add(next, base, scale(next, step, correction)));
    if (!(lie_shadow(lie, next, b) == target)) continue;
    if (!can_confirm_a || centralizer_module_size(next, b) > bound) return ShadowLift{b, false};
    if (!shadow_a) shadow_a = group_shadow_oracle(lie, ring, base, bound);
    if (group_shadow_oracle(lie, next, b, bound) == *shadow_a) return ShadowLift{b, true};
  }
  return std::nullopt;
}

RecursiveShadow group_shadow_recursive(const LieLattice& lie, const Ring& ring, const Matrix& a, std::uint64_t bound) {
  const Matrix ac = canon(ring, a);
  const int v = valuation(ring, ac);
  if (v == ring.level()) return {special_linear_group(ModPMatrices(lie.n(), ring.p())), "oracle"};
  if (v > 0) {
    // Stab(p^v a') reduces to the same subgroup mod p as Stab(a') one level group lower.
    const Int pv = checked_pow(ring.p(), v);
    return group_shadow_recursive(lie, ring.at_level(ring.level() - v), ac.unaryExpr([&](Int e) { return e / pv; }), bound);
  }
  if (ring.level() == 1) return {group_shadow_oracle(lie, ring, ac, bound), "oracle"};

  const Ring below = ring.at_level(ring.level() - 1);
  const Ring field = ring.residue_field();
  const Matrix b = reduce(ring, ac, below.level());
  const RecursiveShadow sb = group_shadow_recursive(lie, below, b, bound);
  const auto lift = shadow_preserving_lift(lie, below, b, bound);
  if (!lift) throw ContractError("no shadow-preserving lift of " + below.to_string() + " element");
  const Matrix diff = sub(ring, ac, lift->lift);
  const Int pr = below.modulus();
  const Matrix x = diff.unaryExpr([&](Int e) { return (e / pr) % ring.p(); });
  const Subspace w = lie_shadow(lie, below, b);
  const ModPMatrices codec(lie.n(), ring.p());
  const auto wb = subspace_matrices(w, lie.n());
  Vector c(w.dim());
  for (int j = 0; j < w.dim(); ++j) c(j) = lie.form(field, x, wb[j]);
  std::vector<Code> stab;
  for (Code g : sb.group.elements())
    if (mul(field, coadjoint_action_matrix(codec, g, w), c) == c) stab.push_back(g);
  std::string provenance = sb.provenance == "oracle" && lift->confirmed ? "recursive" : "recursive/lie-filtered";
  if (sb.provenance == "recursive/lie-filtered") provenance = sb.provenance;
  return {Subgroup::from_elements(codec, std::move(stab)), provenance};
}

std::string to_string(Sl3Label label) {
  switch (label) {
    case Sl3Label::SL: return "SL";
    case Sl3Label::L: return "L";
    case Sl3Label::J: return "J";
    case Sl3Label::R: return "R";
    default: return "OTHER";
  }
}

Sl3Label classify_shadow_sl3(const Matrix& a, Int p) {
  const Ring field(p, 1);
  const Matrix x = canon(field, a);
  if (is_zero(x)) return Sl3Label::SL;
  static const LieLattice sl3 = LieLattice::sl(3);
  const int dim = 8 - rank_mod_p(p, sl3.ad_matrix(field, x));
  if (dim == 2) return Sl3Label::R;
  if (dim != 4) return Sl3Label::OTHER;
  const Matrix sq = mul(field, x, x);
  if (is_zero(sq)) return Sl3Label::J;
  // (X - alpha)(X + 2 alpha) = X^2 + alpha X - 2 alpha^2
  for (Int alpha = 1; alpha < p; ++alpha) {
    Matrix q = add(field, sq, scale(field, alpha, x));
    q = sub(field, q, scale(field, field.mul(2, field.mul(alpha, alpha)), identity(field, 3)));
    if (is_zero(q)) return Sl3Label::L;
  }
  return Sl3Label::OTHER;
}

ShadowLabeler::ShadowLabeler(const LieLattice& lie, Int p)
    : lie_(lie), codec_(lie.n(), p), full_order_(static_cast<std::size_t>(sl_order(lie.n(), p))) {
  if (lie.n() == 3) {
    const Ring field(p, 1);
    Matrix l = Matrix::Zero(3, 3);
    l(0, 0) = 1;
    l(1, 1) = 1;
    l(2, 2) = field.canon(-2);
    sig_l_ = signature(codec_, group_shadow_oracle(lie, field, l), lie.kind());
    sig_j_ = signature(codec_, group_shadow_oracle(lie, field, unit_matrix(3, 0, 1)), lie.kind());
  }
}

std::string ShadowLabeler::label(const ShadowSignature& sig) const {
  if (sig.order == full_order_) return "SL";
  if (sig_l_ && sig == *sig_l_) return "L";
  if (sig_j_ && sig == *sig_j_) return "J";
  if (sig.span_dim == lie_.n() - 1) return "R";
  return "OTHER(" + sig.to_string() + ")";
}

nlohmann::json ShadowRecord::to_json() const {
  nlohmann::json basis = nlohmann::json::array();
  const int n = static_cast<int>(std::lround(std::sqrt(lie.ambient())));
  for (const auto& m : subspace_matrices(lie, n)) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(row);
    }
    basis.push_back(rows);
  }
  return {{"shadowOrder", group.order()}, {"d_S", d},          {"z_S", z},
          {"label", label},               {"provenance", provenance}, {"lieShadowBasis", basis}};
}

ShadowRecord shadow_record(const ShadowLabeler& labeler, const LieLattice& lie, const Ring& ring, const Matrix& a,
                           ShadowStrategy strategy, std::uint64_t bound) {
  ShadowRecord rec;
  if (strategy == ShadowStrategy::oracle) {
    rec.group = group_shadow_oracle(lie, ring, a, bound);
    rec.provenance = "oracle";
  } else {
    auto r = group_shadow_recursive(lie, ring, a, bound);
    rec.group = std::move(r.group);
    rec.provenance = std::move(r.provenance);
  }
  rec.lie = lie_shadow(lie, ring, a);
  rec.d = rec.lie.dim();
  rec.z = fixed_dual_dimension(labeler.codec(), rec.group, rec.lie);
  rec.label = labeler.label(signature(labeler.codec(), rec.group, lie.kind()));
  return rec;
}

nlohmann::json LambdaTable::to_json() const {
  nlohmann::json sigs = nlohmann::json::array();
  for (const auto& [sig, count] : by_signature) sigs.push_back({{"signature", sig.to_json()}, {"count", count}});
  return {{"counts", counts},
          {"bySignature", sigs},
          {"z", z},
          {"d", d},
          {"kernelMatchesSpan", kernel_matches_span},
          {"zMatchesCommutator", z_matches_commutator}};
}

LambdaTable lambda_and_z(const ShadowLabeler& labeler, const LieLattice& lie, const Subgroup& s, const Subspace& w,
                         const std::string& label_of_s) {
  const auto& codec = labeler.codec();
  const Int p = codec.p();
  const Ring field(p, 1);
  LambdaTable table;
  table.d = w.dim();
  const auto census = coadjoint_orbits(codec, s, w);
  const auto r = commutator_matrix(field, subspace_matrices(w, lie.n()));
  std::uint64_t fixed_points = 0;
  for (std::size_t o = 0; o < census.orbits.orbit_count(); ++o) {
    const auto& stab = census.orbits.stabilizers[o];
    const auto size = census.orbits.sizes[o];
    const auto sig = signature(codec, stab, lie.kind());
    const std::string label = stab == s ? label_of_s : labeler.label(sig);
    table.counts[label] += size;
    table.by_signature[sig] += size;
    if (size == 1) ++fixed_points;
    const Vector c = functional_coordinates(census.orbits.representatives[o], w.dim(), p);
    const int kernel = w.dim() - rank_mod_p(p, r.evaluate(field, c));
    if (kernel != sig.span_dim) table.kernel_matches_span = false;
  }
  table.z = fixed_dual_dimension(codec, s, w);
  std::uint64_t expected = 1;
  for (int k = 0; k < table.z; ++k) expected *= static_cast<std::uint64_t>(p);
  // {c : R_W(c) = 0} is the kernel of c -> (all entries of R_W(c))
  Matrix coeff(w.dim() * w.dim(), w.dim());
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j)
      for (int k = 0; k < w.dim(); ++k) coeff(i * w.dim() + j, k) = r.coeff(i, j, k);
  const int zero_locus = static_cast<int>(kernel_mod_p(p, coeff).size());
  table.z_matches_commutator = expected == fixed_points && zero_locus == table.z;
  return table;
}

}  // namespace shadow
