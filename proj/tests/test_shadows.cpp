#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "shadow/group.hpp"
#include "shadow/orbits.hpp"
#include "shadow/shadows.hpp"

using namespace shadow;

namespace {

Matrix sl2_element(const Ring& ring, Int a, Int b, Int c) {
  Vector v(3);
  v << a, b, c;
  return LieLattice::sl(2).element(ring, v);
}

Matrix diag3(const Ring& ring, Int a, Int b, Int c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = ring.canon(a);
  m(1, 1) = ring.canon(b);
  m(2, 2) = ring.canon(c);
  return m;
}

// Brute-force stabilizer: every g in SL_2(Z/p^r) with g a = a g, reduced mod p.
struct BruteSl2 {
  Ring ring;
  ModPMatrices codec;
  std::vector<std::array<Int, 4>> elements;

  explicit BruteSl2(Ring r) : ring(r), codec(2, r.p()) {
    const Int m = ring.modulus();
    for (Int a = 0; a < m; ++a)
      for (Int b = 0; b < m; ++b)
        for (Int c = 0; c < m; ++c)
          for (Int d = 0; d < m; ++d)
            if (ring.sub(ring.mul(a, d), ring.mul(b, c)) == 1) elements.push_back({a, b, c, d});
  }

  std::vector<Code> stabilizer(const Matrix& x) const {
    std::set<Code> out;
    for (const auto& g : elements) {
      // g x == x g
      const Int l00 = ring.add(ring.mul(g[0], x(0, 0)), ring.mul(g[1], x(1, 0)));
      const Int l01 = ring.add(ring.mul(g[0], x(0, 1)), ring.mul(g[1], x(1, 1)));
      const Int l10 = ring.add(ring.mul(g[2], x(0, 0)), ring.mul(g[3], x(1, 0)));
      const Int l11 = ring.add(ring.mul(g[2], x(0, 1)), ring.mul(g[3], x(1, 1)));
      const Int r00 = ring.add(ring.mul(x(0, 0), g[0]), ring.mul(x(0, 1), g[2]));
      const Int r01 = ring.add(ring.mul(x(0, 0), g[1]), ring.mul(x(0, 1), g[3]));
      const Int r10 = ring.add(ring.mul(x(1, 0), g[0]), ring.mul(x(1, 1), g[2]));
      const Int r11 = ring.add(ring.mul(x(1, 0), g[1]), ring.mul(x(1, 1), g[3]));
      if (l00 == r00 && l01 == r01 && l10 == r10 && l11 == r11) {
        Matrix gm(2, 2);
        gm << g[0], g[1], g[2], g[3];
        out.insert(codec.encode(gm));
      }
    }
    return {out.begin(), out.end()};
  }
};

}  // namespace

TEST_CASE("finite subgroups of SL_n(F_p)") {
  const ModPMatrices c2(2, 5), c3(3, 5);
  CHECK(special_linear_group(c2).order() == 120);
  CHECK(special_linear_group(c3).order() == 372000);
  CHECK(general_linear_elements(c2).size() == 480);
  Matrix u = Matrix::Identity(2, 2);
  u(0, 1) = 1;
  const auto unipotent = Subgroup::generated(c2, {c2.encode(u)});
  CHECK(unipotent.order() == 5);
  CHECK(unipotent.is_abelian(c2));
  CHECK_FALSE(special_linear_group(c2).is_abelian(c2));
  CHECK_THROWS_AS(Subgroup::from_elements(c2, {c2.identity(), c2.encode(u)}), ContractError);
  const auto rebuilt = Subgroup::from_elements(c2, unipotent.elements());
  CHECK(rebuilt == unipotent);
  // conjugating the upper unipotents by the Weyl element gives the lower ones
  Matrix w(2, 2);
  w << 0, 1, 4, 0;
  Matrix lower = Matrix::Identity(2, 2);
  lower(1, 0) = 4;
  CHECK(unipotent.conjugate(c2, c2.encode(w)).contains(c2.encode(lower)));
  const auto h = special_linear_group(c2).order_histogram(c2);
  std::size_t total = 0;
  for (const auto& [o, n] : h) total += n;
  CHECK(total == 120);
  CHECK(h.at(1) == 1);
  CHECK(h.at(2) == 1);  // -I
  for (Code x = 0; x < c2.universe(); x += 7)
    if (c2.determinant(x) == 1) CHECK(c2.multiply(x, c2.inverse(x)) == c2.identity());
}

TEST_CASE("subspaces over F_p") {
  Vector a(3), b(3), c(3);
  a << 1, 2, 3;
  b << 2, 4, 6;
  c << 0, 1, 1;
  Subspace s(5, 3, {a, b});
  CHECK(s.dim() == 1);
  CHECK(s.insert(c));
  CHECK_FALSE(s.insert(b));
  CHECK(s.dim() == 2);
  CHECK(s == Subspace(5, 3, {c, a}));
  const Vector coords = s.coordinates(a);
  Vector back = Vector::Zero(3);
  const auto basis = s.basis();
  for (int i = 0; i < s.dim(); ++i) back += coords(i) * basis[i];
  CHECK(canon(Ring(5, 1), back) == a);
  Matrix f(1, 3);
  f << 1, 0, 0;
  CHECK(s.intersect_kernel(f).dim() == 1);
}

TEST_CASE("lie shadow examples") {
  const Ring f5(5, 1);
  const auto sl3 = LieLattice::sl(3);
  CHECK(lie_shadow(sl3, f5, Matrix::Zero(3, 3)).dim() == 8);
  const Subspace j = lie_shadow(sl3, f5, unit_matrix(3, 0, 1));
  CHECK(j.dim() == 4);
  const std::vector<Vector> expected{flatten(unit_matrix(3, 0, 1)), flatten(diag3(f5, 1, 1, -2)),
                                     flatten(unit_matrix(3, 0, 2)), flatten(unit_matrix(3, 2, 1))};
  CHECK(j == Subspace(5, 9, expected));
  CHECK(lie_shadow(sl3, f5, diag3(f5, 1, 1, -2)).dim() == 4);
}

TEST_CASE("lie shadow dimension matches the commutator-matrix profile") {
  const auto sl2 = LieLattice::sl(2);
  const Ring z25(5, 2);
  const auto r2 = sl2.commutator_matrix(z25);
  for (Int i = 0; i < 25 * 25 * 25; ++i) {
    const Matrix a = sl2_element(z25, i % 25, (i / 25) % 25, i / 625);
    const auto prof = antisymmetric_profile(z25, r2.evaluate(z25, sl2.dual_coordinates(z25, a)));
    CHECK(lie_shadow(sl2, z25, a).dim() == 3 - 2 * prof.pairs_below_level());
  }
  const auto sl3 = LieLattice::sl(3);
  const auto r3 = sl3.commutator_matrix(z25);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    Vector c(8);
    for (int k = 0; k < 8; ++k) c(k) = static_cast<Int>(rng() % 25) * (t % 3 == 0 ? 5 : 1) % 25;
    if (t % 7 == 0) c.tail(5).setZero();
    const Matrix a = sl3.element(z25, c);
    const auto prof = antisymmetric_profile(z25, r3.evaluate(z25, sl3.dual_coordinates(z25, a)));
    CHECK(lie_shadow(sl3, z25, a).dim() == 8 - 2 * prof.pairs_below_level());
  }
}

TEST_CASE("group shadow oracle examples") {
  const Ring f5(5, 1);
  const auto sl3 = LieLattice::sl(3);
  CHECK(group_shadow_oracle(sl3, f5, Matrix::Zero(3, 3)).order() == 372000);
  CHECK(group_shadow_oracle(sl3, f5, diag3(f5, 1, 1, -2)).order() == 480);
  CHECK(group_shadow_oracle(sl3, f5, unit_matrix(3, 0, 1)).order() == 500);
  CHECK(group_shadow_oracle(LieLattice::sl(2), f5, unit_matrix(2, 0, 1)).order() == 10);
  CHECK_THROWS_AS(group_shadow_oracle(sl3, Ring(5, 2), diag3(Ring(5, 2), 5, 5, -10), 1000), ConfigError);
}

TEST_CASE("shadow oracle and atlas agree with brute-force stabilizers") {
  const auto sl2 = LieLattice::sl(2);
  for (const Ring ring : {Ring(3, 2), Ring(5, 1), Ring(5, 2)}) {
    const BruteSl2 brute(ring);
    const AdjointAtlas atlas(sl2, ring);
    std::mt19937_64 rng(ring.modulus());
    const std::uint64_t size = atlas.size();
    const std::uint64_t step = size > 2000 ? size / 300 + 1 : 1;
    for (std::uint64_t idx = 0; idx < size; idx += step) {
      const std::uint64_t i = step == 1 ? idx : (idx + rng() % step) % size;
      const Matrix a = sl2.element(ring, atlas.coordinates_of(i));
      const auto expected = brute.stabilizer(a);
      CHECK(group_shadow_oracle(sl2, ring, a).elements() == expected);
      CHECK(atlas.shadow_of(i).elements() == expected);
    }
  }
}

TEST_CASE("atlas orbit sizes satisfy orbit-stabilizer with the exponential kernel count") {
  const auto sl2 = LieLattice::sl(2);
  for (const Ring ring : {Ring(3, 1), Ring(3, 2), Ring(3, 3), Ring(5, 2)}) {
    const AdjointAtlas atlas(sl2, ring);
    const auto group_order = sl_order(2, ring.p(), ring.level());
    std::uint64_t total = 0;
    for (std::size_t o = 0; o < atlas.orbit_count(); ++o) {
      total += atlas.orbit_size(static_cast<std::int32_t>(o));
      const Matrix x = sl2.element(ring, atlas.coordinates_of(atlas.representative(static_cast<std::int32_t>(o))));
      BigInt kernel = 1;
      for (int v : local_smith_form(ring, sl2.ad_matrix(ring, x)).valuations)
        kernel *= checked_pow(ring.p(), std::min(v, ring.level() - 1));
      const BigInt lhs = BigInt(atlas.orbit_size(static_cast<std::int32_t>(o))) *
                         atlas.representative_shadow(static_cast<std::int32_t>(o)).order() * kernel;
      CHECK(lhs == group_order);
    }
    CHECK(total == atlas.size());
  }
}

TEST_CASE("exp(p y) maps the centralizer mod p^(r-1) onto the kernel stabilizer") {
  const auto sl2 = LieLattice::sl(2);
  const Ring z25(5, 2), f5(5, 1);
  const BruteSl2 brute(z25);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const Matrix x = sl2_element(z25, static_cast<Int>(rng() % 25), static_cast<Int>(rng() % 25),
                                 static_cast<Int>(rng() % 25));
    // kernel part of the stabilizer by brute force
    std::set<Code> kernel;
    const ModPMatrices big(2, 25);
    for (const auto& g : brute.elements) {
      if (g[0] % 5 != 1 || g[1] % 5 != 0 || g[2] % 5 != 0 || g[3] % 5 != 1) continue;
      Matrix gm(2, 2);
      gm << g[0], g[1], g[2], g[3];
      if (mul(z25, gm, x) == mul(z25, x, gm)) kernel.insert(big.encode(gm));
    }
    std::set<Code> images;
    const Matrix xr = reduce(z25, x, 1);
    for (Int i = 0; i < 125; ++i) {
      const Matrix y = sl2_element(f5, i % 5, (i / 5) % 5, i / 25);
      if (!is_zero(bracket(f5, y, xr))) continue;
      const Matrix g = exponential(z25, scale(z25, 5, y));
      CHECK(kernel.count(big.encode(g)) == 1);
      images.insert(big.encode(g));
    }
    CHECK(images.size() == kernel.size());
  }
}

TEST_CASE("additive span of the shadow equals the Lie shadow") {
  const auto sl2 = LieLattice::sl(2);
  for (const Ring ring : {Ring(5, 1), Ring(5, 2)}) {
    const AdjointAtlas atlas(sl2, ring);
    int failures = 0;
    for (std::uint64_t i = 0; i < atlas.size(); ++i) {
      const Matrix a = sl2.element(ring, atlas.coordinates_of(i));
      if (!(additive_span(atlas.codec(), atlas.shadow_of(i), LieLattice::Kind::sl) == lie_shadow(sl2, ring, a))) ++failures;
    }
    CHECK(failures == 0);
  }
  const auto sl3 = LieLattice::sl(3);
  const Ring f5(5, 1);
  const ModPMatrices codec(3, 5);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    Vector c(8);
    for (int k = 0; k < 8; ++k) c(k) = static_cast<Int>(rng() % 5);
    if (t % 4 == 0) c.tail(5).setZero();
    if (t % 4 == 1) c.tail(4).setZero();
    const Matrix a = sl3.element(f5, c);
    if (is_zero(a)) continue;
    CHECK(additive_span(codec, group_shadow_oracle(sl3, f5, a), LieLattice::Kind::sl) == lie_shadow(sl3, f5, a));
  }
}

TEST_CASE("shadow-preserving lifts in sl2") {
  const auto sl2 = LieLattice::sl(2);
  const Ring f5(5, 1);
  const auto e = shadow_preserving_lift(sl2, f5, unit_matrix(2, 0, 1));
  REQUIRE(e.has_value());
  CHECK(e->confirmed);
  CHECK(e->lift == unit_matrix(2, 0, 1));
  const auto zero = shadow_preserving_lift(sl2, f5, Matrix::Zero(2, 2));
  REQUIRE(zero.has_value());
  CHECK(is_zero(zero->lift));
  for (Int i = 0; i < 125; ++i) {
    const auto lift = shadow_preserving_lift(sl2, f5, sl2_element(f5, i % 5, (i / 5) % 5, i / 25));
    REQUIRE(lift.has_value());
    CHECK(lift->confirmed);
  }
}

TEST_CASE("recursive shadows agree with the oracle") {
  const auto sl2 = LieLattice::sl(2);
  const Ring z9(3, 2);
  for (Int i = 0; i < 729; ++i) {
    const Matrix a = sl2_element(z9, i % 9, (i / 9) % 9, i / 81);
    const auto rec = group_shadow_recursive(sl2, z9, a);
    CHECK(rec.group == group_shadow_oracle(sl2, z9, a));
    CHECK(rec.provenance != "recursive/lie-filtered");
  }
  std::mt19937_64 rng(23);
  for (const Ring ring : {Ring(5, 2), Ring(5, 3), Ring(3, 4)}) {
    for (int t = 0; t < 60; ++t) {
      const Matrix a = sl2_element(ring, static_cast<Int>(rng() % ring.modulus()),
                                   static_cast<Int>(rng() % ring.modulus()) * (t % 2 ? ring.p() : 1),
                                   static_cast<Int>(rng() % ring.modulus()));
      CHECK(group_shadow_recursive(sl2, ring, a).group == group_shadow_oracle(sl2, ring, a));
    }
  }
  const auto sl3 = LieLattice::sl(3);
  const Ring z25(5, 2);
  Matrix reg = unit_matrix(3, 0, 1);
  reg(1, 2) = 1;
  reg(2, 0) = 5;
  Matrix sub = diag3(z25, 1, 1, -2);
  sub(0, 1) = 5;
  for (const Matrix& a : {reg, sub}) CHECK(group_shadow_recursive(sl3, z25, a).group == group_shadow_oracle(sl3, z25, a));
}

TEST_CASE("sl3 classification") {
  CHECK(classify_shadow_sl3(diag3(Ring(5, 1), 1, 1, -2), 5) == Sl3Label::L);
  CHECK(classify_shadow_sl3(unit_matrix(3, 0, 1), 5) == Sl3Label::J);
  CHECK(classify_shadow_sl3(diag3(Ring(7, 1), 1, 2, -3), 7) == Sl3Label::R);
  CHECK(classify_shadow_sl3(Matrix::Zero(3, 3), 5) == Sl3Label::SL);

  // labels by classification agree with labels by shadow signature on samples
  const auto sl3 = LieLattice::sl(3);
  const Ring f5(5, 1);
  const ShadowLabeler labeler(sl3, 5);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    Vector c(8);
    for (int k = 0; k < 8; ++k) c(k) = static_cast<Int>(rng() % 5);
    if (t % 3 == 0) c.tail(5).setZero();
    if (t % 3 == 1) {
      c.setZero();
      const Int alpha = 1 + static_cast<Int>(rng() % 4);
      c(3) = alpha;  // diag(alpha, alpha, -2 alpha) = alpha h1 + 2 alpha h2
      c(4) = f5.mul(2, alpha);
      c(0) = static_cast<Int>(rng() % 5);
    }
    const Matrix a = sl3.element(f5, c);
    const auto rec = shadow_record(labeler, sl3, f5, a, ShadowStrategy::oracle);
    CHECK(rec.label == to_string(classify_shadow_sl3(a, 5)));
  }
}

TEST_CASE("coadjoint census examples") {
  const ModPMatrices c2(2, 5);
  const Subspace w3(5, 4, {Vector::Unit(4, 0), Vector::Unit(4, 1), Vector::Unit(4, 2)});
  const auto trivial = coadjoint_orbits(c2, Subgroup::generated(c2, {}), w3);
  CHECK(trivial.orbits.orbit_count() == 125);

  const auto sl2 = LieLattice::sl(2);
  const Ring f5(5, 1);
  const Matrix h = sl2_element(f5, 0, 1, 0);
  const auto s = group_shadow_oracle(sl2, f5, h);
  const auto census = coadjoint_orbits(c2, s, lie_shadow(sl2, f5, h));
  CHECK(census.orbits.orbit_count() == 5);
  for (auto size : census.orbits.sizes) CHECK(size == 1);
}

TEST_CASE("lambda tables of the sl3 subregular shadows") {
  const auto sl3 = LieLattice::sl(3);
  for (const Int q : {Int{5}, Int{7}}) {
    const Ring field(q, 1);
    const ShadowLabeler labeler(sl3, q);
    const Matrix l = diag3(field, 1, 1, -2);
    const Matrix j = unit_matrix(3, 0, 1);
    for (const auto& [a, name] : {std::pair{l, "L"}, std::pair{j, "J"}}) {
      const auto s = group_shadow_oracle(sl3, field, a);
      const auto table = lambda_and_z(labeler, sl3, s, lie_shadow(sl3, field, a), name);
      CHECK(table.z == 1);
      CHECK(table.counts.at(name) == static_cast<std::uint64_t>(q));
      CHECK(table.counts.at("R") == static_cast<std::uint64_t>(q * (q * q * q - 1)));
      CHECK(table.counts.size() == 2);
      CHECK(table.kernel_matches_span);
      CHECK(table.z_matches_commutator);
      // lifts of a with a regular shadow: q^(d - d_S) * Lambda
      if (q == 5) CHECK(625 * table.counts.at("R") == 387500);
    }
    Matrix reg = unit_matrix(3, 0, 1);
    reg(1, 2) = 1;
    const auto sr = group_shadow_oracle(sl3, field, reg);
    const auto wr = lie_shadow(sl3, field, reg);
    CHECK(wr.dim() == 2);
    CHECK(fixed_dual_dimension(labeler.codec(), sr, wr) == 2);
    CHECK(sr.is_abelian(labeler.codec()));
  }
}

TEST_CASE("rescaling the trace form by a unit changes no shadow") {
  const auto sl2 = LieLattice::sl(2);
  const auto scaled = sl2.with_form_scale(2);
  CHECK(scaled.form_scale() == 2);
  const Ring z25(5, 2);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    const Matrix a = sl2_element(z25, static_cast<Int>(rng() % 25), static_cast<Int>(rng() % 25),
                                 static_cast<Int>(rng() % 25));
    CHECK(group_shadow_recursive(scaled, z25, a).group == group_shadow_recursive(sl2, z25, a).group);
    CHECK(scaled.dual_coordinates(z25, a) == canon(z25, Vector(2 * sl2.dual_coordinates(z25, a))));
  }
  const auto sl3 = LieLattice::sl(3);
  const auto scaled3 = sl3.with_form_scale(3);
  const Ring f5(5, 1);
  const ShadowLabeler labeler(sl3, 5);
  const Matrix j = unit_matrix(3, 0, 1);
  const auto s = group_shadow_oracle(sl3, f5, j);
  const auto w = lie_shadow(sl3, f5, j);
  const auto plain = lambda_and_z(labeler, sl3, s, w, "J");
  const auto rescaled = lambda_and_z(labeler, scaled3, s, w, "J");
  CHECK(plain.counts == rescaled.counts);
  CHECK(plain.z == rescaled.z);
}
