#include "shadow/verify.hpp"

#include <optional>
#include <random>

#include "shadow/group.hpp"
#include "shadow/orbits.hpp"
#include "shadow/parallel.hpp"

namespace shadow {

namespace {

nlohmann::json coords_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

template <class K>
nlohmann::json histogram_json(const std::map<K, std::uint64_t>& h) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, n] : h) {
    if constexpr (std::is_same_v<K, ShadowSignature>) {
      out.push_back({{"signature", k.to_string()}, {"count", n}});
    } else {
      out.push_back({{"key", k.size()}, {"count", n}});
    }
  }
  return out;
}

struct CoadjointSummary {
  int d_s = 0;
  std::size_t orbits = 0;
  std::map<ShadowSignature, std::uint64_t> orbit_signatures;
  std::map<ShadowSignature, std::uint64_t> functional_signatures;
  std::map<std::vector<Code>, std::uint64_t> orbit_keys;
};

std::uint64_t power_u64(Int p, int k) {
  std::uint64_t out = 1;
  for (int i = 0; i < k; ++i) out *= static_cast<std::uint64_t>(p);
  return out;
}

}  // namespace

void VerifyReport::fail(nlohmann::json witness) {
  ++failures;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
}

void VerifyReport::absorb(const VerifyReport& other) {
  instances += other.instances;
  skipped += other.skipped;
  failures += other.failures;
  for (const auto& w : other.witnesses)
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
}

nlohmann::json VerifyReport::to_json() const {
  return {{"target", target},
          {"algebra", algebra},
          {"p", p},
          {"levels", levels},
          {"instances", instances},
          {"skipped", skipped},
          {"failures", failures},
          {"passed", passed()},
          {"witnesses", witnesses},
          {"details", details}};
}

LiftingStudy study_lifts(const LieLattice& lie, Int p, int r, std::uint64_t bound) {
  const Ring lo(p, r), hi(p, r + 1);
  const AdjointAtlas top(lie, hi, bound);
  const AdjointAtlas base(lie, lo, bound);
  const auto& codec = base.codec();
  const int d = lie.dim();
  const auto gl = lie.n() == 2 ? general_linear_elements(codec) : std::vector<Code>{};

  LiftingStudy study;
  study.p = p;
  study.r = r;
  for (auto* rep : {&study.thm_a, &study.thm_b, &study.thm_d}) {
    rep->algebra = lie.name();
    rep->p = p;
    rep->levels = {r};
  }
  study.thm_a.target = "thmA";
  study.thm_b.target = "thmB";
  study.thm_d.target = "thmD";

  std::vector<std::optional<ShadowSignature>> top_sig(top.orbit_count());
  std::vector<std::optional<std::vector<Code>>> top_key(top.orbit_count());
  auto sig_of_orbit = [&](std::int32_t id) -> const ShadowSignature& {
    auto& slot = top_sig[static_cast<std::size_t>(id)];
    if (!slot) slot = signature(codec, top.representative_shadow(id), lie.kind());
    return *slot;
  };
  auto key_of_orbit = [&](std::int32_t id) -> const std::vector<Code>& {
    auto& slot = top_key[static_cast<std::size_t>(id)];
    if (!slot) slot = conjugacy_key(codec, top.representative_shadow(id), gl);
    return *slot;
  };

  std::map<std::vector<Code>, CoadjointSummary> summaries;
  const std::uint64_t fiber = power_u64(p, d);
  const Int step = lo.modulus();
  std::uint64_t distinct_fail_free = 0;

  for (std::uint64_t idx = 0; idx < base.size(); ++idx) {
    const Vector coords = base.coordinates_of(idx);
    const Subgroup s = base.shadow_of(idx);
    std::vector<std::uint64_t> lifts(fiber);
    for (std::uint64_t y = 0; y < fiber; ++y) {
      Vector c = coords;
      std::uint64_t rest = y;
      for (int k = 0; k < d; ++k) {
        c(k) += step * static_cast<Int>(rest % static_cast<std::uint64_t>(p));
        rest /= static_cast<std::uint64_t>(p);
      }
      lifts[y] = top.index_of(c);
    }
    bool preserving = false;
    for (std::uint64_t b : lifts) {
      if (top.representative_shadow(top.orbit_of(b)).order() != s.order()) continue;
      if (top.shadow_of(b) == s) {
        preserving = true;
        break;
      }
    }
    if (!preserving) {
      ++study.thm_a.skipped;
      ++study.thm_b.skipped;
      ++study.thm_d.skipped;
      continue;
    }

    auto it = summaries.find(s.elements());
    if (it == summaries.end()) {
      const Matrix a = lie.element(lo, coords);
      const Subspace w = lie_shadow(lie, lo, a);
      const auto census = coadjoint_orbits(codec, s, w);
      CoadjointSummary sum;
      sum.d_s = w.dim();
      sum.orbits = census.orbits.orbit_count();
      for (std::size_t o = 0; o < census.orbits.orbit_count(); ++o) {
        const auto& stab = census.orbits.stabilizers[o];
        const auto sig = signature(codec, stab, lie.kind());
        ++sum.orbit_signatures[sig];
        sum.functional_signatures[sig] += census.orbits.sizes[o];
        if (!gl.empty()) ++sum.orbit_keys[conjugacy_key(codec, stab, gl)];
      }
      it = summaries.emplace(s.elements(), std::move(sum)).first;
      ++distinct_fail_free;
    }
    const auto& sum = it->second;
    const nlohmann::json element{{"element", coords_json(coords)}, {"level", r}};

    std::map<std::int32_t, bool> above;
    std::map<ShadowSignature, std::uint64_t> direct;
    for (std::uint64_t b : lifts) {
      const auto id = top.orbit_of(b);
      above[id] = true;
      ++direct[sig_of_orbit(id)];
    }

    ++study.thm_a.instances;
    if (above.size() != sum.orbits) {
      auto w = element;
      w["orbitsAbove"] = above.size();
      w["coadjointOrbits"] = sum.orbits;
      study.thm_a.fail(w);
    }

    ++study.thm_b.instances;
    std::map<ShadowSignature, std::uint64_t> above_sigs;
    std::map<std::vector<Code>, std::uint64_t> above_keys;
    for (const auto& [id, _] : above) {
      ++above_sigs[sig_of_orbit(id)];
      if (!gl.empty()) ++above_keys[key_of_orbit(id)];
    }
    if (above_sigs != sum.orbit_signatures || above_keys != sum.orbit_keys) {
      auto w = element;
      w["above"] = histogram_json(above_sigs);
      w["coadjoint"] = histogram_json(sum.orbit_signatures);
      w["conjugacyKeysAgree"] = above_keys == sum.orbit_keys;
      study.thm_b.fail(w);
    }

    ++study.thm_d.instances;
    const std::uint64_t scale = power_u64(p, d - sum.d_s);
    std::map<ShadowSignature, std::uint64_t> formula;
    for (const auto& [sig, n] : sum.functional_signatures) formula[sig] = scale * n;
    if (formula != direct) {
      auto w = element;
      w["direct"] = histogram_json(direct);
      w["formula"] = histogram_json(formula);
      study.thm_d.fail(w);
    }

    auto& counts = study.lift_counts[s.elements()];
    if (counts.elements == 0) {
      counts.counts = direct;
    } else if (counts.counts != direct) {
      if (counts.mismatches == 0) counts.first_mismatch = element;
      ++counts.mismatches;
    }
    ++counts.elements;
  }
  for (auto* rep : {&study.thm_a, &study.thm_b, &study.thm_d}) {
    rep->details["distinctShadows"] = distinct_fail_free;
    rep->details["orbitsAtLevel"] = {{std::to_string(r), base.orbit_count()}, {std::to_string(r + 1), top.orbit_count()}};
  }
  study.thm_b.details["gl2ConjugacyKeys"] = !gl.empty();
  return study;
}

VerifyReport verify_lift_independence(const std::vector<LiftingStudy>& studies) {
  VerifyReport rep;
  rep.target = "nliftsIndependent";
  std::map<std::vector<Code>, std::map<ShadowSignature, std::uint64_t>> seen;
  std::uint64_t shadows = 0;
  for (const auto& st : studies) {
    rep.p = st.p;
    rep.algebra = st.thm_d.algebra;
    rep.levels.push_back(st.r);
    for (const auto& [key, counts] : st.lift_counts) {
      rep.instances += counts.elements;
      if (counts.mismatches) {
        for (std::uint64_t k = 0; k < counts.mismatches; ++k) rep.fail(counts.first_mismatch);
      }
      auto [it, fresh] = seen.emplace(key, counts.counts);
      if (fresh) {
        ++shadows;
      } else if (it->second != counts.counts) {
        rep.fail({{"shadowOrder", key.size()}, {"level", st.r}, {"reason", "counts differ across levels"}});
      }
    }
  }
  rep.details["distinctShadows"] = shadows;
  return rep;
}

namespace {

struct ExpChunk {
  VerifyReport rep;
};

void exp_checks(VerifyReport& rep, const Ring& ring, const LieLattice& lie, const Matrix& x,
                const std::vector<std::pair<Int, Int>>& pairs, bool all_multiples, const char* family) {
  ++rep.instances;
  const Matrix e = exponential(ring, x);
  const auto n = x.rows();
  auto witness = [&](const char* what) {
    return nlohmann::json{{"family", family}, {"check", what}, {"x", matrix_json(x)}};
  };
  if (mul(ring, e, exponential(ring, neg(ring, x))) != identity(ring, n)) rep.fail(witness("inverse"));
  if (all_multiples) {
    // exp((a+1)x) = exp(ax) exp(x) for every a; together with exp(0) = I this is the full law
    Matrix prev = identity(ring, n);
    if (exponential(ring, Matrix::Zero(n, n)) != prev) rep.fail(witness("zero"));
    for (Int a = 1; a <= ring.modulus(); ++a) {
      const Matrix cur = exponential(ring, scale(ring, a, x));
      if (cur != mul(ring, prev, e)) {
        rep.fail(witness("one-parameter"));
        break;
      }
      prev = cur;
    }
  }
  for (const auto& [a, b] : pairs) {
    if (exponential(ring, scale(ring, ring.add(a, b), x)) !=
        mul(ring, exponential(ring, scale(ring, a, x)), exponential(ring, scale(ring, b, x))))
      rep.fail(witness("one-parameter pair"));
  }
  if (adjoint_matrix(ring, lie, e) != exponential(ring, lie.ad_matrix(ring, x))) rep.fail(witness("Ad-ad"));
  if (exp_lie_criterion(ring, x) != (trace(ring, x) == 0)) rep.fail(witness("determinant criterion"));
}

}  // namespace

VerifyReport verify_exp(const ExpSuiteOptions& options) {
  const Int p = options.p;
  if (p <= 2 || !is_prime(p)) throw ConfigError("the exp suite needs an odd prime");
  VerifyReport total;
  total.target = "exp";
  total.algebra = "gl2,sl2,gl3";
  total.p = p;
  total.levels = {2, 3};

  auto run = [&](std::uint64_t count, auto&& body) {
    const auto parts = map_chunks(count, options.threads, [&](std::uint64_t b, std::uint64_t e) {
      VerifyReport rep;
      for (auto i = b; i < e; ++i) body(rep, i);
      return rep;
    });
    VerifyReport merged;
    for (const auto& part : parts) merged.absorb(part);
    return merged;
  };

  // p gl_2(Z/p^2): x = p y, y over gl_2(F_p); every pair (a, b)
  const Ring r2(p, 2);
  const auto gl2 = LieLattice::gl(2);
  std::vector<std::pair<Int, Int>> all_pairs;
  for (Int a = 0; a < r2.modulus(); ++a)
    for (Int b = 0; b < r2.modulus(); ++b) all_pairs.push_back({a, b});
  const auto gl2_part = run(power_u64(p, 4), [&](VerifyReport& rep, std::uint64_t i) {
    Vector y(4);
    for (int k = 0; k < 4; ++k) {
      y(k) = static_cast<Int>(i % static_cast<std::uint64_t>(p));
      i /= static_cast<std::uint64_t>(p);
    }
    const Matrix x = scale(r2, p, gl2.element(r2, y));
    exp_checks(rep, r2, gl2, x, all_pairs, true, "p gl2(Z/p^2)");
  });

  // p sl_2(Z/p^3): x = p y, y over sl_2(Z/p^2)
  const Ring r3(p, 3);
  const auto sl2 = LieLattice::sl(2);
  const Int m2 = r2.modulus();
  const auto sl2_part = run(power_u64(m2, 3), [&](VerifyReport& rep, std::uint64_t i) {
    const std::uint64_t index = i;
    Vector y(3);
    for (int k = 0; k < 3; ++k) {
      y(k) = static_cast<Int>(i % static_cast<std::uint64_t>(m2));
      i /= static_cast<std::uint64_t>(m2);
    }
    std::mt19937_64 rng(options.seed ^ (index * 0x9E3779B97F4A7C15ULL));
    std::vector<std::pair<Int, Int>> pairs;
    for (int k = 0; k < 4; ++k)
      pairs.push_back({static_cast<Int>(rng() % static_cast<std::uint64_t>(r3.modulus())),
                       static_cast<Int>(rng() % static_cast<std::uint64_t>(r3.modulus()))});
    exp_checks(rep, r3, sl2, scale(r3, p, sl2.element(r3, y)), pairs, true, "p sl2(Z/p^3)");
  });

  // seeded samples of p gl_3(Z/p^2); every other sample is forced traceless
  const auto gl3 = LieLattice::gl(3);
  const auto gl3_part = run(options.gl3_samples, [&](VerifyReport& rep, std::uint64_t i) {
    std::mt19937_64 rng(options.seed + i);
    Vector y(9);
    for (int k = 0; k < 9; ++k) y(k) = static_cast<Int>(rng() % static_cast<std::uint64_t>(p));
    if (i % 2 == 0) y(8) = r2.canon(-(y(0) + y(4)));
    std::vector<std::pair<Int, Int>> pairs;
    for (int k = 0; k < 6; ++k)
      pairs.push_back({static_cast<Int>(rng() % static_cast<std::uint64_t>(m2)), static_cast<Int>(rng() % static_cast<std::uint64_t>(m2))});
    exp_checks(rep, r2, gl3, scale(r2, p, gl3.element(r2, y)), pairs, false, "p gl3(Z/p^2) sample");
  });

  total.absorb(gl2_part);
  total.absorb(sl2_part);
  total.absorb(gl3_part);
  total.details = {{"gl2Exhaustive", gl2_part.instances},
                   {"sl2Exhaustive", sl2_part.instances},
                   {"gl3Samples", gl3_part.instances},
                   {"seed", options.seed}};
  return total;
}

VerifyReport verify_shadows(const LieLattice& lie, Int p, int r, std::uint64_t bound) {
  VerifyReport rep;
  rep.target = "shadows";
  rep.algebra = lie.name();
  rep.p = p;
  rep.levels = {r};
  const Ring ring(p, r);
  const ModPMatrices codec(lie.n(), p);
  std::map<std::string, std::uint64_t> provenance;

  if (lie.kind() == LieLattice::Kind::sl && lie.n() == 2) {
    const AdjointAtlas atlas(lie, ring, bound);
    std::uint64_t torus_exceptions = 0;
    for (std::uint64_t idx = 0; idx < atlas.size(); ++idx) {
      ++rep.instances;
      const Vector coords = atlas.coordinates_of(idx);
      const Matrix a = lie.element(ring, coords);
      const Subgroup s = atlas.shadow_of(idx);
      const nlohmann::json element{{"element", coords_json(coords)}, {"level", r}};
      if (centralizer_module_size(ring, a) <= bound && !(group_shadow_oracle(lie, ring, a, bound) == s)) {
        auto w = element;
        w["check"] = "oracle";
        rep.fail(w);
      }
      const auto rec = group_shadow_recursive(lie, ring, a, bound);
      ++provenance[rec.provenance];
      if (!(rec.group == s)) {
        auto w = element;
        w["check"] = "recursive";
        rep.fail(w);
      }
      if (!(additive_span(codec, s, lie.kind()) == lie_shadow(lie, ring, a))) {
        // over F_3 a split torus reduces to {+-I}, whose span misses the traceless part
        if (p == 3 && s.order() == 2) {
          ++torus_exceptions;
        } else {
          auto w = element;
          w["check"] = "additive span";
          rep.fail(w);
        }
      }
    }
    rep.details["splitTorusSpanExceptions"] = torus_exceptions;
    nlohmann::json prov = nlohmann::json::object();
    for (const auto& [k, v] : provenance) prov[k] = v;
    rep.details["recursiveProvenance"] = prov;
    return rep;
  }

  if (lie.kind() != LieLattice::Kind::sl || lie.n() != 3)
    throw ConfigError("shadow verification supports sl2 and sl3");
  if (r != 1) throw ConfigError("sl3 shadow verification runs at level 1 only");
  if (p == 3) throw ConfigError("the sl3 pipeline needs a prime other than 3");
  const ShadowLabeler labeler(lie, p);
  std::vector<Matrix> reps{Matrix::Zero(3, 3), unit_matrix(3, 0, 1)};
  for (Int alpha = 1; alpha < p; ++alpha) {
    Matrix l = Matrix::Zero(3, 3);
    l(0, 0) = alpha;
    l(1, 1) = alpha;
    l(2, 2) = ring.canon(-2 * alpha);
    reps.push_back(l);
  }
  for (Int a = 0; a < p; ++a)
    for (Int b = 0; b < p; ++b) {
      Matrix c = Matrix::Zero(3, 3);
      c(1, 0) = 1;
      c(2, 1) = 1;
      c(0, 2) = ring.canon(-b);
      c(1, 2) = ring.canon(-a);
      reps.push_back(c);
    }
  for (const auto& a : reps) {
    ++rep.instances;
    const auto s = group_shadow_oracle(lie, ring, a, bound);
    const auto w = lie_shadow(lie, ring, a);
    const nlohmann::json element{{"element", matrix_json(a)}, {"level", r}};
    if (!(additive_span(codec, s, lie.kind()) == w)) {
      auto wj = element;
      wj["check"] = "additive span";
      rep.fail(wj);
    }
    const auto by_group = labeler.label(signature(codec, s, lie.kind()));
    const auto by_matrix = to_string(classify_shadow_sl3(a, p));
    ++provenance[by_matrix];
    if (by_group != by_matrix) {
      auto wj = element;
      wj["check"] = "label";
      wj["group"] = by_group;
      wj["classifier"] = by_matrix;
      rep.fail(wj);
    }
  }
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [k, v] : provenance) labels[k] = v;
  rep.details["labels"] = labels;
  return rep;
}

}  // namespace shadow
