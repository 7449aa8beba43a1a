#include <doctest.h>

#include "shadow/verify.hpp"

using namespace shadow;

TEST_CASE("lifting study on sl2") {
  const auto sl2 = LieLattice::sl(2);
  std::vector<LiftingStudy> studies;
  for (int r : {1, 2}) {
    studies.push_back(study_lifts(sl2, 3, r));
    const auto& st = studies.back();
    CHECK(st.thm_a.passed());
    CHECK(st.thm_b.passed());
    CHECK(st.thm_d.passed());
    CHECK(st.thm_a.instances + st.thm_a.skipped == static_cast<std::uint64_t>(r == 1 ? 27 : 729));
    CHECK(st.thm_a.instances > 0);
  }
  const auto indep = verify_lift_independence(studies);
  CHECK(indep.passed());
  CHECK(indep.instances == studies[0].thm_a.instances + studies[1].thm_a.instances);

  const auto f5 = study_lifts(sl2, 5, 1);
  CHECK(f5.thm_a.passed());
  CHECK(f5.thm_b.passed());
  CHECK(f5.thm_d.passed());
  CHECK_THROWS_AS(study_lifts(sl2, 5, 2, 1000), ConfigError);
}

TEST_CASE("report witnesses are capped") {
  VerifyReport rep;
  for (int i = 0; i < 30; ++i) rep.fail({{"i", i}});
  CHECK(rep.failures == 30);
  CHECK(rep.witnesses.size() == VerifyReport::kMaxWitnesses);
  CHECK_FALSE(rep.passed());
  CHECK(rep.to_json()["passed"] == false);
}

TEST_CASE("exp suite at p = 3") {
  ExpSuiteOptions opts;
  opts.p = 3;
  opts.gl3_samples = 200;
  opts.threads = 2;
  const auto rep = verify_exp(opts);
  CHECK(rep.passed());
  CHECK(rep.details["gl2Exhaustive"] == 81);
  CHECK(rep.details["sl2Exhaustive"] == 729);
  CHECK(rep.details["gl3Samples"] == 200);
  opts.threads = 1;
  CHECK(verify_exp(opts).to_json() == rep.to_json());
  opts.p = 4;
  CHECK_THROWS_AS(verify_exp(opts), ConfigError);
}

TEST_CASE("shadow consistency") {
  const auto sl2 = LieLattice::sl(2);
  const auto z9 = verify_shadows(sl2, 3, 2);
  CHECK(z9.passed());
  CHECK(z9.instances == 729);
  CHECK(verify_shadows(sl2, 5, 1).passed());

  const auto sl3 = LieLattice::sl(3);
  const auto f5 = verify_shadows(sl3, 5, 1);
  CHECK(f5.passed());
  CHECK(f5.instances == 2 + 4 + 25);
  CHECK_THROWS_AS(verify_shadows(sl3, 5, 2), ConfigError);
  CHECK_THROWS_AS(verify_shadows(sl3, 3, 1), ConfigError);
}
