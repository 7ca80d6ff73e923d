#include <gtest/gtest.h>

#include "fedq/checks.hpp"
#include "fedq/error.hpp"

using namespace fedq;

namespace {

std::string transcript(const std::vector<CheckResult>& rs) {
  std::string s;
  for (const auto& r : rs) s += r.name + (r.pass ? " ok " : " FAIL ") + r.detail + "\n";
  return s;
}

}  // namespace

TEST(Suites, AllPassWithDefaults) {
  for (const auto& name : suite_names()) {
    SuiteOptions o;
    o.order = 2;
    o.samples = 6;
    for (const auto& r : run_suite(name, o)) EXPECT_TRUE(r.pass) << name << "/" << r.name << ": " << r.detail;
  }
}

TEST(Suites, SameSeedSameTranscript) {
  SuiteOptions o;
  o.order = 2;
  o.seed = 7;
  o.conventions.set("curvature-sign=-1");
  const std::string a = transcript(run_suite("hodge", o)), b = transcript(run_suite("hodge", o));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("cubic-term FAIL"), std::string::npos);
}

TEST(Suites, CorruptedQmmIsCaught) {
  PipelineOptions po;
  po.example = "s2-so3";
  Pipeline p = build_pipeline(po);
  QuantumMomentMap bad = p.qmm;
  // Adding λ·t to Φ_*(sx) breaks both identities.
  bad.phi_star[0].add(MultiIndex::unit(0), 1, Scalar(1));
  Sampler s(3);
  auto rs = verify_qmm(bad, *p.star, p.example->algebra, qmm_samples(2, p.work, s, 4));
  EXPECT_FALSE(rs[0].pass);
  EXPECT_FALSE(rs[1].pass);
}

TEST(Suites, Inputs) {
  SuiteOptions o;
  EXPECT_THROW(run_suite("nonsense", o), InputError);
  o.chart = "/nonexistent/chart.json";
  EXPECT_THROW(run_suite("associativity", o), InputError);
  EXPECT_THROW(load_lie_algebra("/nonexistent/alg.json"), InputError);
}

TEST(Sampler, SpecialLinear) {
  Sampler s(5);
  for (int i = 0; i < 10; ++i) {
    auto M = s.sl2_matrix();
    EXPECT_EQ(M[0][0] * M[1][1] - M[0][1] * M[1][0], Scalar(1));
  }
}
