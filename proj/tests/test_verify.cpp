#include <gtest/gtest.h>

#include "permrf/verify.hpp"

using namespace permrf;

namespace {

void expect_consistent(const SuiteReport& r) {
  EXPECT_LE(r.cases_passed, r.cases_total) << r.suite;
  if (r.assertive) {
    EXPECT_EQ(r.verdict == Verdict::pass, r.exceptions.empty()) << r.suite;
  } else {
    EXPECT_EQ(r.verdict, Verdict::report_only) << r.suite;
  }
}

SuiteOptions quick() {
  SuiteOptions o;
  o.equiv_samples = 100;
  return o;
}

}  // namespace

TEST(Suites, TheoremN2) {
  const auto r3 = suite_theorem_n2(3);
  EXPECT_EQ(r3.verdict, Verdict::pass);
  EXPECT_EQ(r3.cases_total, 6u);
  EXPECT_EQ(r3.cases_passed, 6u);
  EXPECT_EQ(r3.mode, "full-classify");
  expect_consistent(r3);
  EXPECT_EQ(suite_theorem_n2(2).verdict, Verdict::pass);
}

TEST(Suites, TheoremN2SampledPathAgreesWithFull) {
  SuiteOptions sampled;
  sampled.n2_full_classify_max_q = 3;
  const auto r = suite_theorem_n2(5, sampled);
  EXPECT_EQ(r.mode, "sampled");
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.cases_total, 20u);
  SuiteOptions few;
  few.n2_random_c = 10;
  const auto r11 = suite_theorem_n2(11, few);
  EXPECT_EQ(r11.mode, "sampled");
  EXPECT_EQ(r11.verdict, Verdict::pass);
  EXPECT_EQ(r11.cases_total, 110u);
}

TEST(Suites, TheoremN3) {
  const auto r2 = suite_theorem_n3(2, N3Mode::sufficiency);
  EXPECT_EQ(r2.verdict, Verdict::pass);
  EXPECT_EQ(r2.cases_total, 6u);
  const auto r5 = suite_theorem_n3(5, N3Mode::sufficiency);
  EXPECT_EQ(r5.verdict, Verdict::pass);
  EXPECT_EQ(r5.cases_total, 120u);

  const auto full = suite_theorem_n3(2, N3Mode::full_classify);
  EXPECT_EQ(full.verdict, Verdict::report_only);
  EXPECT_FALSE(full.assertive);
  for (const auto& e : full.exceptions) EXPECT_EQ(e.detail, "extra permuting c");
  expect_consistent(full);

  try {
    suite_theorem_n3(5, N3Mode::full_classify);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::size_budget_exceeded);
  }
}

TEST(Suites, Proposition) {
  const auto r5 = suite_proposition(5, 2);
  EXPECT_EQ(r5.verdict, Verdict::pass);
  EXPECT_TRUE(r5.assertive);
  const auto r3 = suite_proposition(3, 2);
  EXPECT_EQ(r3.verdict, Verdict::report_only);
  EXPECT_FALSE(r3.exceptions.empty());
  const auto c4 = suite_proposition(4, 3);
  EXPECT_EQ(c4.verdict, Verdict::report_only);
  for (const auto& r : {r5, r3, c4}) expect_consistent(r);
  EXPECT_THROW(suite_proposition(2, 4), Error);
}

TEST(Suites, LemmaEquiv) {
  const auto r = suite_lemma_equiv(quick());
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_FALSE(r.field.has_value());
  // 6 + 48 + 180 + 480 + 42 + 624 exhaustive cases, then the random ones.
  EXPECT_EQ(r.cases_total, 1380u + 100u);
}

TEST(Suites, LemmaBasis) {
  const auto r2 = suite_lemma_basis(2);
  EXPECT_EQ(r2.verdict, Verdict::pass);
  EXPECT_EQ(r2.cases_total, 6u);
  const auto r7 = suite_lemma_basis(7);
  EXPECT_EQ(r7.verdict, Verdict::pass);
  EXPECT_EQ(r7.cases_total, 336u);
}

TEST(Suites, Factorizations) {
  const auto n2 = suite_factorizations(4, 2);
  EXPECT_EQ(n2.verdict, Verdict::pass);
  EXPECT_EQ(n2.mode, "identity+search");
  // 12 b's: identity + search at the closed form + 14 other c's each.
  EXPECT_EQ(n2.cases_total, 12u * 16u);
  const auto n3 = suite_factorizations(3, 3);
  EXPECT_EQ(n3.verdict, Verdict::pass);
}

TEST(Suites, Remark3) {
  EXPECT_EQ(suite_remark3(3).verdict, Verdict::pass);
  EXPECT_EQ(suite_remark3(3).cases_total, 24u);
  EXPECT_EQ(suite_remark3(5).verdict, Verdict::pass);
  try {
    suite_remark3(2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::even_characteristic);
  }
}

TEST(Suites, Corollary) {
  const auto r = suite_corollary(2, 4);
  EXPECT_EQ(r.verdict, Verdict::pass);
  // 2 b's, one size check plus 4 permutation checks each.
  EXPECT_EQ(r.cases_total, 10u);
  const auto r6 = suite_corollary(2, 6);
  EXPECT_EQ(r6.verdict, Verdict::pass);
  EXPECT_EQ(r6.mode, "d=2,d=3");
  EXPECT_THROW(suite_corollary(2, 5), Error);
}

TEST(Report, FinalizeRules) {
  SuiteReport r;
  r.exceptions.push_back({});
  r.finalize();
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_TRUE(r.failed());
  r.assertive = false;
  r.finalize();
  EXPECT_EQ(r.verdict, Verdict::report_only);
  EXPECT_FALSE(r.failed());
  r.assertive = true;
  r.exceptions.clear();
  r.finalize();
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Report, JsonAndCsv) {
  SuiteReport r;
  r.suite = "demo";
  r.field = FieldSpec{3, 1, 2};
  r.mode = "m";
  r.cases_total = 2;
  r.cases_passed = 1;
  r.exceptions.push_back({3, 1, "v", "1", "needs, \"quoting\""});
  r.elapsed = std::chrono::milliseconds(5);
  r.finalize();
  const auto j = to_json(r);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["field"], "3^1:2");
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_TRUE(to_json(r, true).contains("elapsed_ms"));
  EXPECT_EQ(j["exceptions"][0]["b"], 3);
  const std::string csv = to_csv({r});
  EXPECT_EQ(csv,
            "suite,field,mode,verdict,b,c,b_pretty,c_pretty,detail\n"
            "demo,3^1:2,m,fail,3,1,v,1,\"needs, \"\"quoting\"\"\"\n");
}

TEST(Determinism, ReportsIndependentOfWorkersAndRuns) {
  SuiteOptions one = quick();
  SuiteOptions many = quick();
  many.workers = 4;
  const auto a = to_json(suite_theorem_n2(7, one)).dump();
  EXPECT_EQ(a, to_json(suite_theorem_n2(7, many)).dump());
  EXPECT_EQ(to_json(suite_lemma_equiv(one)).dump(), to_json(suite_lemma_equiv(many)).dump());
  EXPECT_EQ(to_json(suite_proposition(3, 3, one)).dump(),
            to_json(suite_proposition(3, 3, many)).dump());
  EXPECT_EQ(to_json(suite_theorem_n3(3, N3Mode::full_classify, many)).dump(),
            to_json(suite_theorem_n3(3, N3Mode::full_classify, one)).dump());
}

TEST(RunSuites, DefaultsAndErrors) {
  SuiteRequest req;
  req.name = "theorem-n3";
  const auto both = run_suites(req, quick());
  // 5 sufficiency fields plus 3 full-classify fields.
  EXPECT_EQ(both.size(), 8u);
  req.mode = N3Mode::sufficiency;
  req.qs = {2, 3};
  EXPECT_EQ(run_suites(req, quick()).size(), 2u);

  SuiteRequest cor;
  cor.name = "corollary";
  EXPECT_EQ(run_suites(cor, quick()).size(), 3u);

  SuiteRequest bad;
  bad.name = "nope";
  EXPECT_THROW(run_suites(bad, quick()), Error);
}
