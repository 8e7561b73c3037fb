#include "pellpow2/pipeline.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <string>
#include <vector>

namespace pellpow2 {
namespace {

using nlohmann::ordered_json;

const Certificate& default_run() {
  static const Certificate cert = run_pipeline(PipelineConfig{});
  return cert;
}

const std::string& default_json() {
  static const std::string bytes = emit_report(default_run(), OutputFormat::json);
  return bytes;
}

// A cheap certificate ending after round 1, for tamper experiments.
const std::string& round1_prefix_json() {
  static const std::string bytes =
      emit_report(run_pipeline(PipelineConfig{}, "reduce_n_minus_m"), OutputFormat::json);
  return bytes;
}

TEST(RunPipeline, ReductionStagesMatchFrozenExpectations) {
  const Certificate& cert = default_run();
  ASSERT_TRUE(cert.reduce_n_minus_m.has_value());
  ASSERT_TRUE(cert.reduce_n_minus_ell.has_value());
  ASSERT_TRUE(cert.reduce_n.has_value());

  const ReductionStage& r1 = *cert.reduce_n_minus_m;
  ASSERT_EQ(r1.records.size(), 1u);
  EXPECT_EQ(r1.records[0].convergent_index, 91);
  EXPECT_EQ(r1.records[0].q_used,
            mpz_class("348317200801236358620935022888502708006954949997"));
  EXPECT_EQ(r1.bound, 128);
  EXPECT_GT(r1.records[0].epsilon_lower, 0);

  const ReductionStage& r2 = *cert.reduce_n_minus_ell;
  ASSERT_EQ(r2.records.size(), 129u);  // shifts 0..S1 inclusive
  EXPECT_EQ(r2.bound, 134);
  for (long x : {1L, 2L}) {
    const ReductionRecord& fb = r2.records[static_cast<std::size_t>(x)];
    EXPECT_EQ(fb.method, "legendre_fallback");
    EXPECT_EQ(fb.w_bound, 122);
    EXPECT_EQ(fb.a_max, 100);
    EXPECT_EQ(fb.bracket_index, 88);
  }
  const ReductionRecord& worst2 = r2.records[91];
  EXPECT_EQ(worst2.shifts, std::vector<long>({91}));
  EXPECT_EQ(worst2.convergent_index, 90);
  EXPECT_EQ(worst2.w_bound, 134);
  EXPECT_FALSE(worst2.a3.empty());

  const ReductionStage& r3 = *cert.reduce_n;
  EXPECT_EQ(r3.records.size(), 9159u);  // pairs x1 <= x2 in [0,128] x [0,134]
  EXPECT_EQ(r3.bound, 139);
  const ReductionRecord& worst3 = r3.records[135 + 132];  // lex position of (1, 133)
  EXPECT_EQ(worst3.shifts, std::vector<long>({1, 133}));
  EXPECT_EQ(worst3.w_bound, 139);
}

TEST(RunPipeline, EllZeroChainAndAbsoluteBound) {
  const Certificate& cert = default_run();
  ASSERT_TRUE(cert.ell_zero.has_value());
  std::set<SolutionTuple> ell_zero_expected = {
      {1, 0, 0, 0}, {1, 1, 0, 1}, {2, 0, 0, 1}, {2, 2, 0, 2}};
  EXPECT_EQ(cert.ell_zero->solutions, ell_zero_expected);
  EXPECT_FALSE(cert.ell_zero->notes.empty());

  ASSERT_TRUE(cert.bound_chain.has_value());
  ASSERT_EQ(cert.bound_chain->coefficients.size(), 3u);
  EXPECT_EQ(cert.bound_chain->coefficients[0].quantity, "n_minus_m");
  EXPECT_EQ(cert.bound_chain->coefficients[1].quantity, "n_minus_ell");
  EXPECT_EQ(cert.bound_chain->coefficients[2].quantity, "n");
  EXPECT_EQ(cert.bound_chain->coefficients[0].log_power, 1);
  EXPECT_EQ(cert.bound_chain->coefficients[1].log_power, 2);
  EXPECT_EQ(cert.bound_chain->coefficients[2].log_power, 3);
  EXPECT_FALSE(cert.bound_chain->certifications.empty());
  ASSERT_EQ(cert.bound_chain->nonvanishing.size(), 3u);
  EXPECT_EQ(cert.bound_chain->nonvanishing[0].first, "Lambda1");

  ASSERT_TRUE(cert.absolute_bound.has_value());
  EXPECT_GT(cert.absolute_bound->n_abs,
            mpz_class("11824000000000000000000000000000000000000000"));
  EXPECT_LT(cert.absolute_bound->n_abs,
            mpz_class("11844000000000000000000000000000000000000000"));
  EXPECT_LT(2 * cert.absolute_bound->n_abs, cert.config.m_big);
}

TEST(RunPipeline, VerdictNamesUnexpectedTuple) {
  const Certificate& cert = default_run();
  ASSERT_TRUE(cert.brute.has_value());
  EXPECT_EQ(cert.brute->threshold, 150);
  EXPECT_EQ(cert.brute->solutions.size(), 9u);
  EXPECT_EQ(cert.final_solution_set.size(), 9u);
  EXPECT_EQ(cert.verdict.status, "failed");
  EXPECT_EQ(cert.verdict.stage, "verdict");
  EXPECT_NE(cert.verdict.reason.find("(4, 2, 2, 4)"), std::string::npos);
  EXPECT_TRUE(cert.brute->solutions.count({4, 2, 2, 4}));
  for (const auto& t : expected_solution_set()) EXPECT_TRUE(cert.brute->solutions.count(t));
}

TEST(RunPipeline, StagePrefixRunIsNeverVerified) {
  Certificate cert = run_pipeline(PipelineConfig{}, "absolute_bound");
  EXPECT_TRUE(cert.ell_zero.has_value());
  EXPECT_TRUE(cert.bound_chain.has_value());
  EXPECT_TRUE(cert.absolute_bound.has_value());
  EXPECT_FALSE(cert.reduce_n_minus_m.has_value());
  EXPECT_FALSE(cert.brute.has_value());
  EXPECT_TRUE(cert.final_solution_set.empty());
  EXPECT_EQ(cert.verdict.status, "failed");
  EXPECT_NE(cert.verdict.reason.find("partial run"), std::string::npos);
  EXPECT_TRUE(verify_certificate(emit_report(cert, OutputFormat::json)));
}

TEST(RunPipeline, ConfigValidation) {
  PipelineConfig bad;
  bad.n_threshold = 0;
  EXPECT_THROW(run_pipeline(bad), std::invalid_argument);
  bad = PipelineConfig{};
  bad.m_big = 5;
  EXPECT_THROW(run_pipeline(bad), std::invalid_argument);
  EXPECT_THROW(run_pipeline(PipelineConfig{}, "no_such_stage"), std::invalid_argument);
}

TEST(EmitReport, JsonFieldsAndRoundTrip) {
  ordered_json j = ordered_json::parse(default_json());
  EXPECT_EQ(j.at("verdict").at("status"), "failed");
  const ordered_json& stages = j.at("stages");
  ASSERT_EQ(stages.size(), 7u);
  for (std::size_t i = 0; i < stages.size(); ++i)
    EXPECT_EQ(stages[i].at("stage"), stage_order()[i]);
  const ordered_json& round1 = stages[3].at("records")[0];
  EXPECT_TRUE(round1.contains("q_used"));
  EXPECT_TRUE(round1.contains("epsilon_lower"));
  EXPECT_TRUE(round1.contains("w_bound"));

  Certificate parsed = parse_certificate(default_json());
  EXPECT_EQ(emit_report(parsed, OutputFormat::json), default_json());
}

TEST(EmitReport, DeterministicAcrossRuns) {
  Certificate again = run_pipeline(PipelineConfig{});
  EXPECT_EQ(emit_report(again, OutputFormat::json), default_json());
}

TEST(EmitReport, TextHasOneSectionPerStage) {
  std::string text = emit_report(default_run(), OutputFormat::text);
  std::size_t pos = 0;
  for (const std::string& name : stage_order()) {
    std::size_t at = text.find("[" + name + "]", pos);
    ASSERT_NE(at, std::string::npos) << name;
    pos = at;
  }
  EXPECT_NE(text.find("verdict: failed"), std::string::npos);
}

TEST(VerifyCertificate, FreshRunVerifies) {
  std::vector<std::string> diagnostics;
  EXPECT_TRUE(verify_certificate(default_json(), &diagnostics));
  EXPECT_TRUE(diagnostics.empty());
}

TEST(VerifyCertificate, TamperedSolutionSetFails) {
  ordered_json j = ordered_json::parse(default_json());
  for (auto& stage : j.at("stages"))
    if (stage.at("stage") == "brute_force") {
      auto& sols = stage.at("solutions");
      sols.erase(sols.size() - 1);
    }
  std::vector<std::string> diagnostics;
  EXPECT_FALSE(verify_certificate(j.dump(2) + "\n", &diagnostics));
  ASSERT_FALSE(diagnostics.empty());
}

TEST(VerifyCertificate, TamperedEpsilonLowerFails) {
  ordered_json j = ordered_json::parse(round1_prefix_json());
  for (auto& stage : j.at("stages"))
    if (stage.at("stage") == "reduce_n_minus_m") {
      std::string lower = stage.at("records")[0].at("epsilon_lower");
      stage.at("records")[0]["epsilon_lower"] = "-" + lower;
    }
  std::vector<std::string> diagnostics;
  EXPECT_FALSE(verify_certificate(j.dump(2) + "\n", &diagnostics));
  ASSERT_FALSE(diagnostics.empty());
  EXPECT_NE(diagnostics[0].find("epsilon"), std::string::npos);
}

TEST(VerifyCertificate, TamperedConvergentFails) {
  ordered_json j = ordered_json::parse(round1_prefix_json());
  for (auto& stage : j.at("stages"))
    if (stage.at("stage") == "reduce_n_minus_m") {
      std::string q = stage.at("records")[0].at("q_used");
      q[0] = q[0] == '9' ? '8' : static_cast<char>(q[0] + 1);
      stage.at("records")[0]["q_used"] = q;
    }
  EXPECT_FALSE(verify_certificate(j.dump(2) + "\n"));
}

TEST(VerifyCertificate, TamperedVerdictFails) {
  ordered_json j = ordered_json::parse(round1_prefix_json());
  j["verdict"] = ordered_json::object({{"status", "verified"}});
  std::vector<std::string> diagnostics;
  EXPECT_FALSE(verify_certificate(j.dump(2) + "\n", &diagnostics));
  ASSERT_FALSE(diagnostics.empty());
  EXPECT_NE(diagnostics[0].find("verdict"), std::string::npos);
}

TEST(VerifyCertificate, UnparseableInputThrows) {
  EXPECT_THROW(verify_certificate("this is not json"), std::runtime_error);
  EXPECT_THROW(verify_certificate("{\"format\": \"something else\"}"), std::runtime_error);
}

}  // namespace
}  // namespace pellpow2
