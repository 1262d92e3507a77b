#include "logometre/error.hpp"
#include "logometre/report.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace logometre;

namespace {

struct Fixture {
  AnnotatedCorpus a, b;
  BilingualLexicon lexicon;
  ReportConfig config;
  ComparisonReport report;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture x{load_corpus(testutil::data_path("synthetic_fr.tsv")), load_corpus(testutil::data_path("synthetic_pt.tsv")),
              load_lexicon(testutil::data_path("lexicon_fr_pt.tsv")),
              report_config_from_json(parse_json(testutil::read_file(testutil::data_path("fixture_config.json")))),
              {}};
    x.report = build_report(x.a, x.b, x.lexicon, x.config, 2);
    return x;
  }();
  return f;
}

std::string config_error(const std::string& text) {
  try {
    report_config_from_json(parse_json(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(ReportConfig, Defaults) {
  const auto c = report_config_from_json(Json::object());
  EXPECT_EQ(c.k, 20u);
  EXPECT_EQ(c.n_lemmas, 300u);
  EXPECT_EQ(c.context, ContextSpec::sentence());
  EXPECT_EQ(c.pos_filter, PosFilter::substantives());
  EXPECT_EQ(report_config_from_json(to_json(c)).k, 20u);
}

TEST(ReportConfig, PerSideParametersRejected) {
  EXPECT_EQ(config_error(R"({"k_a": 10})"), errors::kParameterMismatch);
  EXPECT_EQ(config_error(R"({"context_b": "paragraph"})"), errors::kParameterMismatch);
  EXPECT_EQ(config_error(R"({"side_a": {"k": 3}})"), errors::kParameterMismatch);
  EXPECT_EQ(config_error(R"({"overrides": {}})"), errors::kParameterMismatch);
}

TEST(ReportConfig, SchemaErrors) {
  EXPECT_EQ(config_error(R"({"colour": 1})"), errors::kSchemaError);
  EXPECT_EQ(config_error(R"({"k": 0})"), errors::kSchemaError);
  EXPECT_EQ(config_error(R"({"k": "ten"})"), errors::kSchemaError);
  EXPECT_EQ(config_error(R"({"n_lemmas": 1})"), errors::kSchemaError);
  EXPECT_EQ(config_error(R"({"axes": [1]})"), errors::kSchemaError);
  EXPECT_EQ(config_error(R"({"pivots": ["x"]})"), errors::kSchemaError);
  EXPECT_EQ(config_error(R"([1, 2])"), errors::kSchemaError);
  EXPECT_EQ(config_error(R"({"pivots": [{"lemma_a": "Été", "lemma_b": "x"}]})"), "none");
  EXPECT_EQ(report_config_from_json(parse_json(R"({"pivots": [["Été", "X"]]})")).pivots[0].first, "été");
}

TEST(Report, FixtureComparison) {
  const auto& f = fixture();
  const auto& r = f.report;
  EXPECT_EQ(r.rank_comparison.overlap, 18u);
  ASSERT_FALSE(r.rank_comparison.pairs.empty());
  EXPECT_EQ(r.rank_comparison.pairs[0].lemma_a, "pays");
  EXPECT_EQ(r.rank_comparison.pairs[0].lemma_b, "país");
  EXPECT_EQ(r.rank_comparison.pairs[0].rank_b, 1u);
  EXPECT_EQ(r.lexicon_id, f.lexicon.id());
  EXPECT_EQ(r.side_a.corpus_hash, corpus_hash(f.a));
  EXPECT_EQ(r.side_b.corpus_hash, corpus_hash(f.b));
  EXPECT_EQ(r.side_a.matrix.size(), r.side_a.ca.size() + r.side_a.ca.dropped_labels.size());
  ASSERT_TRUE(r.side_a.clustering.has_value());
  EXPECT_EQ(r.side_a.clustering->k, 6u);
  ASSERT_EQ(r.side_a.pivots.size(), 3u);
  EXPECT_TRUE(r.side_a.pivots[0].profile.has_value());
  // "saudade" only exists on side b.
  EXPECT_FALSE(r.side_a.pivots[2].profile.has_value());
  EXPECT_EQ(r.side_a.pivots[2].error, errors::kPivotAbsent);
  EXPECT_TRUE(r.side_b.pivots[2].profile.has_value());
}

TEST(Report, SameConfigurationOnBothSides) {
  const auto& r = fixture().report;
  EXPECT_EQ(r.side_a.matrix.context, r.side_b.matrix.context);
  EXPECT_EQ(r.side_a.matrix.pos_filter, r.side_b.matrix.pos_filter);
  EXPECT_EQ(r.side_a.dictionary.pos_filter, r.side_b.dictionary.pos_filter);
  EXPECT_LE(r.side_a.matrix.size(), r.config.n_lemmas);
  EXPECT_LE(r.side_b.matrix.size(), r.config.n_lemmas);
  EXPECT_EQ(r.side_a.vocabulary_too_small, r.side_a.matrix.size() < r.config.n_lemmas);
}

TEST(Report, JsonRoundTrip) {
  const auto& r = fixture().report;
  const auto text = dump_json(to_json(r));
  const auto back = report_from_json(parse_json(text));
  EXPECT_EQ(dump_json(to_json(back)), text);
  EXPECT_EQ(back.rank_comparison, r.rank_comparison);
  EXPECT_EQ(back.side_b.matrix, r.side_b.matrix);
  EXPECT_EQ(render_report(r, ReportFormat::json), text);
}

TEST(Report, WorkersDoNotChangeOutput) {
  const auto& f = fixture();
  const auto serial = build_report(f.a, f.b, f.lexicon, f.config, 1);
  EXPECT_EQ(dump_json(to_json(serial)), dump_json(to_json(f.report)));
}

TEST(Report, Html) {
  const auto html = render_report(fixture().report, ReportFormat::html);
  EXPECT_EQ(html.rfind("<!DOCTYPE html>", 0), 0u);
  EXPECT_EQ(occurrences(html, "class=\"factor-map\""), 2u);
  EXPECT_EQ(occurrences(html, "class=\"rank-table\""), 1u);
  EXPECT_EQ(occurrences(html, "class=\"pivot-cloud\""), 5u);
  EXPECT_NE(html.find("PivotAbsent"), std::string::npos);
}

TEST(Report, SelfComparisonOverlapsFully) {
  const auto& f = fixture();
  ReportConfig c;
  c.k = 15;
  c.n_lemmas = 40;
  const auto r = build_report(f.a, f.a, BilingualLexicon::identity(), c);
  EXPECT_EQ(r.rank_comparison.overlap, 15u);
  for (std::size_t i = 0; i < 15; ++i) EXPECT_EQ(r.rank_comparison.pairs[i].rank_b, r.rank_comparison.pairs[i].rank_a);
  EXPECT_EQ(r.side_a.ca.singular_values, r.side_b.ca.singular_values);
  // No pivots configured: no pivot section.
  EXPECT_EQ(occurrences(render_report(r, ReportFormat::html), "class=\"pivot-cloud\""), 0u);
}

TEST(Report, MatchesStandaloneModules) {
  const auto& f = fixture();
  const auto& r = f.report;
  const auto& c = f.config;
  const auto dict = build_dictionary(whole(f.b), c.pos_filter);
  EXPECT_EQ(r.side_b.dictionary.entries, dict.entries);
  const auto top = select_top_lemmas(dict, c.n_lemmas);
  const auto m = build_cooc_matrix(whole(f.b), top.lemmas, c.context, c.pos_filter);
  EXPECT_EQ(r.side_b.matrix, m);
  EXPECT_EQ(r.side_b.ca.singular_values, correspondence_analysis(m).singular_values);
  const auto profile = pivot_profile(whole(f.a), c.pivots[0].first, c.context, c.min_joint, c.pos_filter);
  ASSERT_TRUE(r.side_a.pivots[0].profile.has_value());
  EXPECT_EQ(*r.side_a.pivots[0].profile, profile);
  const auto cmp = compare_ranks(build_dictionary(whole(f.a), c.pos_filter), dict, f.lexicon, c.k);
  EXPECT_EQ(r.rank_comparison, cmp);
}

TEST(Report, EchoedParametersReproduceReport) {
  const auto& f = fixture();
  const auto text = dump_json(to_json(f.report));
  const auto echoed = report_config_from_json(parse_json(text)["parameters"]);
  EXPECT_EQ(dump_json(to_json(build_report(f.a, f.b, f.lexicon, echoed))), text);
}

TEST(Report, Errors) {
  const auto& f = fixture();
  EXPECT_THROW(build_report(f.b, f.a, f.lexicon, f.config), Error);
  try {
    report_from_json(parse_json(R"({"schema": "other"})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), errors::kSchemaError);
  }
  EXPECT_THROW(report_from_json(parse_json(R"({"schema": "logometre-report/1"})")), Error);
}
