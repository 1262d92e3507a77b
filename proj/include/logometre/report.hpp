#pragma once

#include "logometre/ca.hpp"
#include "logometre/cooccurrence.hpp"
#include "logometre/dictionary.hpp"
#include "logometre/json_io.hpp"
#include "logometre/lexicon.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logometre {

inline constexpr const char* kReportSchema = "logometre-report/1";

/// Parameters shared by both sides of a comparison. There are no per-side
/// settings: both sides are always produced with the same configuration.
struct ReportConfig {
  std::size_t k = 20;
  std::size_t n_lemmas = 300;
  ContextSpec context;
  PosFilter pos_filter = PosFilter::substantives();
  std::size_t min_joint = kDefaultMinJoint;
  std::vector<std::pair<std::string, std::string>> pivots;
  std::size_t axis_x = 1;
  std::size_t axis_y = 2;
  std::size_t clusters = 0;  // 0 disables isotopy clustering
  std::uint64_t seed = kDefaultSeed;
  double z_max = 10.0;
};

/// Reads a configuration object. Keys that would configure one side only
/// raise ParameterMismatch; any other unknown key raises SchemaError.
ReportConfig report_config_from_json(const Json& j);
Json to_json(const ReportConfig& c);

struct PivotResult {
  std::string word;
  std::optional<PivotProfile> profile;
  std::string error;  // module error name when profile is absent
};

struct ReportSide {
  std::string language;
  std::string corpus_hash;
  std::size_t documents = 0;
  std::uint64_t token_count = 0;
  FrequencyDictionary dictionary;
  bool vocabulary_too_small = false;
  CooccurrenceMatrix matrix;
  CaSolution ca;
  std::optional<IsotopyClustering> clustering;
  std::vector<PivotResult> pivots;
};

/// Paths the CLI recorded for the inputs, so the explorer can reload them.
struct ReportInputs {
  std::string corpus_a;
  std::string corpus_b;
  std::string lexicon;
};

struct ComparisonReport {
  ReportConfig config;
  std::string lexicon_id;
  std::string lang_a, lang_b;
  ReportSide side_a, side_b;
  RankComparison rank_comparison;
  std::optional<ReportInputs> inputs;
};

/// Runs dictionary, rank comparison, cooccurrence matrix, correspondence
/// analysis, optional clustering and pivot profiles on both whole corpora
/// with one configuration. A pivot absent from a side is recorded as
/// PivotAbsent on that side; every other error propagates.
ComparisonReport build_report(const AnnotatedCorpus& a, const AnnotatedCorpus& b, const BilingualLexicon& lexicon,
                              const ReportConfig& config, std::size_t workers = 1);

Json to_json(const ComparisonReport& r);
ComparisonReport report_from_json(const Json& j);

enum class ReportFormat { json, html };

std::string render_report(const ComparisonReport& r, ReportFormat format);

}  // namespace logometre
