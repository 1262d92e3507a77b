#pragma once

#include "logometre/corpus.hpp"
#include "logometre/lexicon.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace logometre {

struct FrequencyEntry {
  std::string lemma;
  std::string pos;  // dominant tag of the lemma within the filter
  std::uint64_t count = 0;
  std::size_t rank = 0;  // 1-based

  bool operator==(const FrequencyEntry&) const = default;
};

/// Lemma frequencies of a sub-corpus, sorted by (count desc, lemma asc).
struct FrequencyDictionary {
  std::string source;    // SubCorpus identity
  std::string language;
  PosFilter pos_filter;
  std::vector<FrequencyEntry> entries;
  std::uint64_t total_filtered_tokens = 0;

  /// Rank of `lemma`, if present.
  std::optional<std::size_t> rank_of(std::string_view lemma) const;
  /// Occurrences of `lemma` (0 when absent).
  std::uint64_t count_of(std::string_view lemma) const;
  /// Occurrences per 10,000 filtered tokens.
  double relative_per_10k(const FrequencyEntry& e) const;
};

FrequencyDictionary build_dictionary(const SubCorpus& sub, const PosFilter& pos_filter,
                                     std::size_t workers = 1);

/// First min(k, |entries|) entries in rank order. Requires k >= 1.
std::vector<FrequencyEntry> top_k(const FrequencyDictionary& dict, std::size_t k);

/// One aligned row of a rank comparison. Rows for A's top-k carry A's lemma
/// and its lexicon image with the image's rank in B's full dictionary; rows
/// for B's top-k lemmas that no A row reaches leave the A side empty.
struct RankPair {
  std::optional<std::string> lemma_a;
  std::optional<std::size_t> rank_a;
  std::optional<std::string> lemma_b;
  std::optional<std::size_t> rank_b;

  bool operator==(const RankPair&) const = default;
};

struct RankComparison {
  std::size_t k = 0;
  std::size_t overlap = 0;  // A top-k lemmas whose image is in B top-k
  std::vector<RankPair> pairs;
  std::string lexicon_id;
  std::string lang_a, lang_b;

  bool operator==(const RankComparison&) const = default;
};

/// Lexicon-mediated comparison of the top-k tables of two dictionaries.
/// The overlap is directional: A->B can differ from B->A for lexicons that
/// are not bijective.
RankComparison compare_ranks(const FrequencyDictionary& a, const FrequencyDictionary& b,
                             const BilingualLexicon& lexicon, std::size_t k);

struct SpecificityScore {
  std::string lemma;
  std::uint64_t part_freq = 0;    // f
  std::uint64_t corpus_freq = 0;  // F
  std::uint64_t part_size = 0;    // t
  std::uint64_t corpus_size = 0;  // T
  double z = 0.0;
  double log10p = 0.0;  // signed, positive = over-represented
};

SpecificityScore specificity_from_counts(std::string lemma, std::uint64_t f, std::uint64_t F,
                                         std::uint64_t t, std::uint64_t T);

/// Specificity of `lemma` in `sub` against the whole corpus `sub` was drawn
/// from; counts are restricted to tokens accepted by `pos_filter`.
SpecificityScore specificity(const SubCorpus& sub, const AnnotatedCorpus& whole_corpus,
                             std::string_view lemma, const PosFilter& pos_filter);

/// Specificities of every lemma present in `sub`, sorted by log10p desc then
/// lemma asc.
std::vector<SpecificityScore> specificities(const SubCorpus& sub, const AnnotatedCorpus& whole_corpus,
                                            const PosFilter& pos_filter, std::size_t workers = 1);

}  // namespace logometre
