#pragma once

#include "logometre/corpus.hpp"
#include "logometre/dictionary.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logometre {

/// Context unit in which two lemmas count as co-present. Contexts never
/// cross document boundaries. Windows are consecutive non-overlapping blocks
/// of `window` tokens, counted over every token of the document.
struct ContextSpec {
  enum class Unit { sentence, paragraph, window };

  Unit unit = Unit::sentence;
  std::size_t window = 0;

  static ContextSpec sentence() { return {}; }
  static ContextSpec paragraph() { return {Unit::paragraph, 0}; }
  static ContextSpec tokens(std::size_t w);
  /// "sentence", "paragraph" or "window:<w>".
  static ContextSpec parse(std::string_view text);

  std::string unit_name() const;
  std::string to_string() const;
  bool operator==(const ContextSpec&) const = default;
};

struct TopLemmas {
  std::vector<std::string> lemmas;
  bool vocabulary_too_small = false;  // fewer than n entries were available
};

/// First n lemmas of the dictionary in rank order. Requires n >= 2; when the
/// vocabulary is smaller, returns all of it with the warning flag set.
TopLemmas select_top_lemmas(const FrequencyDictionary& dict, std::size_t n);

/// Square presence-count contingency table: cell (i, j) is the number of
/// contexts holding both lemma i and lemma j. Symmetric, zero diagonal.
struct CooccurrenceMatrix {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> counts;  // row-major, labels.size()^2
  ContextSpec context;
  PosFilter pos_filter;
  std::string source;
  std::uint64_t context_count = 0;  // contexts scanned

  std::size_t size() const noexcept { return labels.size(); }
  std::uint64_t at(std::size_t i, std::size_t j) const { return counts[i * labels.size() + j]; }
  std::uint64_t grand_total() const;

  bool operator==(const CooccurrenceMatrix&) const = default;
};

/// Builds the matrix over `lemmas` (distinct, at least 2). Only tokens the
/// filter accepts mark a lemma as present; lemmas absent from the sub-corpus
/// get zero rows.
CooccurrenceMatrix build_cooc_matrix(const SubCorpus& sub, const std::vector<std::string>& lemmas,
                                     const ContextSpec& context,
                                     const PosFilter& pos_filter = PosFilter::any(),
                                     std::size_t workers = 1);

struct PivotEntry {
  std::string lemma;
  std::uint64_t joint = 0;     // k: contexts holding pivot and lemma
  std::uint64_t contexts = 0;  // F: contexts holding lemma
  double z = 0.0;
  std::optional<double> log10p;  // exact hypergeometric tail, small corpora only

  bool operator==(const PivotEntry&) const = default;
};

/// Cooccurrents of a pivot lemma. Each entry is scored with the binomial
/// index z = (k - m p) / sqrt(m p (1 - p)), m the contexts holding the pivot
/// and p = F / total_contexts.
struct PivotProfile {
  std::string pivot;
  ContextSpec context;
  PosFilter pos_filter;
  std::string source;
  std::size_t min_joint = 2;
  std::uint64_t context_count = 0;   // m
  std::uint64_t total_contexts = 0;
  std::vector<PivotEntry> entries;   // z desc, lemma asc

  bool operator==(const PivotProfile&) const = default;
};

/// Contexts below this count also get the exact hypergeometric tail.
inline constexpr std::uint64_t kExactTailMaxContexts = 10000;
inline constexpr std::size_t kDefaultMinJoint = 2;

PivotProfile pivot_profile(const SubCorpus& sub, std::string_view pivot, const ContextSpec& context,
                           std::size_t min_joint, const PosFilter& pos_filter, std::size_t workers = 1);

/// Binomial cooccurrence index; 0 when the variance vanishes.
double cooccurrence_index(std::uint64_t joint, std::uint64_t pivot_contexts, std::uint64_t lemma_contexts,
                          std::uint64_t total_contexts);

}  // namespace logometre
