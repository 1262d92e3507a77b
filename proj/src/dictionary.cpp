#include "logometre/dictionary.hpp"

#include "logometre/error.hpp"
#include "logometre/hypergeometric.hpp"
#include "logometre/parallel.hpp"
#include "logometre/text.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace logometre {

namespace {

// lemma -> (pos -> count)
using PosCounts = std::map<std::string, std::uint64_t, std::less<>>;
using LemmaCounts = std::unordered_map<std::string, PosCounts>;

LemmaCounts count_document(const Document& doc, const PosFilter& filter) {
  LemmaCounts counts;
  for (const auto& sentence : doc.sentences) {
    for (const auto& tok : sentence.tokens) {
      if (!filter.accepts(tok.pos)) continue;
      auto& per_pos = counts[tok.lemma];
      auto it = per_pos.find(tok.pos);
      if (it == per_pos.end()) {
        per_pos.emplace(tok.pos, 1);
      } else {
        ++it->second;
      }
    }
  }
  return counts;
}

std::map<std::string, PosCounts> count_sub(const SubCorpus& sub, const PosFilter& filter,
                                           std::size_t workers) {
  auto partial = parallel_map(sub.size(), workers,
                              [&](std::size_t i) { return count_document(sub.document(i), filter); });
  std::map<std::string, PosCounts> merged;
  for (auto& part : partial) {
    for (auto& [lemma, per_pos] : part) {
      auto& target = merged[lemma];
      for (const auto& [pos, n] : per_pos) target[pos] += n;
    }
  }
  return merged;
}

}  // namespace

std::optional<std::size_t> FrequencyDictionary::rank_of(std::string_view lemma) const {
  for (const auto& e : entries) {
    if (e.lemma == lemma) return e.rank;
  }
  return std::nullopt;
}

std::uint64_t FrequencyDictionary::count_of(std::string_view lemma) const {
  for (const auto& e : entries) {
    if (e.lemma == lemma) return e.count;
  }
  return 0;
}

double FrequencyDictionary::relative_per_10k(const FrequencyEntry& e) const {
  if (total_filtered_tokens == 0) return 0.0;
  return 10000.0 * static_cast<double>(e.count) / static_cast<double>(total_filtered_tokens);
}

FrequencyDictionary build_dictionary(const SubCorpus& sub, const PosFilter& pos_filter, std::size_t workers) {
  FrequencyDictionary dict;
  dict.source = sub.identity();
  dict.language = sub.parent().language();
  dict.pos_filter = pos_filter;

  for (auto& [lemma, per_pos] : count_sub(sub, pos_filter, workers)) {
    FrequencyEntry entry;
    entry.lemma = lemma;
    for (const auto& [pos, n] : per_pos) {
      entry.count += n;
      // map iteration is tag-ascending, so ties keep the smaller tag
      if (entry.pos.empty() || n > per_pos.at(entry.pos)) entry.pos = pos;
    }
    dict.total_filtered_tokens += entry.count;
    dict.entries.push_back(std::move(entry));
  }
  std::sort(dict.entries.begin(), dict.entries.end(), [](const auto& x, const auto& y) {
    return x.count != y.count ? x.count > y.count : x.lemma < y.lemma;
  });
  for (std::size_t i = 0; i < dict.entries.size(); ++i) dict.entries[i].rank = i + 1;
  return dict;
}

std::vector<FrequencyEntry> top_k(const FrequencyDictionary& dict, std::size_t k) {
  if (k == 0) throw Error(errors::kInvalidArgument, "top_k requires k >= 1");
  const auto n = std::min(k, dict.entries.size());
  return {dict.entries.begin(), dict.entries.begin() + static_cast<std::ptrdiff_t>(n)};
}

RankComparison compare_ranks(const FrequencyDictionary& a, const FrequencyDictionary& b,
                             const BilingualLexicon& lexicon, std::size_t k) {
  if (k == 0) throw Error(errors::kInvalidArgument, "compare_ranks requires k >= 1");
  const auto mismatch = [](const std::string& declared, const std::string& actual) {
    return !declared.empty() && !actual.empty() && declared != actual;
  };
  if (mismatch(lexicon.lang_a(), a.language) || mismatch(lexicon.lang_b(), b.language)) {
    throw Error(errors::kLexiconLanguageMismatch,
                "lexicon maps " + lexicon.lang_a() + "->" + lexicon.lang_b() + " but dictionaries are " +
                    a.language + "->" + b.language);
  }

  std::unordered_map<std::string, std::size_t> rank_b;
  for (const auto& e : b.entries) rank_b.emplace(e.lemma, e.rank);

  RankComparison cmp;
  cmp.k = k;
  cmp.lexicon_id = lexicon.id();
  cmp.lang_a = a.language;
  cmp.lang_b = b.language;

  const auto top_a = top_k(a, k);
  const auto top_b = top_k(b, k);
  std::unordered_set<std::string> reached_b;
  for (const auto& e : top_a) {
    RankPair row{e.lemma, e.rank, std::nullopt, std::nullopt};
    if (auto image = lexicon.translate(e.lemma)) {
      const auto it = rank_b.find(*image);
      if (it != rank_b.end()) {
        row.rank_b = it->second;
        if (it->second <= k) {
          ++cmp.overlap;
          reached_b.insert(*image);
        }
      }
      row.lemma_b = std::move(*image);
    }
    cmp.pairs.push_back(std::move(row));
  }
  for (const auto& e : top_b) {
    if (!reached_b.contains(e.lemma)) {
      cmp.pairs.push_back(RankPair{std::nullopt, std::nullopt, e.lemma, e.rank});
    }
  }
  return cmp;
}

SpecificityScore specificity_from_counts(std::string lemma, std::uint64_t f, std::uint64_t F,
                                         std::uint64_t t, std::uint64_t T) {
  SpecificityScore s;
  s.lemma = std::move(lemma);
  s.part_freq = f;
  s.corpus_freq = F;
  s.part_size = t;
  s.corpus_size = T;
  s.z = specificity_z(T, F, t, f);
  s.log10p = specificity_log10p(T, F, t, f);
  return s;
}

SpecificityScore specificity(const SubCorpus& sub, const AnnotatedCorpus& whole_corpus,
                             std::string_view lemma, const PosFilter& pos_filter) {
  if (&sub.parent() != &whole_corpus) {
    throw Error(errors::kInvalidArgument, "sub-corpus was not drawn from the given corpus");
  }
  const auto key = normalize_lemma(lemma);
  std::uint64_t f = 0, t = 0;
  for (const auto& ref : token_stream(sub, pos_filter)) {
    ++t;
    if (ref.token->lemma == key) ++f;
  }
  const auto all = whole(whole_corpus);
  std::uint64_t F = 0, T = 0;
  for (const auto& ref : token_stream(all, pos_filter)) {
    ++T;
    if (ref.token->lemma == key) ++F;
  }
  return specificity_from_counts(key, f, F, t, T);
}

std::vector<SpecificityScore> specificities(const SubCorpus& sub, const AnnotatedCorpus& whole_corpus,
                                            const PosFilter& pos_filter, std::size_t workers) {
  if (&sub.parent() != &whole_corpus) {
    throw Error(errors::kInvalidArgument, "sub-corpus was not drawn from the given corpus");
  }
  const auto part = build_dictionary(sub, pos_filter, workers);
  const auto all = build_dictionary(whole(whole_corpus), pos_filter, workers);
  std::unordered_map<std::string, std::uint64_t> corpus_counts;
  for (const auto& e : all.entries) corpus_counts.emplace(e.lemma, e.count);

  std::vector<SpecificityScore> scores;
  scores.reserve(part.entries.size());
  for (const auto& e : part.entries) {
    scores.push_back(specificity_from_counts(e.lemma, e.count, corpus_counts.at(e.lemma),
                                             part.total_filtered_tokens, all.total_filtered_tokens));
  }
  std::sort(scores.begin(), scores.end(), [](const auto& x, const auto& y) {
    return x.log10p != y.log10p ? x.log10p > y.log10p : x.lemma < y.lemma;
  });
  return scores;
}

}  // namespace logometre
