#include "logometre/cooccurrence.hpp"

#include "logometre/error.hpp"
#include "logometre/hypergeometric.hpp"
#include "logometre/parallel.hpp"
#include "logometre/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace logometre {

ContextSpec ContextSpec::tokens(std::size_t w) {
  if (w == 0) throw Error(errors::kInvalidArgument, "window context requires w >= 1");
  return {Unit::window, w};
}

ContextSpec ContextSpec::parse(std::string_view text) {
  const auto t = trim(text);
  if (t == "sentence") return sentence();
  if (t == "paragraph") return paragraph();
  if (t.starts_with("window:") || t.starts_with("window=")) {
    const auto digits = std::string(t.substr(7));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      return tokens(std::stoul(digits));
    }
  }
  throw Error(errors::kInvalidArgument,
              "unknown context '" + std::string(t) + "' (expected sentence, paragraph or window:<w>)");
}

std::string ContextSpec::unit_name() const {
  switch (unit) {
    case Unit::sentence: return "sentence";
    case Unit::paragraph: return "paragraph";
    case Unit::window: return "window";
  }
  return "sentence";
}

std::string ContextSpec::to_string() const {
  return unit == Unit::window ? "window:" + std::to_string(window) : unit_name();
}

namespace {

// Calls fn(lemmas) once per context of the document with the lemmas of the
// accepted tokens, duplicates included.
template <typename Fn>
void for_each_context(const Document& doc, const ContextSpec& spec, const PosFilter& filter, Fn&& fn) {
  std::vector<std::string_view> present;
  const auto push = [&](const Token& t) {
    if (filter.accepts(t.pos)) present.push_back(t.lemma);
  };
  switch (spec.unit) {
    case ContextSpec::Unit::sentence:
      for (const auto& s : doc.sentences) {
        present.clear();
        for (const auto& t : s.tokens) push(t);
        fn(present);
      }
      break;
    case ContextSpec::Unit::paragraph: {
      std::size_t current = doc.sentences.front().paragraph;
      for (const auto& s : doc.sentences) {
        if (s.paragraph != current) {
          fn(present);
          present.clear();
          current = s.paragraph;
        }
        for (const auto& t : s.tokens) push(t);
      }
      fn(present);
      break;
    }
    case ContextSpec::Unit::window: {
      std::size_t filled = 0;
      for (const auto& s : doc.sentences) {
        for (const auto& t : s.tokens) {
          push(t);
          if (++filled == spec.window) {
            fn(present);
            present.clear();
            filled = 0;
          }
        }
      }
      if (filled > 0) fn(present);
      break;
    }
  }
}

void sort_unique(std::vector<std::string_view>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

TopLemmas select_top_lemmas(const FrequencyDictionary& dict, std::size_t n) {
  if (n < 2) throw Error(errors::kInvalidArgument, "select_top_lemmas requires n >= 2");
  TopLemmas top;
  top.vocabulary_too_small = dict.entries.size() < n;
  for (const auto& e : top_k(dict, n)) top.lemmas.push_back(e.lemma);
  return top;
}

std::uint64_t CooccurrenceMatrix::grand_total() const {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

CooccurrenceMatrix build_cooc_matrix(const SubCorpus& sub, const std::vector<std::string>& lemmas,
                                     const ContextSpec& context, const PosFilter& pos_filter,
                                     std::size_t workers) {
  if (lemmas.size() < 2) throw Error(errors::kInvalidArgument, "cooccurrence matrix needs at least 2 lemmas");
  std::unordered_map<std::string_view, std::uint32_t> index;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    if (!index.emplace(lemmas[i], static_cast<std::uint32_t>(i)).second) {
      throw Error(errors::kInvalidArgument, "duplicate lemma '" + lemmas[i] + "' in matrix labels");
    }
  }
  const std::size_t n = lemmas.size();

  struct Partial {
    std::vector<std::uint64_t> upper;
    std::uint64_t contexts = 0;
  };
  auto partials = parallel_blocks(sub.size(), workers, [&](std::size_t lo, std::size_t hi) {
    Partial part;
    part.upper.assign(n * n, 0);
    std::vector<std::uint32_t> ids;
    for (std::size_t d = lo; d < hi; ++d) {
      for_each_context(sub.document(d), context, pos_filter, [&](const std::vector<std::string_view>& present) {
        ++part.contexts;
        ids.clear();
        for (auto lemma : present) {
          const auto it = index.find(lemma);
          if (it != index.end()) ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (std::size_t a = 0; a < ids.size(); ++a) {
          auto* row = part.upper.data() + static_cast<std::size_t>(ids[a]) * n;
          for (std::size_t b = a + 1; b < ids.size(); ++b) ++row[ids[b]];
        }
      });
    }
    return part;
  });

  CooccurrenceMatrix m;
  m.labels = lemmas;
  m.context = context;
  m.pos_filter = pos_filter;
  m.source = sub.identity();
  m.counts.assign(n * n, 0);
  for (const auto& part : partials) {
    m.context_count += part.contexts;
    if (part.upper.empty()) continue;
    for (std::size_t i = 0; i < n * n; ++i) m.counts[i] += part.upper[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.counts[j * n + i] = m.counts[i * n + j];
  }
  return m;
}

double cooccurrence_index(std::uint64_t joint, std::uint64_t pivot_contexts, std::uint64_t lemma_contexts,
                          std::uint64_t total_contexts) {
  if (total_contexts == 0) return 0.0;
  const double p = static_cast<double>(lemma_contexts) / static_cast<double>(total_contexts);
  const double m = static_cast<double>(pivot_contexts);
  const double variance = m * p * (1.0 - p);
  if (!(variance > 0.0)) return 0.0;
  return (static_cast<double>(joint) - m * p) / std::sqrt(variance);
}

PivotProfile pivot_profile(const SubCorpus& sub, std::string_view pivot, const ContextSpec& context,
                           std::size_t min_joint, const PosFilter& pos_filter, std::size_t workers) {
  if (min_joint == 0) throw Error(errors::kInvalidArgument, "min_joint must be >= 1");
  const std::string key = normalize_lemma(pivot);

  struct Stats {
    std::uint64_t contexts = 0;
    std::uint64_t joint = 0;
  };
  struct Partial {
    std::unordered_map<std::string_view, Stats> stats;
    std::uint64_t pivot_contexts = 0;
    std::uint64_t contexts = 0;
  };
  auto partials = parallel_blocks(sub.size(), workers, [&](std::size_t lo, std::size_t hi) {
    Partial part;
    std::vector<std::string_view> unique;
    for (std::size_t d = lo; d < hi; ++d) {
      for_each_context(sub.document(d), context, pos_filter, [&](const std::vector<std::string_view>& present) {
        ++part.contexts;
        unique = present;
        sort_unique(unique);
        const bool has_pivot = std::binary_search(unique.begin(), unique.end(), std::string_view(key));
        if (has_pivot) ++part.pivot_contexts;
        for (auto lemma : unique) {
          auto& s = part.stats[lemma];
          ++s.contexts;
          if (has_pivot && lemma != key) ++s.joint;
        }
      });
    }
    return part;
  });

  std::map<std::string, Stats, std::less<>> merged;
  PivotProfile profile;
  profile.pivot = key;
  profile.context = context;
  profile.pos_filter = pos_filter;
  profile.source = sub.identity();
  profile.min_joint = min_joint;
  for (const auto& part : partials) {
    profile.context_count += part.pivot_contexts;
    profile.total_contexts += part.contexts;
    for (const auto& [lemma, s] : part.stats) {
      auto& target = merged[std::string(lemma)];
      target.contexts += s.contexts;
      target.joint += s.joint;
    }
  }
  if (profile.context_count == 0) {
    throw Error(errors::kPivotAbsent, "pivot '" + key + "' occurs in no context of " + profile.source);
  }

  const bool exact = profile.total_contexts < kExactTailMaxContexts;
  for (const auto& [lemma, s] : merged) {
    if (lemma == key || s.joint < min_joint) continue;
    PivotEntry e;
    e.lemma = lemma;
    e.joint = s.joint;
    e.contexts = s.contexts;
    e.z = cooccurrence_index(s.joint, profile.context_count, s.contexts, profile.total_contexts);
    if (exact) e.log10p = specificity_log10p(profile.total_contexts, s.contexts, profile.context_count, s.joint);
    profile.entries.push_back(std::move(e));
  }
  std::sort(profile.entries.begin(), profile.entries.end(), [](const auto& x, const auto& y) {
    return x.z != y.z ? x.z > y.z : x.lemma < y.lemma;
  });
  return profile;
}

}  // namespace logometre
