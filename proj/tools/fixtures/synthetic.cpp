#include "synthetic.hpp"

#include "logometre/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

namespace logometre::fixtures {
namespace {

using Rng = std::mt19937_64;

// Library distributions differ between standard libraries; these do not.
std::size_t below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

struct Side {
  std::string language;
  std::vector<std::array<const char*, 3>> function_words;  // form, lemma, pos
  std::vector<std::string> speakers;
};

const std::array<std::pair<const char*, const char*>, 12> kNamedPairs{{
    {"pays", "país"},
    {"travail", "trabalho"},
    {"peuple", "povo"},
    {"monde", "mundo"},
    {"état", "estado"},
    {"nation", "nação"},
    {"paix", "paz"},
    {"économie", "economia"},
    {"développement", "desenvolvimento"},
    {"liberté", "liberdade"},
    {"jeunesse", "juventude"},
    {"école", "escola"},
}};

std::string numbered(const char* stem, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", stem, i);
  return buf;
}

std::string lexicon_lemma(std::size_t i, bool side_b) {
  if (i < kNamedPairs.size()) return side_b ? kNamedPairs[i].second : kNamedPairs[i].first;
  return numbered(side_b ? "termo" : "terme", i);
}

// Planted counts. The top band is strictly decreasing so ranks are exact.
std::uint64_t top_count(std::size_t rank) { return 150 - 4 * rank; }
std::uint64_t tail_count(std::size_t i) { return 2 + (kLexiconPairs - 1 - i) / 8; }

struct NounBag {
  std::vector<std::pair<std::string, std::uint64_t>> counts;  // lemma, count
  std::vector<std::pair<std::string, std::uint64_t>> propn;
};

NounBag plant(bool side_b) {
  NounBag bag;
  for (std::size_t i = 0; i < kLexiconPairs; ++i) {
    std::uint64_t c = tail_count(i);
    if (i < 20) c = top_count(i);
    if (side_b && (i == 18 || i == 19)) c = 40 - (i - 18);
    bag.counts.emplace_back(lexicon_lemma(i, side_b), c);
  }
  if (side_b) {
    // Two frequent nouns with no lexicon entry, ranked 19 and 20 on side b.
    bag.counts.emplace_back("saudade", top_count(18));
    bag.counts.emplace_back("sertão", top_count(19));
    bag.propn = {{"brasília", 21}, {"lula", 17}};
  } else {
    for (std::size_t i = 0; i < 20; ++i) bag.counts.emplace_back(numbered("mot", i), 3);
    bag.propn = {{"paris", 23}, {"europe", 18}};
  }
  return bag;
}

std::string capitalize_ascii(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string build_side(const Side& side, const NounBag& bag, Rng& rng) {
  constexpr std::size_t kTopics = 6;
  constexpr std::size_t kGeneral = 5;  // most frequent nouns appear in every topic
  std::vector<std::vector<Token>> topic_nouns(kTopics);
  std::vector<Token> general;
  for (std::size_t i = 0; i < bag.counts.size(); ++i) {
    const auto& [lemma, count] = bag.counts[i];
    for (std::uint64_t c = 0; c < count; ++c) {
      const bool plural = c % 5 == 4 && !lemma.ends_with('s') && !lemma.ends_with('x');
      Token t{plural ? lemma + "s" : lemma, lemma, "NOUN"};
      if (i < kGeneral) general.push_back(t);
      else topic_nouns[i % kTopics].push_back(t);
    }
  }
  for (std::size_t j = 0; j < bag.propn.size(); ++j) {
    for (std::uint64_t c = 0; c < bag.propn[j].second; ++c) {
      topic_nouns[j % kTopics].push_back(Token{capitalize_ascii(bag.propn[j].first), bag.propn[j].first, "PROPN"});
    }
  }

  std::vector<std::vector<Token>> sentences;
  for (auto& nouns : topic_nouns) {
    shuffle(nouns, rng);
    for (std::size_t at = 0; at < nouns.size();) {
      const std::size_t len = std::min<std::size_t>(2 + below(rng, 4), nouns.size() - at);
      sentences.emplace_back(nouns.begin() + static_cast<std::ptrdiff_t>(at),
                             nouns.begin() + static_cast<std::ptrdiff_t>(at + len));
      at += len;
    }
  }
  shuffle(sentences, rng);
  for (const auto& t : general) sentences[below(rng, sentences.size())].push_back(t);

  std::size_t noun_tokens = 0;
  for (const auto& s : sentences) noun_tokens += s.size();
  // Pad with function words up to the target size, every sentence getting at
  // least one.
  std::size_t remaining = kFixtureTokens - noun_tokens;
  std::vector<std::size_t> extra(sentences.size(), 1);
  remaining -= sentences.size();
  while (remaining > 0) {
    ++extra[below(rng, sentences.size())];
    --remaining;
  }
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto& sent = sentences[s];
    for (std::size_t e = 0; e < extra[s]; ++e) {
      const auto& fw = side.function_words[below(rng, side.function_words.size())];
      sent.insert(sent.begin() + static_cast<std::ptrdiff_t>(below(rng, sent.size() + 1)), Token{fw[0], fw[1], fw[2]});
    }
  }

  constexpr std::size_t kDocuments = 20;
  std::vector<Document> docs(kDocuments);
  for (std::size_t d = 0; d < kDocuments; ++d) {
    docs[d].id = side.language + numbered("-d", d);
    docs[d].metadata["speaker"] = side.speakers[d % side.speakers.size()];
    docs[d].metadata["year"] = std::to_string(2000 + d % 4);
  }
  const std::size_t per_doc = (sentences.size() + kDocuments - 1) / kDocuments;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto& doc = docs[s / per_doc];
    const std::size_t local = doc.sentences.size();
    doc.sentences.push_back(Sentence{std::move(sentences[s]), local / 4});
  }
  std::erase_if(docs, [](const Document& d) { return d.sentences.empty(); });
  return serialize_corpus(AnnotatedCorpus(side.language, {"ADJ", "ADP", "DET", "NOUN", "PROPN", "VERB"}, std::move(docs)));
}

}  // namespace

BilingualFixture bilingual_fixture(std::uint64_t seed) {
  Rng rng(seed);
  const Side fr{"fr",
                {{"le", "le", "DET"}, {"la", "le", "DET"}, {"les", "le", "DET"}, {"de", "de", "ADP"},
                 {"est", "être", "VERB"}, {"a", "avoir", "VERB"}, {"grand", "grand", "ADJ"}, {"nouvelle", "nouveau", "ADJ"}},
                {"dupont", "martin"}};
  const Side pt{"pt",
                {{"o", "o", "DET"}, {"a", "o", "DET"}, {"os", "o", "DET"}, {"de", "de", "ADP"},
                 {"é", "ser", "VERB"}, {"tem", "ter", "VERB"}, {"grande", "grande", "ADJ"}, {"nova", "novo", "ADJ"}},
                {"silva", "souza"}};

  BilingualFixture f;
  f.corpus_a = build_side(fr, plant(false), rng);
  f.corpus_b = build_side(pt, plant(true), rng);
  f.lexicon = "#!lexicon lang_a=fr lang_b=pt\n# planted bilingual lexicon, 200 pairs\n";
  for (std::size_t i = 0; i < kLexiconPairs; ++i) {
    f.lexicon += lexicon_lemma(i, false) + '\t' + lexicon_lemma(i, true) + '\n';
  }
  for (std::size_t i = 0; i < 20; ++i) f.planted_top_a.push_back(lexicon_lemma(i, false));
  for (std::size_t i = 0; i < 18; ++i) f.planted_top_b.push_back(lexicon_lemma(i, true));
  f.planted_top_b.push_back("saudade");
  f.planted_top_b.push_back("sertão");
  return f;
}

std::string topic_corpus(std::string_view language, std::size_t tokens, std::size_t vocabulary, std::size_t topics,
                         std::uint64_t seed) {
  Rng rng(seed);
  // Each topic owns a contiguous window of the vocabulary, overlapping its
  // neighbours by half; within a window the weights are Zipfian.
  const std::size_t span = std::max<std::size_t>(2, 2 * vocabulary / (topics + 1));
  std::vector<std::vector<std::size_t>> members(topics);
  std::vector<std::vector<double>> cumulative(topics);
  for (std::size_t t = 0; t < topics; ++t) {
    const std::size_t start = t * vocabulary / (topics + 1);
    double acc = 0.0;
    for (std::size_t r = 0; r < span && start + r < vocabulary; ++r) {
      members[t].push_back(start + r);
      acc += 1.0 / std::pow(static_cast<double>(r + 1), 0.9);
      cumulative[t].push_back(acc);
    }
  }
  const auto draw = [&](std::size_t t) {
    const double u = unit(rng) * cumulative[t].back();
    const auto it = std::upper_bound(cumulative[t].begin(), cumulative[t].end(), u);
    return members[t][std::min<std::size_t>(static_cast<std::size_t>(it - cumulative[t].begin()), members[t].size() - 1)];
  };
  const std::array<std::array<const char*, 2>, 4> function_words{{{"the", "DET"}, {"of", "ADP"}, {"is", "VERB"}, {"new", "ADJ"}}};

  std::string out = "#!logometre v1 lang=" + std::string(language) + " tags=ADJ,ADP,DET,NOUN,VERB\n";
  std::size_t written = 0, doc = 0;
  while (written < tokens) {
    out += "#### id=" + numbered("doc", doc) + " part=" + std::to_string(doc % 3) + '\n';
    ++doc;
    for (std::size_t s = 0; s < 400 && written < tokens; ++s) {
      if (s % 8 == 0 && s > 0) out += "##p\n";
      const std::size_t topic = below(rng, topics);
      const std::size_t len = std::min<std::size_t>(6 + below(rng, 10), tokens - written);
      for (std::size_t i = 0; i < len; ++i) {
        if (i % 2 == 1) {
          const auto& fw = function_words[below(rng, function_words.size())];
          out += std::string(fw[0]) + '\t' + fw[0] + '\t' + fw[1] + '\n';
        } else {
          const auto w = numbered("w", draw(topic));
          out += w + '\t' + w + "\tNOUN\n";
        }
      }
      out += '\n';
      written += len;
    }
  }
  return out;
}

}  // namespace logometre::fixtures
