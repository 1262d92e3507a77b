#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace logometre::fixtures {

/// Two generated corpora (French-like side a, Portuguese-like side b) plus a
/// 200-pair lexicon. Noun frequencies are planted: side a's top 20 nouns are
/// lexicon entries 0..19; side b's top 20 are images of entries 0..17 plus two
/// nouns absent from the lexicon. Entry 0 is rank 1 on both sides.
struct BilingualFixture {
  std::string corpus_a;
  std::string corpus_b;
  std::string lexicon;
  std::vector<std::string> planted_top_a;  // rank order
  std::vector<std::string> planted_top_b;
};

inline constexpr std::size_t kFixtureTokens = 10000;
inline constexpr std::size_t kLexiconPairs = 200;

BilingualFixture bilingual_fixture(std::uint64_t seed = 7);

/// Single-language corpus of `tokens` tokens whose sentences each draw nouns
/// from one of `topics` overlapping vocabularies (Zipf-weighted), so that
/// cooccurrence tables have strong but non-trivial structure.
std::string topic_corpus(std::string_view language, std::size_t tokens, std::size_t vocabulary, std::size_t topics,
                         std::uint64_t seed);

}  // namespace logometre::fixtures
