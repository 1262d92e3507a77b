#include "logometre/error.hpp"
#include "logometre/lexicon.hpp"

#include <gtest/gtest.h>

using namespace logometre;

TEST(Lexicon, ParseWithDirectiveAndComments) {
  const auto lex = parse_lexicon(
      "#!lexicon lang_a=fr lang_b=pt\n"
      "# comment\n"
      "\n"
      "Pays\tPaís\r\n"
      "travail\ttrabalho\n");
  EXPECT_EQ(lex.lang_a(), "fr");
  EXPECT_EQ(lex.lang_b(), "pt");
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.translate("pays"), "país");
  EXPECT_EQ(lex.translate("Pays"), std::nullopt);  // lookups take normalized lemmas
  EXPECT_EQ(lex.translate("absent"), std::nullopt);
}

TEST(Lexicon, DuplicateEntry) {
  try {
    parse_lexicon("a\tb\nc\td\na\te\n");
    FAIL() << "expected DuplicateLexiconEntry";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), errors::kDuplicateLexiconEntry);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Lexicon, MalformedLines) {
  for (const char* bad : {"a\n", "a\tb\tc\n", "\tb\n", "#!lexicon lang_x=fr\n"}) {
    try {
      parse_lexicon(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), errors::kMalformedLine) << bad;
    }
  }
}

TEST(Lexicon, IdDependsOnContentOnly) {
  const auto a = parse_lexicon("x\ty\nu\tv\n");
  const auto b = parse_lexicon("# reordered\nu\tv\n\nx\ty\n");
  const auto c = parse_lexicon("x\ty\nu\tw\n");
  EXPECT_EQ(a.id(), b.id());
  EXPECT_NE(a.id(), c.id());
  EXPECT_EQ(a.id().size(), 16u);
}

TEST(Lexicon, SerializeRoundTrip) {
  const auto lex = parse_lexicon("#!lexicon lang_a=fr lang_b=pt\nété\tverão\nnation\tnação\n");
  const auto back = parse_lexicon(lex.serialize());
  EXPECT_EQ(back.pairs(), lex.pairs());
  EXPECT_EQ(back.id(), lex.id());
  EXPECT_EQ(back.lang_b(), "pt");
}

TEST(Lexicon, Identity) {
  const auto id = BilingualLexicon::identity("fr");
  EXPECT_TRUE(id.is_identity());
  EXPECT_EQ(id.id(), "identity");
  EXPECT_EQ(id.translate("quoi"), "quoi");
}
