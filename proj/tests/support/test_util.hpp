#pragma once

#include "logometre/cooccurrence.hpp"
#include "logometre/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef LOGOMETRE_TEST_DATA
#error "LOGOMETRE_TEST_DATA must point at tests/data"
#endif

namespace testutil {

inline std::string data_path(const std::string& name) { return std::string(LOGOMETRE_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("logometre-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

struct CorpusShape {
  std::size_t documents = 6;
  std::size_t max_sentences = 8;
  std::size_t max_sentence_len = 9;
  std::size_t vocabulary = 25;
  std::string language = "fr";
};

/// Random corpus for property tests: tags from a fixed set, metadata keys
/// year and speaker, paragraphs of varying length, a few non-ASCII lemmas.
inline logometre::AnnotatedCorpus random_corpus(Rng& rng, const CorpusShape& shape = {}) {
  static const std::vector<std::string> tags{"ADJ", "NOUN", "PROPN", "VERB"};
  static const std::vector<std::string> accented{"été", "nação", "coração", "élève"};
  std::vector<logometre::Document> docs;
  for (std::size_t d = 0; d < shape.documents; ++d) {
    logometre::Document doc;
    doc.id = "doc" + std::to_string(d);
    doc.metadata["year"] = std::to_string(1990 + pick(rng, 3));
    doc.metadata["speaker"] = pick(rng, 2) == 0 ? "ana" : "bruno";
    const std::size_t sentences = 1 + pick(rng, shape.max_sentences);
    std::size_t paragraph = 0;
    for (std::size_t s = 0; s < sentences; ++s) {
      if (s > 0 && pick(rng, 3) == 0) ++paragraph;
      logometre::Sentence sent;
      sent.paragraph = paragraph;
      const std::size_t len = 1 + pick(rng, shape.max_sentence_len);
      for (std::size_t t = 0; t < len; ++t) {
        const std::size_t v = pick(rng, shape.vocabulary);
        std::string lemma = v < accented.size() && pick(rng, 4) == 0 ? accented[v] : "w" + std::to_string(v);
        sent.tokens.push_back({lemma, lemma, tags[(v + pick(rng, 2)) % tags.size()]});
      }
      doc.sentences.push_back(std::move(sent));
    }
    docs.push_back(std::move(doc));
  }
  return logometre::AnnotatedCorpus(shape.language, tags, std::move(docs));
}

/// Sets of (filtered) lemmas present in each context, computed directly from
/// the document structure.
inline std::vector<std::set<std::string>> naive_contexts(const logometre::SubCorpus& sub,
                                                         const logometre::ContextSpec& spec,
                                                         const logometre::PosFilter& filter) {
  using Unit = logometre::ContextSpec::Unit;
  std::vector<std::set<std::string>> out;
  for (std::size_t d = 0; d < sub.size(); ++d) {
    const auto& doc = sub.document(d);
    std::map<std::size_t, std::set<std::string>> by_key;
    std::size_t position = 0;
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      for (const auto& tok : doc.sentences[s].tokens) {
        std::size_t key = 0;
        if (spec.unit == Unit::sentence) key = s;
        else if (spec.unit == Unit::paragraph) key = doc.sentences[s].paragraph;
        else key = position / spec.window;
        ++position;
        auto& ctx = by_key[key];
        if (filter.accepts(tok.pos)) ctx.insert(tok.lemma);
      }
    }
    for (auto& [key, set] : by_key) out.push_back(std::move(set));
  }
  return out;
}

inline std::vector<std::vector<double>> random_symmetric_counts(Rng& rng, std::size_t n, unsigned max_value) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = static_cast<double>(pick(rng, max_value + 1));
  }
  // Guarantee positive margins.
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (double x : m[i]) row += x;
    if (row == 0) {
      const std::size_t j = (i + 1) % n;
      m[i][j] = m[j][i] = 1;
    }
  }
  return m;
}

}  // namespace testutil
