#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logometre {

struct Token {
  std::string form;
  std::string lemma;  // NFC + lowercase
  std::string pos;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::size_t paragraph = 0;  // per-document paragraph counter

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string id;
  std::map<std::string, std::string> metadata;
  std::vector<Sentence> sentences;

  std::size_t token_count() const;
  bool operator==(const Document&) const = default;
};

/// One language side of a comparable corpus. Immutable once built; the
/// constructor enforces id uniqueness, non-empty documents and sentences,
/// and membership of every POS tag in the declared tagset.
class AnnotatedCorpus {
public:
  AnnotatedCorpus() = default;
  AnnotatedCorpus(std::string language, std::vector<std::string> tagset,
                  std::vector<Document> documents);

  const std::string& language() const noexcept { return language_; }
  const std::vector<std::string>& tagset() const noexcept { return tagset_; }
  const std::vector<Document>& documents() const noexcept { return documents_; }
  std::size_t token_count() const noexcept { return token_count_; }
  std::size_t sentence_count() const noexcept;

  bool has_metadata_key(std::string_view key) const;

  bool operator==(const AnnotatedCorpus&) const = default;

private:
  std::string language_;
  std::vector<std::string> tagset_;
  std::vector<Document> documents_;
  std::size_t token_count_ = 0;
};

/// Set of accepted POS tags; an unset filter accepts every tag.
class PosFilter {
public:
  PosFilter() = default;
  explicit PosFilter(std::set<std::string> tags) : tags_(std::move(tags)) {}

  static PosFilter any() { return PosFilter(); }
  /// {NOUN, PROPN}, the default notion of "substantive".
  static PosFilter substantives() { return PosFilter({"NOUN", "PROPN"}); }
  /// Parses "NOUN,PROPN"; "*" or "" gives the accept-all filter.
  static PosFilter parse(std::string_view list);

  bool accepts(std::string_view pos) const {
    return !tags_ || tags_->contains(std::string(pos));
  }
  bool is_any() const noexcept { return !tags_.has_value(); }
  const std::optional<std::set<std::string>>& tags() const noexcept { return tags_; }
  std::string to_string() const;

  bool operator==(const PosFilter&) const = default;

private:
  std::optional<std::set<std::string>> tags_;
};

/// Conjunction of key=value metadata constraints.
using Selector = std::vector<std::pair<std::string, std::string>>;

/// Parses "country=FR,speaker=degaulle" into a selector.
Selector parse_selector(std::string_view text);
std::string selector_to_string(const Selector& selector);

/// Documents of a parent corpus matching a selector. Holds a non-owning
/// reference: the parent must outlive the sub-corpus.
class SubCorpus {
public:
  SubCorpus(const AnnotatedCorpus& parent, Selector selector,
            std::vector<std::size_t> document_indices);

  const AnnotatedCorpus& parent() const noexcept { return *parent_; }
  const Selector& selector() const noexcept { return selector_; }
  const std::vector<std::size_t>& document_indices() const noexcept { return indices_; }
  std::vector<std::string> document_ids() const;
  std::size_t token_count() const;
  bool empty() const noexcept { return indices_.empty(); }
  const Document& document(std::size_t i) const { return parent_->documents()[indices_[i]]; }
  std::size_t size() const noexcept { return indices_.size(); }

  /// "lang=fr;country=FR" style identity used for provenance.
  std::string identity() const;

private:
  const AnnotatedCorpus* parent_;
  Selector selector_;
  std::vector<std::size_t> indices_;
};

/// Whole-corpus sub-corpus (empty selector).
SubCorpus whole(const AnnotatedCorpus& corpus);

/// Documents satisfying every pair of `selector`. Throws UnknownMetadataKey
/// when a selector key appears in no document.
SubCorpus partition(const AnnotatedCorpus& corpus, const Selector& selector);

struct TokenRef {
  std::string_view doc_id;
  std::size_t sentence_index;
  const Token* token;
};

/// Deterministic walk over the tokens of a sub-corpus in document, sentence,
/// token order, restricted to tokens accepted by the filter.
class TokenStream {
public:
  class iterator {
  public:
    using value_type = TokenRef;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    TokenRef operator*() const;
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& other) const {
      return doc_ == other.doc_ && sent_ == other.sent_ && tok_ == other.tok_;
    }

  private:
    friend class TokenStream;
    iterator(const TokenStream* owner, std::size_t doc);
    void settle();

    const TokenStream* owner_ = nullptr;
    std::size_t doc_ = 0, sent_ = 0, tok_ = 0;
  };

  TokenStream(const SubCorpus& sub, PosFilter filter)
      : sub_(&sub), filter_(std::move(filter)) {}

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, sub_->size()); }

private:
  const SubCorpus* sub_;
  PosFilter filter_;
};

TokenStream token_stream(const SubCorpus& sub, PosFilter filter = PosFilter::any());

/// Parses the annotated-TSV format. When `language` is non-empty it must
/// agree with the manifest.
AnnotatedCorpus parse_corpus(std::istream& in, std::string_view language = {});
AnnotatedCorpus parse_corpus_string(std::string_view text, std::string_view language = {});
AnnotatedCorpus load_corpus(const std::filesystem::path& path, std::string_view language = {});

/// Writes the corpus back to the annotated-TSV format.
std::string serialize_corpus(const AnnotatedCorpus& corpus);

/// FNV-1a hash of the serialized corpus, as 16 hex digits.
std::string corpus_hash(const AnnotatedCorpus& corpus);

}  // namespace logometre
