#include "logometre/corpus.hpp"

#include "logometre/error.hpp"
#include "logometre/text.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace logometre {

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

AnnotatedCorpus::AnnotatedCorpus(std::string language, std::vector<std::string> tagset,
                                 std::vector<Document> documents)
    : language_(std::move(language)), tagset_(std::move(tagset)), documents_(std::move(documents)) {
  const std::unordered_set<std::string> tags(tagset_.begin(), tagset_.end());
  std::unordered_set<std::string> ids;
  for (const auto& doc : documents_) {
    if (doc.id.empty()) throw Error(errors::kInvalidArgument, "document with empty id");
    if (!ids.insert(doc.id).second) {
      throw Error(errors::kDuplicateDocumentId, "duplicate document id '" + doc.id + "'");
    }
    if (doc.sentences.empty()) {
      throw Error(errors::kEmptyDocument, "document '" + doc.id + "' has no tokens");
    }
    for (const auto& [key, value] : doc.metadata) {
      if (key.empty()) throw Error(errors::kInvalidArgument, "empty metadata key in '" + doc.id + "'");
    }
    for (const auto& sentence : doc.sentences) {
      if (sentence.tokens.empty()) {
        throw Error(errors::kInvalidArgument, "empty sentence in document '" + doc.id + "'");
      }
      for (const auto& tok : sentence.tokens) {
        if (tok.form.empty() || tok.lemma.empty()) {
          throw Error(errors::kInvalidArgument, "empty form or lemma in document '" + doc.id + "'");
        }
        if (!tags.contains(tok.pos)) {
          throw Error(errors::kUnknownTag, "tag '" + tok.pos + "' not declared in manifest");
        }
      }
      token_count_ += sentence.tokens.size();
    }
  }
}

std::size_t AnnotatedCorpus::sentence_count() const noexcept {
  std::size_t n = 0;
  for (const auto& d : documents_) n += d.sentences.size();
  return n;
}

bool AnnotatedCorpus::has_metadata_key(std::string_view key) const {
  if (key == "id") return !documents_.empty();
  for (const auto& d : documents_) {
    if (d.metadata.contains(std::string(key))) return true;
  }
  return false;
}

PosFilter PosFilter::parse(std::string_view list) {
  const auto text = trim(list);
  if (text.empty() || text == "*") return any();
  std::set<std::string> tags;
  for (const auto& part : split(text, ',')) {
    const auto tag = trim(part);
    if (!tag.empty()) tags.emplace(tag);
  }
  return PosFilter(std::move(tags));
}

std::string PosFilter::to_string() const {
  if (!tags_) return "*";
  std::string out;
  for (const auto& t : *tags_) {
    if (!out.empty()) out += ',';
    out += t;
  }
  return out;
}

Selector parse_selector(std::string_view text) {
  Selector selector;
  if (trim(text).empty()) return selector;
  for (const auto& part : split(text, ',')) {
    const auto item = trim(part);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(errors::kInvalidArgument, "selector item '" + std::string(item) + "' is not key=value");
    }
    selector.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
  }
  return selector;
}

std::string selector_to_string(const Selector& selector) {
  std::string out;
  for (const auto& [k, v] : selector) {
    if (!out.empty()) out += ',';
    out += k + '=' + v;
  }
  return out;
}

SubCorpus::SubCorpus(const AnnotatedCorpus& parent, Selector selector,
                     std::vector<std::size_t> document_indices)
    : parent_(&parent), selector_(std::move(selector)), indices_(std::move(document_indices)) {}

std::vector<std::string> SubCorpus::document_ids() const {
  std::vector<std::string> ids;
  ids.reserve(indices_.size());
  for (auto i : indices_) ids.push_back(parent_->documents()[i].id);
  return ids;
}

std::size_t SubCorpus::token_count() const {
  std::size_t n = 0;
  for (auto i : indices_) n += parent_->documents()[i].token_count();
  return n;
}

std::string SubCorpus::identity() const {
  std::string id = "lang=" + parent_->language();
  if (!selector_.empty()) id += ";" + selector_to_string(selector_);
  return id;
}

SubCorpus whole(const AnnotatedCorpus& corpus) {
  std::vector<std::size_t> all(corpus.documents().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return SubCorpus(corpus, {}, std::move(all));
}

SubCorpus partition(const AnnotatedCorpus& corpus, const Selector& selector) {
  for (const auto& [key, value] : selector) {
    if (!corpus.has_metadata_key(key)) {
      throw Error(errors::kUnknownMetadataKey, "metadata key '" + key + "' appears in no document");
    }
  }
  std::vector<std::size_t> matched;
  const auto& docs = corpus.documents();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    bool ok = true;
    for (const auto& [key, value] : selector) {
      if (key == "id") {
        ok = docs[i].id == value;
      } else {
        const auto it = docs[i].metadata.find(key);
        ok = it != docs[i].metadata.end() && it->second == value;
      }
      if (!ok) break;
    }
    if (ok) matched.push_back(i);
  }
  return SubCorpus(corpus, selector, std::move(matched));
}

// ---------------------------------------------------------------------------
// Token stream

TokenStream::iterator::iterator(const TokenStream* owner, std::size_t doc) : owner_(owner), doc_(doc) {
  settle();
}

TokenRef TokenStream::iterator::operator*() const {
  const auto& d = owner_->sub_->document(doc_);
  return TokenRef{d.id, sent_, &d.sentences[sent_].tokens[tok_]};
}

TokenStream::iterator& TokenStream::iterator::operator++() {
  ++tok_;
  settle();
  return *this;
}

// Advances to the next accepted token at or after the current position.
void TokenStream::iterator::settle() {
  const auto& sub = *owner_->sub_;
  while (doc_ < sub.size()) {
    const auto& sentences = sub.document(doc_).sentences;
    while (sent_ < sentences.size()) {
      const auto& tokens = sentences[sent_].tokens;
      while (tok_ < tokens.size()) {
        if (owner_->filter_.accepts(tokens[tok_].pos)) return;
        ++tok_;
      }
      ++sent_;
      tok_ = 0;
    }
    ++doc_;
    sent_ = 0;
  }
  doc_ = sub.size();
  sent_ = tok_ = 0;
}

TokenStream token_stream(const SubCorpus& sub, PosFilter filter) {
  return TokenStream(sub, std::move(filter));
}

// ---------------------------------------------------------------------------
// Annotated-TSV parsing

namespace {

constexpr std::string_view kManifestPrefix = "#!logometre";
constexpr std::string_view kHeaderPrefix = "####";
constexpr std::string_view kParagraphMarker = "##p";

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw Error(errors::kMalformedLine, "line " + std::to_string(line_no) + ": " + what, line_no);
}

struct Manifest {
  std::string language;
  std::vector<std::string> tags;
};

Manifest parse_manifest(std::string_view line) {
  const auto fail = [](const std::string& what) {
    throw Error(errors::kMalformedManifest, "line 1: " + what, 1);
  };
  if (!line.starts_with(kManifestPrefix)) fail("expected '#!logometre v1 lang=<tag> tags=<list>'");
  std::istringstream words{std::string(line.substr(kManifestPrefix.size()))};
  Manifest m;
  bool version = false, have_tags = false;
  for (std::string w; words >> w;) {
    if (w == "v1") {
      version = true;
    } else if (w.starts_with("lang=")) {
      m.language = w.substr(5);
    } else if (w.starts_with("tags=")) {
      have_tags = true;
      for (const auto& t : split(w.substr(5), ',')) {
        if (!t.empty()) m.tags.push_back(t);
      }
    } else {
      fail("unexpected manifest field '" + w + "'");
    }
  }
  if (!version) fail("unsupported or missing format version");
  if (m.language.empty()) fail("missing lang=");
  if (!have_tags || m.tags.empty()) fail("missing tags=");
  return m;
}

// `#### id=x key=value key="quoted value"`
void parse_header(std::string_view line, std::size_t line_no, Document& doc) {
  std::string_view rest = line.substr(kHeaderPrefix.size());
  bool have_id = false;
  std::size_t i = 0;
  while (true) {
    while (i < rest.size() && rest[i] == ' ') ++i;
    if (i >= rest.size()) break;
    const auto eq = rest.find('=', i);
    const auto space = rest.find(' ', i);
    if (eq == std::string_view::npos || (space != std::string_view::npos && space < eq)) {
      malformed(line_no, "header field is not key=value");
    }
    std::string key(rest.substr(i, eq - i));
    if (key.empty()) malformed(line_no, "empty metadata key");
    if (key.find('"') != std::string::npos) malformed(line_no, "quote in metadata key");
    i = eq + 1;
    std::string value;
    if (i < rest.size() && rest[i] == '"') {
      ++i;
      bool closed = false;
      while (i < rest.size()) {
        const char c = rest[i++];
        if (c == '\\' && i < rest.size()) {
          value += rest[i++];
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value += c;
        }
      }
      if (!closed) malformed(line_no, "unterminated quoted value");
      if (i < rest.size() && rest[i] != ' ') malformed(line_no, "garbage after quoted value");
    } else {
      const auto end = rest.find(' ', i);
      value = std::string(rest.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i));
      if (value.find('"') != std::string::npos) malformed(line_no, "stray quote in value");
      i = end == std::string_view::npos ? rest.size() : end;
    }
    if (key == "id") {
      if (have_id) malformed(line_no, "duplicate id field");
      if (value.empty()) malformed(line_no, "empty document id");
      doc.id = std::move(value);
      have_id = true;
    } else if (!doc.metadata.emplace(std::move(key), std::move(value)).second) {
      malformed(line_no, "duplicate metadata key");
    }
  }
  if (!have_id) malformed(line_no, "document header without id=");
}

class CorpusParser {
public:
  explicit CorpusParser(std::string_view language) : expected_language_(language) {}

  void line(std::string_view text, std::size_t line_no) {
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (!have_manifest_) {
      if (trim(text).empty()) {
        return;
      }
      if (line_no != 1) {
        throw Error(errors::kMalformedManifest,
                    "line " + std::to_string(line_no) + ": manifest must be the first line", line_no);
      }
      manifest_ = parse_manifest(text);
      if (!expected_language_.empty() && manifest_.language != expected_language_) {
        throw Error(errors::kLanguageMismatch, "corpus declares lang=" + manifest_.language +
                                                   ", expected " + std::string(expected_language_), 1);
      }
      tags_.insert(manifest_.tags.begin(), manifest_.tags.end());
      have_manifest_ = true;
      return;
    }

    if (text.starts_with(kHeaderPrefix) && (text.size() == kHeaderPrefix.size() || text[4] == ' ')) {
      finish_document();
      current_ = Document{};
      parse_header(text, line_no, *current_);
      if (!ids_.insert(current_->id).second) {
        throw Error(errors::kDuplicateDocumentId,
                    "line " + std::to_string(line_no) + ": duplicate document id '" + current_->id + "'",
                    line_no);
      }
      header_line_ = line_no;
      paragraph_ = 0;
      paragraph_has_sentences_ = false;
      return;
    }
    if (trim(text) == kParagraphMarker) {
      if (!current_) malformed(line_no, "paragraph marker outside a document");
      flush_sentence();
      if (paragraph_has_sentences_) {
        ++paragraph_;
        paragraph_has_sentences_ = false;
      }
      return;
    }
    if (trim(text).empty()) {
      flush_sentence();
      return;
    }

    if (!current_) malformed(line_no, "token line before any document header");
    const auto fields = split(text, '\t');
    if (fields.size() != 3) {
      malformed(line_no, "expected 3 tab-separated fields, found " + std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      if (f.empty()) malformed(line_no, "empty token field");
      if (!is_valid_utf8(f)) malformed(line_no, "invalid UTF-8");
    }
    if (!tags_.contains(fields[2])) {
      throw Error(errors::kUnknownTag,
                  "line " + std::to_string(line_no) + ": tag '" + fields[2] + "' not declared in manifest",
                  line_no);
    }
    auto lemma = normalize_lemma(fields[1]);
    if (lemma.empty()) malformed(line_no, "lemma empty after normalization");
    sentence_.tokens.push_back(Token{fields[0], std::move(lemma), fields[2]});
  }

  AnnotatedCorpus finish(std::string_view fallback_language) {
    if (!have_manifest_) {
      return AnnotatedCorpus(std::string(fallback_language), {}, {});
    }
    finish_document();
    return AnnotatedCorpus(manifest_.language, manifest_.tags, std::move(documents_));
  }

private:
  void flush_sentence() {
    if (sentence_.tokens.empty()) return;
    sentence_.paragraph = paragraph_;
    paragraph_has_sentences_ = true;
    current_->sentences.push_back(std::move(sentence_));
    sentence_ = Sentence{};
  }

  void finish_document() {
    if (!current_) return;
    flush_sentence();
    if (current_->sentences.empty()) {
      throw Error(errors::kEmptyDocument,
                  "line " + std::to_string(header_line_) + ": document '" + current_->id + "' has no tokens",
                  header_line_);
    }
    documents_.push_back(std::move(*current_));
    current_.reset();
  }

  std::string_view expected_language_;
  bool have_manifest_ = false;
  Manifest manifest_;
  std::unordered_set<std::string> tags_;
  std::unordered_set<std::string> ids_;
  std::vector<Document> documents_;
  std::optional<Document> current_;
  Sentence sentence_;
  std::size_t header_line_ = 0;
  std::size_t paragraph_ = 0;
  bool paragraph_has_sentences_ = false;
};

}  // namespace

AnnotatedCorpus parse_corpus(std::istream& in, std::string_view language) {
  CorpusParser parser(language);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) parser.line(line, ++line_no);
  return parser.finish(language);
}

AnnotatedCorpus parse_corpus_string(std::string_view text, std::string_view language) {
  CorpusParser parser(language);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    parser.line(text.substr(start, end - start), ++line_no);
    start = end + 1;
  }
  return parser.finish(language);
}

AnnotatedCorpus load_corpus(const std::filesystem::path& path, std::string_view language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errors::kIoError, "cannot open corpus '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus_string(buf.str(), language);
}

namespace {

bool needs_quotes(const std::string& v) {
  if (v.empty()) return true;
  for (char c : v) {
    if (c == ' ' || c == '"' || c == '\\' || c == '\t') return true;
  }
  return false;
}

void write_value(std::string& out, const std::string& v) {
  if (!needs_quotes(v)) {
    out += v;
    return;
  }
  out += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string serialize_corpus(const AnnotatedCorpus& corpus) {
  std::string out;
  out.reserve(corpus.token_count() * 24 + 64);
  if (corpus.documents().empty() && corpus.tagset().empty()) return out;
  out += "#!logometre v1 lang=" + corpus.language() + " tags=";
  for (std::size_t i = 0; i < corpus.tagset().size(); ++i) {
    if (i) out += ',';
    out += corpus.tagset()[i];
  }
  out += '\n';
  for (const auto& doc : corpus.documents()) {
    out += "#### id=";
    write_value(out, doc.id);
    for (const auto& [k, v] : doc.metadata) {
      out += ' ';
      out += k;
      out += '=';
      write_value(out, v);
    }
    out += '\n';
    std::size_t paragraph = 0;
    for (const auto& sentence : doc.sentences) {
      if (sentence.paragraph != paragraph) {
        out += "##p\n";
        paragraph = sentence.paragraph;
      }
      for (const auto& tok : sentence.tokens) {
        out += tok.form;
        out += '\t';
        out += tok.lemma;
        out += '\t';
        out += tok.pos;
        out += '\n';
      }
      out += '\n';
    }
  }
  return out;
}

std::string corpus_hash(const AnnotatedCorpus& corpus) {
  return hex64(fnv1a64(serialize_corpus(corpus)));
}

}  // namespace logometre
