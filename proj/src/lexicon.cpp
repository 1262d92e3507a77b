#include "logometre/lexicon.hpp"

#include "logometre/error.hpp"
#include "logometre/text.hpp"

#include <fstream>
#include <sstream>

namespace logometre {

BilingualLexicon::BilingualLexicon(std::string lang_a, std::string lang_b,
                                   std::map<std::string, std::string> pairs)
    : lang_a_(std::move(lang_a)), lang_b_(std::move(lang_b)), pairs_(std::move(pairs)) {
  id_ = hex64(fnv1a64(serialize()));
}

BilingualLexicon BilingualLexicon::identity(std::string language) {
  BilingualLexicon lex;
  lex.lang_a_ = language;
  lex.lang_b_ = std::move(language);
  lex.identity_ = true;
  lex.id_ = "identity";
  return lex;
}

std::optional<std::string> BilingualLexicon::translate(std::string_view lemma_a) const {
  if (identity_) return std::string(lemma_a);
  const auto it = pairs_.find(std::string(lemma_a));
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

std::string BilingualLexicon::serialize() const {
  std::string out;
  if (!lang_a_.empty() || !lang_b_.empty()) {
    out += "#!lexicon lang_a=" + lang_a_ + " lang_b=" + lang_b_ + "\n";
  }
  for (const auto& [a, b] : pairs_) out += a + '\t' + b + '\n';
  return out;
}

BilingualLexicon parse_lexicon(std::string_view text) {
  std::string lang_a, lang_b;
  std::map<std::string, std::string> pairs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.starts_with("#!lexicon")) {
      std::istringstream words{std::string(line.substr(9))};
      for (std::string w; words >> w;) {
        if (w.starts_with("lang_a=")) {
          lang_a = w.substr(7);
        } else if (w.starts_with("lang_b=")) {
          lang_b = w.substr(7);
        } else {
          throw Error(errors::kMalformedLine,
                      "lexicon line " + std::to_string(line_no) + ": unknown directive field '" + w + "'",
                      line_no);
        }
      }
      continue;
    }
    if (trim(line).empty() || line.front() == '#') continue;

    const auto fields = split(line, '\t');
    if (fields.size() != 2 || trim(fields[0]).empty() || trim(fields[1]).empty()) {
      throw Error(errors::kMalformedLine,
                  "lexicon line " + std::to_string(line_no) + ": expected lemma_a<TAB>lemma_b", line_no);
    }
    if (!is_valid_utf8(fields[0]) || !is_valid_utf8(fields[1])) {
      throw Error(errors::kMalformedLine, "lexicon line " + std::to_string(line_no) + ": invalid UTF-8",
                  line_no);
    }
    auto a = normalize_lemma(trim(fields[0]));
    auto b = normalize_lemma(trim(fields[1]));
    if (!pairs.emplace(a, b).second) {
      throw Error(errors::kDuplicateLexiconEntry,
                  "lexicon line " + std::to_string(line_no) + ": '" + a + "' already mapped", line_no);
    }
  }
  return BilingualLexicon(std::move(lang_a), std::move(lang_b), std::move(pairs));
}

BilingualLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errors::kIoError, "cannot open lexicon '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str());
}

}  // namespace logometre
