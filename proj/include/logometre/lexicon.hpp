#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logometre {

/// Analyst-supplied lemma equivalences between two languages. Many-to-one
/// mappings are allowed; a source lemma may appear only once.
///
/// File format: `lemma_a<TAB>lemma_b` per line, `#` comments, and an optional
/// directive line `#!lexicon lang_a=fr lang_b=pt` declaring the languages.
class BilingualLexicon {
public:
  BilingualLexicon() = default;
  BilingualLexicon(std::string lang_a, std::string lang_b, std::map<std::string, std::string> pairs);

  /// Maps every lemma to itself; used for self-comparison.
  static BilingualLexicon identity(std::string language = {});

  const std::string& lang_a() const noexcept { return lang_a_; }
  const std::string& lang_b() const noexcept { return lang_b_; }
  const std::map<std::string, std::string>& pairs() const noexcept { return pairs_; }
  const std::string& id() const noexcept { return id_; }
  bool is_identity() const noexcept { return identity_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  std::optional<std::string> translate(std::string_view lemma_a) const;

  /// Serializes back to the lexicon file format.
  std::string serialize() const;

private:
  std::string lang_a_, lang_b_;
  std::map<std::string, std::string> pairs_;
  std::string id_;
  bool identity_ = false;
};

BilingualLexicon parse_lexicon(std::string_view text);
BilingualLexicon load_lexicon(const std::string& path);

}  // namespace logometre
