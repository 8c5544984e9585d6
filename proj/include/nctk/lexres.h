#ifndef NCTK_LEXRES_H_
#define NCTK_LEXRES_H_

// Lexical resources: the sure-noun lexicon, the thesaurus that groups nouns
// into concepts, and plural normalization against the thesaurus.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace nctk {

// Words listed only as nouns in a part-of-speech lexicon. One-letter words
// are never members.
class SureNounSet {
 public:
  SureNounSet() = default;
  explicit SureNounSet(std::span<const std::string> words);

  // Returns false when the word was rejected (one letter long).
  bool insert(std::string word);
  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_set<std::string, Hash, std::equal_to<>> words_;
};

SureNounSet load_sure_nouns(const std::filesystem::path& path);

// Opaque category identifier ("250", "737a", or a word in lexical mode).
using CategoryId = std::string;

enum class SchemeMode { kConceptual, kLexical };

std::string_view to_string(SchemeMode mode);
SchemeMode parse_scheme_mode(std::string_view text);

// Category <-> word mapping. Categories are addressed by a dense index in
// insertion order; the inverse table is kept as the exact transpose.
//
// A lexical thesaurus is the degenerate case with one category per word,
// named after the word itself.
class Thesaurus {
 public:
  struct Category {
    CategoryId id;
    std::string name;
    std::vector<std::string> words;
  };

  Thesaurus() = default;

  static Thesaurus lexical(std::span<const std::string> vocabulary);

  // Throws ArgumentError on a duplicate id or an empty word list.
  std::size_t add_category(CategoryId id, std::string name,
                           std::vector<std::string> words);

  SchemeMode mode() const { return mode_; }
  std::size_t category_count() const { return categories_.size(); }
  std::size_t word_count() const { return inverse_.size(); }
  const Category& category(std::size_t index) const { return categories_.at(index); }
  const std::vector<Category>& categories() const { return categories_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  // Number of distinct words in a category (|t| in the tuned analyses).
  std::size_t category_size(std::size_t index) const;

  // Exact, case-sensitive lookup. Unknown words yield an empty span.
  std::span<const std::size_t> categories_of(std::string_view word) const;

  // Throws UnknownWordError when the word has no category.
  std::size_t ambiguity(std::string_view word) const;

  bool contains(std::string_view word) const;

  // First of [w, w/ies->y, w/ses->s, w minus final s] present in the
  // thesaurus, or nullopt.
  std::optional<std::string> normalize(std::string_view word) const;

  // normalize() followed by categories_of(); empty when unmappable.
  std::span<const std::size_t> resolve(std::string_view word) const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  template <typename V>
  using StringMap = std::unordered_map<std::string, V, Hash, std::equal_to<>>;

  SchemeMode mode_ = SchemeMode::kConceptual;
  std::vector<Category> categories_;
  std::vector<std::size_t> sizes_;
  StringMap<std::size_t> id_index_;
  StringMap<std::vector<std::size_t>> inverse_;
};

// TSV: category_id <TAB> category_name <TAB> space-separated words.
Thesaurus load_thesaurus(const std::filesystem::path& path);
Thesaurus parse_thesaurus(std::string_view text);

// The active concept inventory for training and analysis.
struct ConceptScheme {
  SchemeMode mode = SchemeMode::kConceptual;
  Thesaurus concepts;

  static ConceptScheme conceptual(Thesaurus thesaurus);
  static ConceptScheme lexical(std::span<const std::string> vocabulary);
};

}  // namespace nctk

#endif  // NCTK_LEXRES_H_
