#include "nctk/lexres.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nctk/error.h"
#include "text_util.h"

namespace nctk {

SureNounSet::SureNounSet(std::span<const std::string> words) {
  for (const auto& w : words) insert(w);
}

bool SureNounSet::insert(std::string word) {
  if (word.size() < 2) return false;
  words_.insert(std::move(word));
  return true;
}

bool SureNounSet::contains(std::string_view word) const {
  return words_.find(word) != words_.end();
}

SureNounSet load_sure_nouns(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot read sure-noun file: " + path.string());
  SureNounSet set;
  std::string line;
  while (std::getline(in, line)) {
    auto word = detail::trim(line);
    if (!word.empty()) set.insert(std::string(word));
  }
  return set;
}

std::string_view to_string(SchemeMode mode) {
  return mode == SchemeMode::kLexical ? "lexical" : "conceptual";
}

SchemeMode parse_scheme_mode(std::string_view text) {
  if (text == "conceptual") return SchemeMode::kConceptual;
  if (text == "lexical") return SchemeMode::kLexical;
  throw ArgumentError("unknown scheme: " + std::string(text));
}

Thesaurus Thesaurus::lexical(std::span<const std::string> vocabulary) {
  Thesaurus t;
  t.mode_ = SchemeMode::kLexical;
  std::vector<std::string> sorted(vocabulary.begin(), vocabulary.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto& w : sorted) {
    if (w.empty()) continue;
    t.add_category(w, w, {w});
  }
  return t;
}

std::size_t Thesaurus::add_category(CategoryId id, std::string name,
                                    std::vector<std::string> words) {
  if (id.empty()) throw ArgumentError("empty category id");
  if (id_index_.count(id)) throw ArgumentError("duplicate category id: " + id);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::erase(words, std::string());
  if (words.empty()) throw ArgumentError("category without words: " + id);

  const std::size_t index = categories_.size();
  for (const auto& w : words) inverse_[w].push_back(index);
  id_index_.emplace(id, index);
  sizes_.push_back(words.size());
  categories_.push_back({std::move(id), std::move(name), std::move(words)});
  return index;
}

std::optional<std::size_t> Thesaurus::index_of(std::string_view id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Thesaurus::category_size(std::size_t index) const {
  return sizes_.at(index);
}

std::span<const std::size_t> Thesaurus::categories_of(std::string_view word) const {
  auto it = inverse_.find(word);
  if (it == inverse_.end()) return {};
  return it->second;
}

std::size_t Thesaurus::ambiguity(std::string_view word) const {
  auto cats = categories_of(word);
  if (cats.empty()) throw UnknownWordError(std::string(word));
  return cats.size();
}

bool Thesaurus::contains(std::string_view word) const {
  return inverse_.find(word) != inverse_.end();
}

std::optional<std::string> Thesaurus::normalize(std::string_view word) const {
  if (contains(word)) return std::string(word);
  auto ends_with = [&](std::string_view suffix) {
    return word.size() > suffix.size() && word.ends_with(suffix);
  };
  if (ends_with("ies")) {
    std::string c(word.substr(0, word.size() - 3));
    c += 'y';
    if (contains(c)) return c;
  }
  if (ends_with("ses")) {
    std::string c(word.substr(0, word.size() - 2));
    if (contains(c)) return c;
  }
  if (ends_with("s")) {
    std::string c(word.substr(0, word.size() - 1));
    if (contains(c)) return c;
  }
  return std::nullopt;
}

std::span<const std::size_t> Thesaurus::resolve(std::string_view word) const {
  auto cats = categories_of(word);
  if (!cats.empty()) return cats;
  auto norm = normalize(word);
  if (!norm) return {};
  return categories_of(*norm);
}

Thesaurus parse_thesaurus(std::string_view text) {
  Thesaurus t;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 3) {
      throw InputError("thesaurus line " + std::to_string(line_no) +
                       ": expected 3 tab-separated fields");
    }
    std::vector<std::string> words;
    for (auto w : detail::split_ws(fields[2])) words.emplace_back(w);
    try {
      t.add_category(std::string(detail::trim(fields[0])),
                     std::string(detail::trim(fields[1])), std::move(words));
    } catch (const ArgumentError& e) {
      throw InputError("thesaurus line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return t;
}

Thesaurus load_thesaurus(const std::filesystem::path& path) {
  return parse_thesaurus(detail::read_file(path));
}

ConceptScheme ConceptScheme::conceptual(Thesaurus thesaurus) {
  return {SchemeMode::kConceptual, std::move(thesaurus)};
}

ConceptScheme ConceptScheme::lexical(std::span<const std::string> vocabulary) {
  return {SchemeMode::kLexical, Thesaurus::lexical(vocabulary)};
}

}  // namespace nctk
