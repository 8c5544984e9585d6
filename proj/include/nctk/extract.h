#ifndef NCTK_EXTRACT_H_
#define NCTK_EXTRACT_H_

// Tokenization and the corpus patterns that produce training pairs, test
// triples, windowed co-occurrences and preposition head/object observations.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "nctk/lexres.h"

namespace nctk {

enum class TokenKind { kWord, kPunctuation };

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kWord;
  std::optional<std::string> tag;

  bool is_word() const { return kind == TokenKind::kWord; }
  friend bool operator==(const Token&, const Token&) = default;
};

// Words are maximal runs of ASCII letters, hyphens and apostrophes. Any other
// run of non-space characters is a single punctuation token.
std::vector<Token> tokenize(std::string_view text);

// Whitespace-separated `word/TAG` tokens. The tag follows the last '/' and is
// lowercased. A token without a tag raises InputError.
std::vector<Token> tokenize_tagged(std::string_view text);

enum class PairScheme { kPattern, kWindow };

// Counts over ordered (modifier, head) word pairs.
class PairCounts {
 public:
  using Key = std::pair<std::string, std::string>;
  using Table = std::map<Key, std::int64_t>;

  PairCounts() = default;
  PairCounts(PairScheme scheme, int window) : scheme_(scheme), window_(window) {}

  void add(const std::string& modifier, const std::string& head, std::int64_t n = 1);
  std::int64_t count(std::string_view modifier, std::string_view head) const;
  std::int64_t total() const { return total_; }
  std::size_t distinct() const { return table_.size(); }
  bool empty() const { return table_.empty(); }
  const Table& table() const { return table_; }

  PairScheme scheme() const { return scheme_; }
  int window() const { return window_; }
  bool symmetric() const { return symmetric_; }
  void set_symmetric(bool s) { symmetric_ = s; }

  // Adds every count of other into this table.
  void merge(const PairCounts& other);

  friend bool operator==(const PairCounts& a, const PairCounts& b) {
    return a.table_ == b.table_ && a.symmetric_ == b.symmetric_;
  }

 private:
  PairScheme scheme_ = PairScheme::kPattern;
  int window_ = 2;
  bool symmetric_ = false;
  std::int64_t total_ = 0;
  Table table_;
};

using Triple = std::array<std::string, 3>;

// Two sure nouns flanked by non-nouns. Stream edges act as non-nouns.
PairCounts extract_train_pairs(const std::vector<Token>& tokens, const SureNounSet& nouns);

// Three sure nouns flanked by non-nouns.
std::vector<Triple> extract_test_triples(const std::vector<Token>& tokens,
                                         const SureNounSet& nouns);

// Every ordered pair of sure nouns 1..width-1 positions apart.
PairCounts extract_windowed_pairs(const std::vector<Token>& tokens,
                                  const SureNounSet& nouns, int width);

// Sharded versions. Each shard scans a contiguous range of anchor positions
// and reads past its end by the pattern length; merged results equal the
// serial scan for any shard count.
PairCounts extract_train_pairs(const std::vector<Token>& tokens, const SureNounSet& nouns,
                               unsigned shards);
PairCounts extract_windowed_pairs(const std::vector<Token>& tokens,
                                  const SureNounSet& nouns, int width, unsigned shards);

PairCounts symmetrize(const PairCounts& counts);

inline constexpr std::array<std::string_view, 8> kPrepositions = {
    "of", "for", "in", "about", "with", "from", "on", "at"};

// Index into kPrepositions, or nullopt.
std::optional<std::size_t> preposition_index(std::string_view word);

struct PrepObservations {
  // Keyed by (preposition, noun).
  std::map<std::pair<std::string, std::string>, std::int64_t> head_counts;
  std::map<std::pair<std::string, std::string>, std::int64_t> object_counts;

  std::int64_t head_total(std::string_view prep) const;
  std::int64_t object_total(std::string_view prep) const;
  void merge(const PrepObservations& other);

  friend bool operator==(const PrepObservations&, const PrepObservations&) = default;
};

bool is_noun_tag(std::string_view tag);
bool is_modifier_tag(std::string_view tag);

PrepObservations extract_prep_observations(const std::vector<Token>& tagged);

// TSV persistence.
void write_pair_counts(std::ostream& out, const PairCounts& counts);
PairCounts read_pair_counts(std::istream& in);
void write_triples(std::ostream& out, const std::vector<Triple>& triples);
void write_prep_observations(std::ostream& out, const PrepObservations& obs);
PrepObservations read_prep_observations(std::istream& in);

}  // namespace nctk

#endif  // NCTK_EXTRACT_H_
