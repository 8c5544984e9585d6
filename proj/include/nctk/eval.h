#ifndef NCTK_EVAL_H_
#define NCTK_EVAL_H_

// Test-set loading, accuracy reports and the pooled two-proportion z-test.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nctk {

// gold: L, R, I (semantically indeterminate) or E (extraction error).
struct ParsingTestItem {
  std::array<std::string, 3> words;
  char gold = 'L';
  std::optional<char> prediction;

  bool scorable() const { return gold == 'L' || gold == 'R'; }
};

// gold: one of O R I T W F N A, or X for compounds with no prepositional
// paraphrase. The type code is kept verbatim (E, B, V-subj, ...).
struct ParaphraseTestItem {
  std::array<std::string, 2> words;
  std::string type;
  char gold = 'O';
  std::optional<char> prediction;

  bool scorable() const { return gold != 'X'; }
};

// `w1 w2 w3<TAB>gold<TAB>prediction?`, '#' lines skipped.
std::vector<ParsingTestItem> load_parsing_test(const std::filesystem::path& path);
std::vector<ParsingTestItem> parse_parsing_test(std::string_view text);

// `n1 n2<TAB>type?<TAB>gold<TAB>prediction?`.
std::vector<ParaphraseTestItem> load_paraphrase_test(const std::filesystem::path& path);
std::vector<ParaphraseTestItem> parse_paraphrase_test(std::string_view text);

struct ClassStats {
  char label = 0;
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

struct EvalReport {
  std::size_t n_scored = 0;
  std::size_t n_correct = 0;
  double accuracy = 0.0;
  // Ordered as the gold label set (L R, or O R I T W F N A).
  std::vector<ClassStats> per_class;
  // Fraction of scored items decided by default; zero when no flags given.
  double guess_rate = 0.0;
  // confusion[g][p] over labels, both in label order.
  std::vector<char> labels;
  std::vector<std::vector<std::size_t>> confusion;

  std::size_t trace() const;
};

// Predictions align with items; unscorable items may have nullopt. A missing
// prediction for a scorable item raises InputError.
EvalReport evaluate_parsing(const std::vector<ParsingTestItem>& items,
                            const std::vector<std::optional<char>>& predictions,
                            const std::vector<bool>& guesses = {});
EvalReport evaluate_parsing(const std::vector<ParsingTestItem>& items);

EvalReport evaluate_paraphrase(const std::vector<ParaphraseTestItem>& items,
                               const std::vector<std::optional<char>>& predictions,
                               const std::vector<bool>& guesses = {});
EvalReport evaluate_paraphrase(const std::vector<ParaphraseTestItem>& items);

// z = (p1 - p2) / sqrt(2 pbar (1 - pbar) / n), pbar = (p1 + p2) / 2.
// DegenerateError when pbar is 0 or 1.
double pooled_z(double p1, double p2, std::size_t n);

// One decimal place, e.g. 0.8074 -> "80.7".
std::string format_percent(double fraction);

}  // namespace nctk

#endif  // NCTK_EVAL_H_
