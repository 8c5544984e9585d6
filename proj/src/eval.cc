#include "nctk/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nctk/error.h"
#include "text_util.h"

namespace nctk {
namespace {

constexpr std::string_view kParsingLabels = "LR";
constexpr std::string_view kParaphraseLabels = "ORITWFNA";

char single_letter(std::string_view field, std::size_t line_no, std::string_view allowed) {
  field = detail::trim(field);
  if (field.size() != 1 || allowed.find(field[0]) == std::string_view::npos) {
    throw InputError("line " + std::to_string(line_no) + ": bad label '" + std::string(field) +
                     "'");
  }
  return field[0];
}

EvalReport build_report(std::string_view labels, const std::vector<char>& gold,
                        const std::vector<std::optional<char>>& pred,
                        const std::vector<bool>& scorable, const std::vector<bool>& guesses) {
  if (pred.size() != gold.size()) throw InputError("prediction count does not match items");
  if (!guesses.empty() && guesses.size() != gold.size()) {
    throw InputError("guess flag count does not match items");
  }
  EvalReport r;
  r.labels.assign(labels.begin(), labels.end());
  r.confusion.assign(labels.size(), std::vector<std::size_t>(labels.size(), 0));
  for (char c : labels) r.per_class.push_back({c, 0, 0});
  std::size_t guessed = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!scorable[i]) continue;
    if (!pred[i]) throw InputError("missing prediction for item " + std::to_string(i + 1));
    const auto g = labels.find(gold[i]);
    const auto p = labels.find(*pred[i]);
    if (p == std::string_view::npos) {
      throw InputError("prediction '" + std::string(1, *pred[i]) + "' is not a valid label");
    }
    ++r.n_scored;
    ++r.confusion[g][p];
    ++r.per_class[g].total;
    if (g == p) {
      ++r.per_class[g].correct;
      ++r.n_correct;
    }
    if (!guesses.empty() && guesses[i]) ++guessed;
  }
  if (r.n_scored > 0) {
    r.accuracy = static_cast<double>(r.n_correct) / static_cast<double>(r.n_scored);
    r.guess_rate = static_cast<double>(guessed) / static_cast<double>(r.n_scored);
  }
  return r;
}

}  // namespace

std::vector<ParsingTestItem> parse_parsing_test(std::string_view text) {
  std::vector<ParsingTestItem> items;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto f = detail::split(line, '\t');
    if (f.size() < 2 || f.size() > 3) {
      throw InputError("parsing test line " + std::to_string(line_no) + ": expected 2 or 3 fields");
    }
    auto words = detail::split_ws(f[0]);
    if (words.size() != 3) {
      throw InputError("parsing test line " + std::to_string(line_no) + ": expected three words");
    }
    ParsingTestItem item;
    for (int k = 0; k < 3; ++k) item.words[k] = std::string(words[k]);
    item.gold = single_letter(f[1], line_no, "LRIE");
    if (f.size() == 3 && !detail::trim(f[2]).empty()) {
      item.prediction = single_letter(f[2], line_no, kParsingLabels);
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<ParsingTestItem> load_parsing_test(const std::filesystem::path& path) {
  return parse_parsing_test(detail::read_file(path));
}

std::vector<ParaphraseTestItem> parse_paraphrase_test(std::string_view text) {
  std::vector<ParaphraseTestItem> items;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto f = detail::split(line, '\t');
    if (f.size() < 3 || f.size() > 4) {
      throw InputError("paraphrase test line " + std::to_string(line_no) +
                       ": expected 3 or 4 fields");
    }
    auto words = detail::split_ws(f[0]);
    if (words.size() != 2) {
      throw InputError("paraphrase test line " + std::to_string(line_no) + ": expected two words");
    }
    ParaphraseTestItem item;
    item.words = {std::string(words[0]), std::string(words[1])};
    item.type = std::string(detail::trim(f[1]));
    item.gold = single_letter(f[2], line_no, "ORITWFNAX");
    if (f.size() == 4 && !detail::trim(f[3]).empty()) {
      item.prediction = single_letter(f[3], line_no, kParaphraseLabels);
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<ParaphraseTestItem> load_paraphrase_test(const std::filesystem::path& path) {
  return parse_paraphrase_test(detail::read_file(path));
}

std::size_t EvalReport::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < confusion.size(); ++i) t += confusion[i][i];
  return t;
}

EvalReport evaluate_parsing(const std::vector<ParsingTestItem>& items,
                            const std::vector<std::optional<char>>& predictions,
                            const std::vector<bool>& guesses) {
  std::vector<char> gold;
  std::vector<bool> scorable;
  for (const auto& it : items) {
    gold.push_back(it.gold);
    scorable.push_back(it.scorable());
  }
  return build_report(kParsingLabels, gold, predictions, scorable, guesses);
}

EvalReport evaluate_parsing(const std::vector<ParsingTestItem>& items) {
  std::vector<std::optional<char>> pred;
  for (const auto& it : items) pred.push_back(it.prediction);
  return evaluate_parsing(items, pred);
}

EvalReport evaluate_paraphrase(const std::vector<ParaphraseTestItem>& items,
                               const std::vector<std::optional<char>>& predictions,
                               const std::vector<bool>& guesses) {
  std::vector<char> gold;
  std::vector<bool> scorable;
  for (const auto& it : items) {
    gold.push_back(it.gold);
    scorable.push_back(it.scorable());
  }
  return build_report(kParaphraseLabels, gold, predictions, scorable, guesses);
}

EvalReport evaluate_paraphrase(const std::vector<ParaphraseTestItem>& items) {
  std::vector<std::optional<char>> pred;
  for (const auto& it : items) pred.push_back(it.prediction);
  return evaluate_paraphrase(items, pred);
}

double pooled_z(double p1, double p2, std::size_t n) {
  if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0)) {
    throw ArgumentError("proportions must lie in [0, 1]");
  }
  if (n == 0) throw ArgumentError("sample size must be positive");
  const double pbar = (p1 + p2) / 2.0;
  if (pbar <= 0.0 || pbar >= 1.0) throw DegenerateError("pooled proportion is 0 or 1");
  return (p1 - p2) / std::sqrt(2.0 * pbar * (1.0 - pbar) / static_cast<double>(n));
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

}  // namespace nctk
