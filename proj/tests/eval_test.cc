#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nctk/error.h"
#include "nctk/eval.h"

namespace {

using namespace nctk;

const std::string kData = NCTK_DATA_DIR;

std::vector<std::optional<char>> constant(std::size_t n, char c) {
  return std::vector<std::optional<char>>(n, c);
}

TEST(ParsingSet, Shape) {
  auto items = load_parsing_test(kData + "/parsing_test.tsv");
  EXPECT_EQ(items.size(), 308u);
  auto scorable = std::count_if(items.begin(), items.end(), [](auto& i) { return i.scorable(); });
  EXPECT_EQ(scorable, 244);
}

TEST(ParsingSet, AlwaysLeft) {
  auto items = load_parsing_test(kData + "/parsing_test.tsv");
  auto r = evaluate_parsing(items, constant(items.size(), 'L'));
  EXPECT_EQ(r.n_scored, 244u);
  EXPECT_EQ(r.n_correct, 163u);
  EXPECT_EQ(format_percent(r.accuracy), "66.8");
}

TEST(ParsingSet, BestModelColumn) {
  auto items = load_parsing_test(kData + "/parsing_test.tsv");
  auto r = evaluate_parsing(items);
  // 80.7% of 244, within one count.
  EXPECT_NEAR(static_cast<double>(r.n_correct), 0.807 * 244, 1.0);
  EXPECT_EQ(format_percent(r.accuracy), "80.7");
  EXPECT_EQ(r.trace(), r.n_correct);
}

TEST(ParaphraseSet, Shape) {
  auto items = load_paraphrase_test(kData + "/paraphrase_test.tsv");
  EXPECT_EQ(items.size(), 400u);
  auto scorable = std::count_if(items.begin(), items.end(), [](auto& i) { return i.scorable(); });
  EXPECT_EQ(scorable, 282);
}

TEST(ParaphraseSet, AlwaysOf) {
  auto items = load_paraphrase_test(kData + "/paraphrase_test.tsv");
  auto r = evaluate_paraphrase(items, constant(items.size(), 'O'));
  EXPECT_EQ(r.n_scored, 282u);
  EXPECT_EQ(r.n_correct, 94u);
  EXPECT_EQ(std::lround(r.accuracy * 100), 33);
  const std::size_t totals[] = {94, 78, 39, 22, 18, 13, 12, 6};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(r.per_class[i].total, totals[i]);
}

TEST(ParaphraseSet, LexicalModelColumn) {
  auto items = load_paraphrase_test(kData + "/paraphrase_test.tsv");
  auto r = evaluate_paraphrase(items);
  EXPECT_EQ(std::lround(r.accuracy * 100), 40);
  // Per-preposition row: of 52, for 47, in 36, about 14, with 6, from 23, on 50, at 17.
  const int pct[] = {52, 47, 36, 14, 6, 23, 50, 17};
  const std::string order = "ORITWFNA";
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& c = r.per_class[i];
    EXPECT_EQ(c.label, order[i]);
    EXPECT_NEAR(static_cast<double>(c.correct), pct[i] / 100.0 * c.total, 1.0) << c.label;
  }
}

TEST(Evaluate, MissingPredictionIsInputError) {
  auto items = parse_parsing_test("a b c\tL\n d e f\tI\n");
  std::vector<std::optional<char>> preds = {std::nullopt, std::nullopt};
  EXPECT_THROW(evaluate_parsing(items, preds), InputError);
  preds[0] = 'R';
  auto r = evaluate_parsing(items, preds);
  EXPECT_EQ(r.n_scored, 1u);
  EXPECT_EQ(r.n_correct, 0u);
  EXPECT_EQ(r.confusion[0][1], 1u);
}

TEST(Evaluate, GuessRate) {
  auto items = parse_parsing_test("a b c\tL\nd e f\tR\ng h i\tL\nj k l\tL\n");
  auto r = evaluate_parsing(items, constant(4, 'L'), {true, false, false, true});
  EXPECT_DOUBLE_EQ(r.guess_rate, 0.5);
}

TEST(Evaluate, PermutationInvariant) {
  auto items = load_paraphrase_test(kData + "/paraphrase_test.tsv");
  auto base = evaluate_paraphrase(items);
  std::mt19937 rng(4);
  std::shuffle(items.begin(), items.end(), rng);
  auto shuffled = evaluate_paraphrase(items);
  EXPECT_EQ(shuffled.n_correct, base.n_correct);
  EXPECT_EQ(shuffled.confusion, base.confusion);
}

TEST(Parse, RejectsMalformedRows) {
  EXPECT_THROW(parse_parsing_test("a b\tL\n"), InputError);
  EXPECT_THROW(parse_parsing_test("a b c\tQ\n"), InputError);
  EXPECT_THROW(parse_paraphrase_test("a b\tE\tZ\n"), InputError);
  EXPECT_THROW(load_parsing_test("/nonexistent/file.tsv"), ResourceError);
}

TEST(PooledZ, ReportedValues) {
  EXPECT_NEAR(pooled_z(0.775, 0.668, 244), 2.64, 0.02);
  EXPECT_NEAR(pooled_z(0.775, 0.689, 244), 2.14, 0.02);
  // lexical paraphrase model vs always-of
  EXPECT_NEAR(pooled_z(114.0 / 282, 94.0 / 282, 282), 1.75, 0.03);
}

TEST(PooledZ, Properties) {
  EXPECT_EQ(pooled_z(0.4, 0.4, 100), 0.0);
  EXPECT_DOUBLE_EQ(pooled_z(0.7, 0.6, 50), -pooled_z(0.6, 0.7, 50));
  EXPECT_THROW(pooled_z(0.0, 0.0, 10), DegenerateError);
  EXPECT_THROW(pooled_z(1.0, 1.0, 10), DegenerateError);
  EXPECT_THROW(pooled_z(1.2, 0.5, 10), ArgumentError);
  EXPECT_THROW(pooled_z(0.5, 0.5, 0), ArgumentError);
}

TEST(Format, OneDecimal) {
  EXPECT_EQ(format_percent(197.0 / 244), "80.7");
  EXPECT_EQ(format_percent(196.0 / 244), "80.3");
  EXPECT_EQ(format_percent(0.0), "0.0");
}

}  // namespace
