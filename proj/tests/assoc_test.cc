#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nctk/assoc.h"
#include "nctk/error.h"

namespace {

using namespace nctk;

Thesaurus corn_syringe() {
  return parse_thesaurus(
      "250\tconvexity\tcorn\n"
      "298\tfood\tcorn\n"
      "348\tinstrument\tsyringe\n"
      "349\tother\tsyringe\n");
}

std::size_t idx(const Thesaurus& t, const std::string& id) { return *t.index_of(id); }

Thesaurus random_thesaurus(std::mt19937& rng, int words, int cats) {
  std::vector<std::vector<std::string>> members(cats);
  for (int w = 0; w < words; ++w) {
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int s = 0; s < k; ++s) {
      auto& m = members[rng() % cats];
      std::string name = "w" + std::to_string(w);
      if (std::find(m.begin(), m.end(), name) == m.end()) m.push_back(name);
    }
  }
  Thesaurus t;
  for (int c = 0; c < cats; ++c) {
    if (members[c].empty()) members[c].push_back("filler" + std::to_string(c));
    t.add_category("c" + std::to_string(c), "cat", members[c]);
  }
  return t;
}

PairCounts random_counts(std::mt19937& rng, int words, int pairs, int scale = 1) {
  PairCounts pc;
  for (int i = 0; i < pairs; ++i) {
    pc.add("w" + std::to_string(rng() % words), "w" + std::to_string(rng() % words),
           scale * static_cast<int>(1 + rng() % 5));
  }
  return pc;
}

TEST(Affinity, CornSyringeFractionalCounts) {
  auto t = corn_syringe();
  PairCounts pc;
  pc.add("corn", "syringe");
  auto a = estimate_affinities(pc, t);
  EXPECT_DOUBLE_EQ(a(idx(t, "250"), idx(t, "348")), 0.5);
  EXPECT_DOUBLE_EQ(a(idx(t, "298"), idx(t, "348")), 0.5);
  EXPECT_DOUBLE_EQ(a(idx(t, "298"), idx(t, "349")), 0.5);
  EXPECT_DOUBLE_EQ(a.normalizers()[idx(t, "348")], 0.5);
  // nothing modifies corn's categories
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a(i, idx(t, "250")), 0.0);
}

TEST(Affinity, MonosemousSingleCell) {
  auto t = parse_thesaurus("1\ta\tgoat\n2\tb\tmountain\n");
  PairCounts pc;
  pc.add("mountain", "goat");
  auto a = estimate_affinities(pc, t);
  EXPECT_EQ(a(idx(t, "2"), idx(t, "1")), 1.0);
  EXPECT_EQ(a(idx(t, "1"), idx(t, "2")), 0.0);
}

TEST(Affinity, EmptyCountsGiveZeroMatrix) {
  auto a = estimate_affinities(PairCounts(), corn_syringe());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a(i, j), 0.0);
}

TEST(Affinity, PluralsNormalizeAndUnknownsDrop) {
  auto t = corn_syringe();
  PairCounts pc;
  pc.add("corn", "syringes", 2);
  pc.add("corn", "zebra", 5);
  auto a = estimate_affinities(pc, t);
  EXPECT_DOUBLE_EQ(a(idx(t, "250"), idx(t, "348")), 0.5);
  EXPECT_EQ(a.dropped().events, 1u);
  EXPECT_EQ(a.dropped().weight, 5);
}

TEST(Affinity, ColumnStochastic) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_thesaurus(rng, 40, 15);
    auto a = estimate_affinities(random_counts(rng, 40, 300), t);
    std::vector<double> col(a.size(), 0.0);
    a.for_each_nonzero([&](std::size_t, std::size_t j, double v) { col[j] += v; });
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (col[j] != 0.0) EXPECT_NEAR(col[j], 1.0, 1e-9);
    }
  }
}

TEST(Affinity, ScalingInvariance) {
  std::mt19937 rng(4);
  auto t = random_thesaurus(rng, 30, 12);
  std::mt19937 r1(9), r2(9);
  auto a = estimate_affinities(random_counts(r1, 30, 200, 1), t);
  auto b = estimate_affinities(random_counts(r2, 30, 200, 7), t);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a(i, j), b(i, j), 1e-12);
}

TEST(Affinity, LexicalEqualsRelativeFrequency) {
  std::mt19937 rng(8);
  auto pc = random_counts(rng, 25, 150);
  std::vector<std::string> vocab;
  for (int w = 0; w < 25; ++w) vocab.push_back("w" + std::to_string(w));
  auto t = Thesaurus::lexical(vocab);
  auto a = estimate_affinities(pc, t);
  std::map<std::string, double> head_total;
  for (const auto& [k, v] : pc.table()) head_total[k.second] += static_cast<double>(v);
  for (const auto& m : vocab) {
    for (const auto& h : vocab) {
      const double expect =
          head_total.count(h) ? static_cast<double>(pc.count(m, h)) / head_total[h] : 0.0;
      EXPECT_NEAR(a(idx(t, m), idx(t, h)), expect, 1e-12);
    }
  }
}

TEST(Affinity, SparseWhenLarge) {
  std::vector<std::string> vocab;
  for (std::size_t w = 0; w < AffinityMatrix::kDenseLimit + 10; ++w) {
    vocab.push_back("v" + std::to_string(w));
  }
  auto t = Thesaurus::lexical(vocab);
  PairCounts pc;
  pc.add("v1", "v2", 3);
  pc.add("v5", "v2", 1);
  auto a = estimate_affinities(pc, t);
  EXPECT_FALSE(a.dense());
  EXPECT_DOUBLE_EQ(a(idx(t, "v1"), idx(t, "v2")), 0.75);
  EXPECT_DOUBLE_EQ(a(idx(t, "v5"), idx(t, "v2")), 0.25);
}

TEST(Affinity, PersistenceRoundTrip) {
  std::mt19937 rng(12);
  auto t = random_thesaurus(rng, 40, 15);
  auto a = estimate_affinities(random_counts(rng, 40, 300), t);
  std::stringstream ss;
  write_affinities(ss, a);
  auto b = read_affinities(ss);
  ASSERT_EQ(b.ids(), a.ids());
  EXPECT_EQ(b.mode(), a.mode());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a(i, j), b(i, j));
}

TEST(Affinity, RemappedFollowsThesaurusOrder) {
  auto t = corn_syringe();
  PairCounts pc;
  pc.add("corn", "syringe");
  auto a = estimate_affinities(pc, t);
  auto reordered = parse_thesaurus(
      "349\tother\tsyringe\n348\tinstrument\tsyringe\n298\tfood\tcorn\n250\tconvexity\tcorn\n");
  auto b = a.remapped(reordered);
  EXPECT_EQ(b(idx(reordered, "250"), idx(reordered, "348")), a(idx(t, "250"), idx(t, "348")));
  EXPECT_THROW(a.remapped(parse_thesaurus("1\tx\tcorn\n")), InputError);
}

TEST(Affinity, SetRejectsBadValues) {
  AffinityMatrix a({"a", "b"}, SchemeMode::kLexical);
  EXPECT_THROW(a.set(0, 0, -1.0), ArgumentError);
  EXPECT_THROW(a.set(2, 0, 1.0), ArgumentError);
  EXPECT_THROW(a(0, 5), ArgumentError);
}

// Paraphrase estimation

PrepObservations heads(std::initializer_list<std::tuple<std::string, std::string, int>> rows) {
  PrepObservations obs;
  for (const auto& [p, n, c] : rows) obs.head_counts[{p, n}] += c;
  return obs;
}

TEST(Paraphrase, SingleHeadObservation) {
  auto t = parse_thesaurus("1\tstories\tstory\n2\tthings\tcask\n");
  auto m = estimate_paraphrase(heads({{"about", "story", 1}}), t, Estimator::kMle);
  EXPECT_EQ(m.head(*preposition_index("about"), idx(t, "1")), 1.0);
  for (std::size_t c = 0; c < m.concept_count(); ++c) {
    EXPECT_EQ(m.head(*preposition_index("of"), c), 0.0);
  }
}

TEST(Paraphrase, FractionalSplit) {
  // amb is in c1 and c2; mono only in c2: counts 0.5 and 1.5.
  auto t = parse_thesaurus("c1\tx\tamb\nc2\ty\tamb mono\n");
  auto m = estimate_paraphrase(heads({{"of", "amb", 1}, {"of", "mono", 1}}), t, Estimator::kMle);
  EXPECT_DOUBLE_EQ(m.head(0, idx(t, "c1")), 0.25);
  EXPECT_DOUBLE_EQ(m.head(0, idx(t, "c2")), 0.75);
}

TEST(Paraphrase, EleUniformOnEmpty) {
  auto t = parse_thesaurus("a\tx\tone\nb\ty\ttwo\nc\tz\tthree\n");
  auto m = estimate_paraphrase_ele(PrepObservations(), t);
  for (std::size_t p = 0; p < ParaphraseModel::kPreps; ++p)
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_DOUBLE_EQ(m.head(p, c), 1.0 / 3.0);
      EXPECT_DOUBLE_EQ(m.object(p, c), 1.0 / 3.0);
    }
}

TEST(Paraphrase, EleSubstitution) {
  auto t = parse_thesaurus("c1\tx\tone\nc2\ty\ttwo\n");
  auto m = estimate_paraphrase_ele(heads({{"for", "one", 1}}), t);
  EXPECT_DOUBLE_EQ(m.head(1, idx(t, "c1")), 0.75);
  EXPECT_DOUBLE_EQ(m.head(1, idx(t, "c2")), 0.25);
}

// With K concepts, a row total of N and a cell count of c, the relative gap
// between (c + 1/2)/(N + K/2) and c/N is at most 1/(2c) + K/(2N).
TEST(Paraphrase, EleApproachesMle) {
  std::string text;
  const int K = 6;
  for (int c = 0; c < K; ++c) text += "c" + std::to_string(c) + "\tx\tn" + std::to_string(c) + "\n";
  auto t = parse_thesaurus(text);
  std::mt19937 rng(2);
  double previous = 1.0;
  for (int scale : {1, 10, 100, 1000, 10000}) {
    PrepObservations obs;
    double total = 0.0;
    std::vector<double> counts(K);
    std::mt19937 r(rng);
    for (int c = 0; c < K; ++c) {
      counts[c] = 10.0 * K * scale * (1 + static_cast<int>(r() % 4));
      obs.head_counts[{"of", "n" + std::to_string(c)}] = static_cast<std::int64_t>(counts[c]);
      total += counts[c];
    }
    auto mle = estimate_paraphrase_mle(obs, t);
    auto ele = estimate_paraphrase_ele(obs, t);
    double worst = 0.0;
    for (int c = 0; c < K; ++c) {
      const std::size_t i = idx(t, "c" + std::to_string(c));
      const double rel = std::abs(ele.head(0, i) - mle.head(0, i)) / mle.head(0, i);
      EXPECT_LE(rel, 0.5 / counts[c] + K / (2.0 * total) + 1e-15);
      worst = std::max(worst, rel);
    }
    EXPECT_LE(worst, previous);
    previous = worst;
  }
  EXPECT_LT(previous, 1e-3);
}

// 1043 concepts and 24251 observations: an unseen concept gets less than
// half the probability a single sighting earns under MLE.
TEST(Paraphrase, EleUnseenBelowHalfSingleton) {
  std::string text;
  for (int c = 0; c < 1043; ++c) text += "k" + std::to_string(c) + "\tx\tn" + std::to_string(c) + "\n";
  auto t = parse_thesaurus(text);
  auto obs = heads({{"of", "n0", 1}, {"of", "n1", 24250}});
  auto ele = estimate_paraphrase_ele(obs, t);
  auto mle = estimate_paraphrase_mle(obs, t);
  const double unseen = ele.head(0, idx(t, "k2"));
  EXPECT_DOUBLE_EQ(unseen, 0.5 / (521.5 + 24251.0));
  EXPECT_DOUBLE_EQ(mle.head(0, idx(t, "k0")), 1.0 / 24251.0);
  EXPECT_LT(unseen, 0.5 * mle.head(0, idx(t, "k0")));
}

TEST(Paraphrase, PersistenceRoundTrip) {
  auto t = parse_thesaurus("c1\tx\tamb\nc2\ty\tamb mono\nc3\tz\tlone\n");
  PrepObservations obs = heads({{"of", "amb", 3}, {"in", "mono", 2}});
  obs.object_counts[{"with", "lone"}] = 4;
  for (auto est : {Estimator::kMle, Estimator::kEle}) {
    auto m = estimate_paraphrase(obs, t, est);
    std::stringstream ss;
    write_paraphrase_model(ss, m);
    auto back = read_paraphrase_model(ss);
    ASSERT_EQ(back.ids(), m.ids());
    EXPECT_EQ(back.estimator(), est);
    for (std::size_t p = 0; p < ParaphraseModel::kPreps; ++p)
      for (std::size_t c = 0; c < m.concept_count(); ++c) {
        EXPECT_EQ(back.head(p, c), m.head(p, c));
        EXPECT_EQ(back.object(p, c), m.object(p, c));
      }
  }
}

TEST(Estimator, Parse) {
  EXPECT_EQ(parse_estimator("ele"), Estimator::kEle);
  EXPECT_EQ(parse_estimator("mle"), Estimator::kMle);
  EXPECT_THROW(parse_estimator("gt"), ArgumentError);
}

}  // namespace
