#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "nctk/error.h"
#include "nctk/paraphrase.h"

namespace {

using namespace nctk;

constexpr double kLow = 0.1, kMed = 0.2, kHigh = 0.4;

std::size_t P(std::string_view prep) { return *preposition_index(prep); }

struct CaskWine {
  Thesaurus t = parse_thesaurus("191\treceptacle\tcask\n298\tfood\twine\n");
  ParaphraseModel m{{"191", "298"}, SchemeMode::kConceptual, Estimator::kMle};
  CaskWine() {
    const std::size_t food = *t.index_of("298"), rec = *t.index_of("191");
    // head column for food, object column for receptacle
    const double head[] = {kLow, kHigh, kMed, 0.0, kMed, kMed, kLow, kLow};
    const double obj[] = {kMed, kLow, kHigh, kLow, kLow, kMed, kLow, 0.0};
    for (std::size_t p = 0; p < 8; ++p) {
      m.set_head(p, food, head[p]);
      m.set_object(p, rec, obj[p]);
    }
  }
};

TEST(Paraphrase, CaskWineSelectsIn) {
  CaskWine cw;
  auto d = paraphrase("cask", "wine", cw.m, cw.t, CandidateSet::kFull);
  EXPECT_EQ(d.preposition(), "in");
  EXPECT_DOUBLE_EQ(d.scores[P("in")], kMed * kHigh);
  EXPECT_FALSE(d.tie_broken);
}

TEST(Paraphrase, MonosemousFactorization) {
  CaskWine cw;
  auto s = score_preps("cask", "wine", cw.m, cw.t);
  const std::size_t food = *cw.t.index_of("298"), rec = *cw.t.index_of("191");
  for (std::size_t p = 0; p < 8; ++p) {
    EXPECT_DOUBLE_EQ(s[p], cw.m.object(p, rec) * cw.m.head(p, food));
  }
}

TEST(Paraphrase, AmbiguousSumsOverSenses) {
  auto t = parse_thesaurus("a\tx\tn1\nb\ty\tn1 n2\nc\tz\tn2\n");
  ParaphraseModel m({"a", "b", "c"}, SchemeMode::kConceptual, Estimator::kMle);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t p = 0; p < 8; ++p)
    for (std::size_t c = 0; c < 3; ++c) {
      m.set_head(p, c, u(rng));
      m.set_object(p, c, u(rng));
    }
  auto s = score_preps("n1", "n2", m, t);
  for (std::size_t p = 0; p < 8; ++p) {
    double expect = 0.0;
    for (std::size_t c1 : {0u, 1u})
      for (std::size_t c2 : {1u, 2u}) expect += m.object(p, c1) * m.head(p, c2);
    EXPECT_NEAR(s[p], expect, 1e-15);
  }
}

TEST(Paraphrase, UnknownNoun) {
  CaskWine cw;
  EXPECT_THROW(score_preps("cask", "beer", cw.m, cw.t), UnknownWordError);
}

TEST(Decide, AllZeroChoosesOf) {
  PrepScores zero{};
  auto d = decide(zero, CandidateSet::kFull);
  EXPECT_EQ(d.preposition(), "of");
  EXPECT_TRUE(d.tie_broken);
  CaskWine cw;
  ParaphraseModel empty({"191", "298"}, SchemeMode::kConceptual, Estimator::kMle);
  auto s = score_preps("cask", "wine", empty, cw.t);
  for (double v : s) EXPECT_EQ(v, 0.0);
}

TEST(Decide, StrictMax) {
  PrepScores s{};
  s[P("of")] = 0.1;
  s[P("for")] = 0.3;
  s[P("at")] = 0.05;
  EXPECT_EQ(decide(s, CandidateSet::kFull).preposition(), "for");
}

TEST(Decide, PrecedenceTieBreak) {
  // Each adjacent pair in the order: the earlier one wins the tie.
  for (std::size_t p = 0; p + 1 < 8; ++p) {
    PrepScores s{};
    s[p] = 0.5;
    s[p + 1] = 0.5;
    auto d = decide(s, CandidateSet::kFull);
    EXPECT_EQ(d.chosen, p);
    EXPECT_TRUE(d.tie_broken);
  }
  PrepScores s{};
  s[P("on")] = 0.2;
  s[P("at")] = 0.2;
  s[P("with")] = 0.2;
  EXPECT_EQ(decide(s, CandidateSet::kFull).preposition(), "with");
}

TEST(Decide, RestrictedDesigns) {
  PrepScores s{};
  s[P("on")] = 0.9;
  s[P("in")] = 0.2;
  s[P("for")] = 0.1;
  EXPECT_EQ(decide(s, CandidateSet::kFull).preposition(), "on");
  EXPECT_EQ(decide(s, CandidateSet::kThree).preposition(), "in");
  EXPECT_EQ(decide(s, CandidateSet::kTwo).preposition(), "for");
  EXPECT_EQ(candidates_of(CandidateSet::kThree), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(candidates_of(CandidateSet::kTwo), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(candidates_of(CandidateSet::kFull).size(), 8u);
}

TEST(Decide, AllZeroWithoutOf) {
  PrepScores zero{};
  std::vector<std::size_t> cands = {P("at"), P("in")};
  EXPECT_EQ(decide(zero, cands).preposition(), "in");
  EXPECT_THROW(decide(zero, std::vector<std::size_t>{}), ArgumentError);
}

TEST(Decide, ScaleInvarianceAndRestriction) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> q(0, 4);
  std::uniform_real_distribution<double> lam(0.01, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    PrepScores s{};
    for (auto& v : s) v = q(rng) * 0.25;
    PrepScores t = s;
    const double l = lam(rng);
    for (auto& v : t) v *= l;
    auto full = decide(s, CandidateSet::kFull);
    EXPECT_EQ(decide(t, CandidateSet::kFull).chosen, full.chosen);
    for (auto set : {CandidateSet::kThree, CandidateSet::kTwo}) {
      auto cands = candidates_of(set);
      auto r = decide(s, set);
      if (std::find(cands.begin(), cands.end(), full.chosen) != cands.end()) {
        EXPECT_EQ(r.chosen, full.chosen);
      }
    }
  }
}

TEST(Decide, HeadMonotonicity) {
  CaskWine cw;
  const std::size_t food = *cw.t.index_of("298");
  auto before = score_preps("cask", "wine", cw.m, cw.t);
  cw.m.set_head(P("with"), food, cw.m.head(P("with"), food) * 3);
  auto after = score_preps("cask", "wine", cw.m, cw.t);
  EXPECT_GE(after[P("with")], before[P("with")]);
  for (std::size_t p = 0; p < 8; ++p) {
    if (p != P("with")) EXPECT_EQ(after[p], before[p]);
  }
}

TEST(Letters, RoundTrip) {
  const std::string letters = "ORITWFNA";
  for (std::size_t p = 0; p < 8; ++p) {
    EXPECT_EQ(prep_letter(p), letters[p]);
    EXPECT_EQ(prep_from_letter(letters[p]), p);
  }
  EXPECT_FALSE(prep_from_letter('X').has_value());
  EXPECT_EQ(parse_candidate_set("8"), CandidateSet::kFull);
  EXPECT_THROW(parse_candidate_set("5"), ArgumentError);
}

}  // namespace
