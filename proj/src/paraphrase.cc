#include "nctk/paraphrase.h"

#include <algorithm>

#include "nctk/error.h"

namespace nctk {
namespace {

constexpr char kLetters[ParaphraseModel::kPreps] = {'O', 'R', 'I', 'T', 'W', 'F', 'N', 'A'};

}  // namespace

std::string_view to_string(CandidateSet c) {
  switch (c) {
    case CandidateSet::kThree: return "3";
    case CandidateSet::kTwo: return "2";
    default: return "full";
  }
}

CandidateSet parse_candidate_set(std::string_view text) {
  if (text == "full" || text == "8") return CandidateSet::kFull;
  if (text == "3") return CandidateSet::kThree;
  if (text == "2") return CandidateSet::kTwo;
  throw ArgumentError("unknown candidate set: " + std::string(text));
}

std::vector<std::size_t> candidates_of(CandidateSet c) {
  switch (c) {
    case CandidateSet::kThree: return {0, 1, 2};
    case CandidateSet::kTwo: return {0, 1};
    default: return {0, 1, 2, 3, 4, 5, 6, 7};
  }
}

char prep_letter(std::size_t prep) {
  if (prep >= ParaphraseModel::kPreps) throw ArgumentError("preposition index out of range");
  return kLetters[prep];
}

std::optional<std::size_t> prep_from_letter(char letter) {
  for (std::size_t i = 0; i < ParaphraseModel::kPreps; ++i) {
    if (kLetters[i] == letter) return i;
  }
  return std::nullopt;
}

PrepScores score_preps(const std::string& n1, const std::string& n2,
                       const ParaphraseModel& model, const Thesaurus& t) {
  auto c1 = t.resolve(n1);
  if (c1.empty()) throw UnknownWordError(n1);
  auto c2 = t.resolve(n2);
  if (c2.empty()) throw UnknownWordError(n2);
  PrepScores scores{};
  for (std::size_t p = 0; p < ParaphraseModel::kPreps; ++p) {
    double s = 0.0;
    for (auto a : c1)
      for (auto b : c2) s += model.object(p, a) * model.head(p, b);
    scores[p] = s;
  }
  return scores;
}

ParaphraseDecision decide(const PrepScores& scores, std::span<const std::size_t> candidates) {
  if (candidates.empty()) throw ArgumentError("empty candidate set");
  std::vector<std::size_t> ordered(candidates.begin(), candidates.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  if (ordered.back() >= ParaphraseModel::kPreps) {
    throw ArgumentError("candidate index out of range");
  }

  ParaphraseDecision d;
  d.scores = scores;
  d.candidates = ordered;
  // Ascending index is precedence order, so the first strict maximum wins.
  d.chosen = ordered.front();
  for (auto p : ordered) {
    if (scores[p] > scores[d.chosen]) d.chosen = p;
  }
  std::size_t at_max = 0;
  for (auto p : ordered) at_max += scores[p] == scores[d.chosen];
  d.tie_broken = at_max > 1;
  return d;
}

ParaphraseDecision decide(const PrepScores& scores, CandidateSet set) {
  auto c = candidates_of(set);
  return decide(scores, c);
}

ParaphraseDecision paraphrase(const std::string& n1, const std::string& n2,
                              const ParaphraseModel& model, const Thesaurus& t,
                              CandidateSet set) {
  return decide(score_preps(n1, n2, model, t), set);
}

}  // namespace nctk
