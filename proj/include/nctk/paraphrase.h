#ifndef NCTK_PARAPHRASE_H_
#define NCTK_PARAPHRASE_H_

// Prepositional paraphrase selection for two-word compounds.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nctk/assoc.h"
#include "nctk/lexres.h"

namespace nctk {

// Indexed like kPrepositions, which is also the tie-break precedence order
// (highest first).
using PrepScores = std::array<double, ParaphraseModel::kPreps>;

enum class CandidateSet { kFull, kThree, kTwo };

std::string_view to_string(CandidateSet c);
// Accepts "full", "3", "2".
CandidateSet parse_candidate_set(std::string_view text);
std::vector<std::size_t> candidates_of(CandidateSet c);

// Gold-label letter used in test sets: of=O for=R in=I about=T with=W from=F
// on=N at=A.
char prep_letter(std::size_t prep);
std::optional<std::size_t> prep_from_letter(char letter);

struct ParaphraseDecision {
  std::size_t chosen = 0;
  PrepScores scores{};
  bool tie_broken = false;
  std::vector<std::size_t> candidates;

  std::string_view preposition() const { return kPrepositions[chosen]; }
};

// score(p) = sum over c1 in cats(n1), c2 in cats(n2) of
//   object[p][c1] * head[p][c2].
// Constant factors shared by every preposition are omitted.
PrepScores score_preps(const std::string& n1, const std::string& n2,
                       const ParaphraseModel& model, const Thesaurus& t);

// Argmax over candidates; ties go to the earliest preposition in precedence
// order. All-zero scores choose "of" when it is a candidate.
ParaphraseDecision decide(const PrepScores& scores, std::span<const std::size_t> candidates);
ParaphraseDecision decide(const PrepScores& scores, CandidateSet set);

ParaphraseDecision paraphrase(const std::string& n1, const std::string& n2,
                              const ParaphraseModel& model, const Thesaurus& t,
                              CandidateSet set);

}  // namespace nctk

#endif  // NCTK_PARAPHRASE_H_
