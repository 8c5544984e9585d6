#ifndef NCTK_BRACKET_H_
#define NCTK_BRACKET_H_

// Compound-noun syntax: binary parses, the modificational structures they
// induce, structure scoring and the three-word decision procedures.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nctk/assoc.h"
#include "nctk/lexres.h"

namespace nctk {

// Binary tree over leaf positions 0..n-1. Each internal node spans [lo, hi]
// with left child [lo, mid] and right child [mid+1, hi]; nodes are stored in
// preorder, left subtree first.
struct BinaryParse {
  struct Split {
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t mid = 0;
    friend bool operator==(const Split&, const Split&) = default;
  };

  std::size_t leaves = 0;
  std::vector<Split> splits;

  static BinaryParse left_branching(std::size_t n);
  static BinaryParse right_branching(std::size_t n);

  bool is_left_branching() const;
  // "[[1 2] 3]" using 1-based positions.
  std::string shape() const;
  // Same bracketing with the words substituted.
  std::string bracketed(std::span<const std::string> words) const;

  friend bool operator==(const BinaryParse&, const BinaryParse&) = default;
};

// All binary parses of n leaves (Catalan(n-1) of them). At each span the left
// child is taken largest first, so the fully left-branching parse comes first.
std::vector<BinaryParse> enumerate_parses(std::size_t n);

std::uint64_t catalan(std::size_t n);

// Dependency tree over positions: parent[i] is the position modified by i, or
// -1 for the root.
struct ModStructure {
  std::vector<int> parent;

  std::size_t size() const { return parent.size(); }
  // (modifier, head) pairs ordered by modifier position.
  std::vector<std::pair<std::size_t, std::size_t>> links() const;
  std::vector<std::vector<std::size_t>> children() const;
  int root() const;

  // Throws ArgumentError unless there is one root and no cycles.
  void validate() const;

  friend bool operator==(const ModStructure&, const ModStructure&) = default;
};

// The rightmost leaf of each left child modifies the rightmost leaf of the
// matching right child.
ModStructure mod_structure_of(const BinaryParse& p);

// Inverse of mod_structure_of for structures consistent with left-to-right
// order. Throws ArgumentError otherwise.
BinaryParse parse_from_structure(const ModStructure& m);

// Product over nodes of (number of children)!.
std::uint64_t choice(const ModStructure& m);

// (1/choice) times the sum over sense assignments of the product of link
// affinities. When tuned, each assignment is also divided by the product of
// its category sizes. The word-string probability is a shared constant and is
// left out.
double score_structure(const ModStructure& m, std::span<const std::string> words,
                       const AffinityMatrix& a, const Thesaurus& t, bool tuned);

enum class Branching { kLeft, kRight };
enum class Evidence { kNone, kOneSided, kTwoSided };
enum class Method { kDependency, kAdjacency };

std::string_view to_string(Branching b);
std::string_view to_string(Evidence e);
std::string_view to_string(Method m);
Method parse_method(std::string_view text);

struct BracketDecision {
  Branching branching = Branching::kLeft;
  // Left-over-right ratio; +inf when only the left side has support. 0/0 is
  // reported as 1.
  double ratio = 1.0;
  double numerator = 0.0;
  double denominator = 0.0;
  Evidence evidence = Evidence::kNone;
  bool correction_applied = false;

  // No evidence either way: the default left answer was a guess.
  bool guess() const { return evidence == Evidence::kNone; }
};

// R_dep = sum Pr(t1->t2|t2) Pr(t2->t3|t3) / sum Pr(t1->t3|t3) Pr(t2->t3|t3)
// over sense triples. When every Pr(t2->t3|t3) is zero those factors are
// treated as equal and nonzero and the sums are recomputed without them.
BracketDecision analyze3_dependency(const std::string& w1, const std::string& w2,
                                    const std::string& w3, const AffinityMatrix& a,
                                    const Thesaurus& t);

// R_adj = sum Pr(t1->t2|t2) / sum Pr(t2->t3|t3) over sense triples.
BracketDecision analyze3_adjacency(const std::string& w1, const std::string& w2,
                                   const std::string& w3, const AffinityMatrix& a,
                                   const Thesaurus& t);

// Each term divided by |t1||t2||t3| and the final ratio doubled.
BracketDecision analyze3_tuned(const std::string& w1, const std::string& w2,
                               const std::string& w3, const AffinityMatrix& a,
                               const Thesaurus& t, Method method);

BracketDecision analyze3(const std::string& w1, const std::string& w2,
                         const std::string& w3, const AffinityMatrix& a,
                         const Thesaurus& t, Method method, bool tuned);

struct NAnalysis {
  BinaryParse parse;
  double score = 0.0;
  double runner_up = 0.0;
  // Every parse scored zero.
  bool guess = false;
};

inline constexpr std::size_t kMaxAnalyzeWords = 12;

// Exhaustive argmax over all parses of the words. Ties go to the earlier
// parse in enumerate_parses order, which puts the left-branching parse first.
NAnalysis analyze_n(std::span<const std::string> words, const AffinityMatrix& a,
                    const Thesaurus& t, bool tuned);

}  // namespace nctk

#endif  // NCTK_BRACKET_H_
