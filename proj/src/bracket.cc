#include "nctk/bracket.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "nctk/error.h"

namespace nctk {
namespace {

constexpr std::size_t kMaxEnumerate = 14;

using Spans = std::vector<std::vector<BinaryParse::Split>>;

Spans gen(std::size_t lo, std::size_t hi) {
  if (lo == hi) return {{}};
  Spans out;
  for (std::size_t mid = hi; mid-- > lo;) {
    const Spans left = gen(lo, mid);
    const Spans right = gen(mid + 1, hi);
    for (const auto& l : left) {
      for (const auto& r : right) {
        std::vector<BinaryParse::Split> s;
        s.reserve(1 + l.size() + r.size());
        s.push_back({lo, hi, mid});
        s.insert(s.end(), l.begin(), l.end());
        s.insert(s.end(), r.begin(), r.end());
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

void render(const BinaryParse& p, std::size_t& next, std::size_t lo, std::size_t hi,
            const std::function<std::string(std::size_t)>& leaf, std::string& out) {
  if (lo == hi) {
    out += leaf(lo);
    return;
  }
  if (next >= p.splits.size() || p.splits[next].lo != lo || p.splits[next].hi != hi) {
    throw ArgumentError("malformed parse");
  }
  const std::size_t mid = p.splits[next++].mid;
  out += '[';
  render(p, next, lo, mid, leaf, out);
  out += ' ';
  render(p, next, mid + 1, hi, leaf, out);
  out += ']';
}

std::string render_parse(const BinaryParse& p,
                         const std::function<std::string(std::size_t)>& leaf) {
  if (p.leaves == 0) return "";
  std::string out;
  std::size_t next = 0;
  render(p, next, 0, p.leaves - 1, leaf, out);
  return out;
}

std::vector<std::span<const std::size_t>> resolve_all(std::span<const std::string> words,
                                                     const Thesaurus& t) {
  std::vector<std::span<const std::size_t>> cats;
  cats.reserve(words.size());
  for (const auto& w : words) {
    auto c = t.resolve(w);
    if (c.empty()) throw UnknownWordError(w);
    cats.push_back(c);
  }
  return cats;
}

// Sum over sense assignments of the link product, by dynamic programming
// over the dependency tree.
double structure_sum(const ModStructure& m,
                     const std::vector<std::span<const std::size_t>>& cats,
                     const AffinityMatrix& a, const Thesaurus& t, bool tuned) {
  const auto kids = m.children();
  auto weight = [&](std::size_t cat) {
    return tuned ? 1.0 / static_cast<double>(t.category_size(cat)) : 1.0;
  };
  std::function<std::vector<double>(std::size_t)> inside = [&](std::size_t node) {
    std::vector<double> f(cats[node].size(), 1.0);
    for (auto c : kids[node]) {
      const auto fc = inside(c);
      for (std::size_t s = 0; s < f.size(); ++s) {
        double acc = 0.0;
        for (std::size_t sc = 0; sc < fc.size(); ++sc) {
          acc += a(cats[c][sc], cats[node][s]) * fc[sc] * weight(cats[c][sc]);
        }
        f[s] *= acc;
      }
    }
    return f;
  };
  const auto root = static_cast<std::size_t>(m.root());
  const auto f = inside(root);
  double total = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) total += f[s] * weight(cats[root][s]);
  return total;
}

BracketDecision ratio_decision(double num, double den, double factor, bool corrected) {
  BracketDecision d;
  d.numerator = num;
  d.denominator = den;
  d.correction_applied = corrected;
  if (num > 0.0 && den > 0.0) {
    d.evidence = Evidence::kTwoSided;
  } else if (num > 0.0 || den > 0.0) {
    d.evidence = Evidence::kOneSided;
  } else {
    d.evidence = Evidence::kNone;
    d.ratio = 1.0;
    d.branching = Branching::kLeft;
    return d;
  }
  d.ratio = den == 0.0 ? std::numeric_limits<double>::infinity() : factor * num / den;
  d.branching = d.ratio < 1.0 ? Branching::kRight : Branching::kLeft;
  return d;
}

BracketDecision analyze3_impl(const std::string& w1, const std::string& w2,
                              const std::string& w3, const AffinityMatrix& a,
                              const Thesaurus& t, Method method, bool tuned) {
  const std::string words[3] = {w1, w2, w3};
  const auto cats = resolve_all(words, t);
  auto weight = [&](std::size_t s1, std::size_t s2, std::size_t s3) {
    if (!tuned) return 1.0;
    return 1.0 / (static_cast<double>(t.category_size(s1)) *
                  static_cast<double>(t.category_size(s2)) *
                  static_cast<double>(t.category_size(s3)));
  };

  double num = 0.0;
  double den = 0.0;
  bool corrected = false;
  if (method == Method::kDependency) {
    bool any23 = false;
    for (auto s2 : cats[1])
      for (auto s3 : cats[2]) any23 = any23 || a(s2, s3) != 0.0;
    corrected = !any23;
    for (auto s1 : cats[0]) {
      for (auto s2 : cats[1]) {
        for (auto s3 : cats[2]) {
          const double w = weight(s1, s2, s3);
          const double a23 = corrected ? 1.0 : a(s2, s3);
          num += w * a(s1, s2) * a23;
          den += w * a(s1, s3) * a23;
        }
      }
    }
  } else {
    for (auto s1 : cats[0]) {
      for (auto s2 : cats[1]) {
        for (auto s3 : cats[2]) {
          const double w = weight(s1, s2, s3);
          num += w * a(s1, s2);
          den += w * a(s2, s3);
        }
      }
    }
  }
  return ratio_decision(num, den, tuned ? 2.0 : 1.0, corrected);
}

}  // namespace

BinaryParse BinaryParse::left_branching(std::size_t n) {
  BinaryParse p;
  p.leaves = n;
  for (std::size_t hi = n; hi-- > 1;) p.splits.push_back({0, hi, hi - 1});
  return p;
}

BinaryParse BinaryParse::right_branching(std::size_t n) {
  BinaryParse p;
  p.leaves = n;
  for (std::size_t lo = 0; lo + 1 < n; ++lo) p.splits.push_back({lo, n - 1, lo});
  return p;
}

bool BinaryParse::is_left_branching() const { return *this == left_branching(leaves); }

std::string BinaryParse::shape() const {
  return render_parse(*this, [](std::size_t i) { return std::to_string(i + 1); });
}

std::string BinaryParse::bracketed(std::span<const std::string> words) const {
  if (words.size() != leaves) throw ArgumentError("word count does not match parse");
  return render_parse(*this, [&](std::size_t i) { return words[i]; });
}

std::vector<BinaryParse> enumerate_parses(std::size_t n) {
  if (n == 0) throw ArgumentError("cannot enumerate parses of zero words");
  if (n > kMaxEnumerate) throw RangeError("too many words to enumerate parses");
  std::vector<BinaryParse> out;
  for (auto& s : gen(0, n - 1)) out.push_back({n, std::move(s)});
  return out;
}

std::uint64_t catalan(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> ModStructure::links() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] >= 0) out.emplace_back(i, static_cast<std::size_t>(parent[i]));
  }
  return out;
}

std::vector<std::vector<std::size_t>> ModStructure::children() const {
  std::vector<std::vector<std::size_t>> out(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] >= 0) out[static_cast<std::size_t>(parent[i])].push_back(i);
  }
  return out;
}

int ModStructure::root() const {
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] < 0) return static_cast<int>(i);
  }
  return -1;
}

void ModStructure::validate() const {
  const auto n = static_cast<int>(parent.size());
  if (n == 0) throw ArgumentError("empty structure");
  int roots = 0;
  for (int p : parent) {
    if (p < -1 || p >= n) throw ArgumentError("parent out of range");
    if (p == -1) ++roots;
  }
  if (roots != 1) throw ArgumentError("structure must have exactly one root");
  for (int i = 0; i < n; ++i) {
    int cur = i;
    for (int steps = 0; cur != -1; ++steps) {
      if (steps > n) throw ArgumentError("structure contains a cycle");
      cur = parent[static_cast<std::size_t>(cur)];
    }
  }
}

ModStructure mod_structure_of(const BinaryParse& p) {
  ModStructure m;
  m.parent.assign(p.leaves, -1);
  for (const auto& s : p.splits) m.parent.at(s.mid) = static_cast<int>(s.hi);
  return m;
}

BinaryParse parse_from_structure(const ModStructure& m) {
  m.validate();
  const std::size_t n = m.size();
  if (m.root() != static_cast<int>(n - 1)) {
    throw ArgumentError("structure root is not the final word");
  }
  BinaryParse p;
  p.leaves = n;
  std::function<void(std::size_t, std::size_t)> build = [&](std::size_t lo, std::size_t hi) {
    if (lo == hi) return;
    std::size_t split = hi;
    for (std::size_t i = lo; i < hi; ++i) {
      if (m.parent[i] == static_cast<int>(hi)) {
        split = i;
        break;
      }
    }
    if (split == hi) throw ArgumentError("structure has no parse consistent with word order");
    p.splits.push_back({lo, hi, split});
    build(lo, split);
    build(split + 1, hi);
  };
  build(0, n - 1);
  if (mod_structure_of(p) != m) {
    throw ArgumentError("structure has no parse consistent with word order");
  }
  return p;
}

std::uint64_t choice(const ModStructure& m) {
  std::uint64_t c = 1;
  for (const auto& kids : m.children()) {
    for (std::uint64_t k = 2; k <= kids.size(); ++k) c *= k;
  }
  return c;
}

double score_structure(const ModStructure& m, std::span<const std::string> words,
                       const AffinityMatrix& a, const Thesaurus& t, bool tuned) {
  m.validate();
  if (words.size() != m.size()) throw ArgumentError("word count does not match structure");
  const auto cats = resolve_all(words, t);
  return structure_sum(m, cats, a, t, tuned) / static_cast<double>(choice(m));
}

std::string_view to_string(Branching b) { return b == Branching::kRight ? "R" : "L"; }

std::string_view to_string(Evidence e) {
  switch (e) {
    case Evidence::kTwoSided: return "two-sided";
    case Evidence::kOneSided: return "one-sided";
    default: return "none";
  }
}

std::string_view to_string(Method m) {
  return m == Method::kAdjacency ? "adjacency" : "dependency";
}

Method parse_method(std::string_view text) {
  if (text == "dependency") return Method::kDependency;
  if (text == "adjacency") return Method::kAdjacency;
  throw ArgumentError("unknown method: " + std::string(text));
}

BracketDecision analyze3_dependency(const std::string& w1, const std::string& w2,
                                    const std::string& w3, const AffinityMatrix& a,
                                    const Thesaurus& t) {
  return analyze3_impl(w1, w2, w3, a, t, Method::kDependency, false);
}

BracketDecision analyze3_adjacency(const std::string& w1, const std::string& w2,
                                   const std::string& w3, const AffinityMatrix& a,
                                   const Thesaurus& t) {
  return analyze3_impl(w1, w2, w3, a, t, Method::kAdjacency, false);
}

BracketDecision analyze3_tuned(const std::string& w1, const std::string& w2,
                               const std::string& w3, const AffinityMatrix& a,
                               const Thesaurus& t, Method method) {
  return analyze3_impl(w1, w2, w3, a, t, method, true);
}

BracketDecision analyze3(const std::string& w1, const std::string& w2,
                         const std::string& w3, const AffinityMatrix& a,
                         const Thesaurus& t, Method method, bool tuned) {
  return analyze3_impl(w1, w2, w3, a, t, method, tuned);
}

NAnalysis analyze_n(std::span<const std::string> words, const AffinityMatrix& a,
                    const Thesaurus& t, bool tuned) {
  if (words.size() < 2) throw ArgumentError("need at least two words");
  if (words.size() > kMaxAnalyzeWords) {
    throw RangeError("compound too long for exhaustive analysis (max " +
                     std::to_string(kMaxAnalyzeWords) + " words)");
  }
  const auto cats = resolve_all(words, t);
  NAnalysis best;
  bool first = true;
  for (auto& parse : enumerate_parses(words.size())) {
    const auto m = mod_structure_of(parse);
    const double score = structure_sum(m, cats, a, t, tuned) / static_cast<double>(choice(m));
    if (first) {
      best.parse = std::move(parse);
      best.score = score;
      best.runner_up = 0.0;
      first = false;
    } else if (score > best.score) {
      best.runner_up = best.score;
      best.parse = std::move(parse);
      best.score = score;
    } else {
      best.runner_up = std::max(best.runner_up, score);
    }
  }
  best.guess = best.score == 0.0;
  return best;
}

}  // namespace nctk
