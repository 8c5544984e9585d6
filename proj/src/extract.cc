#include "nctk/extract.h"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <thread>

#include "nctk/error.h"
#include "text_util.h"

namespace nctk {
namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-' || c == '\'';
}

struct NounMask {
  std::vector<char> bits;
  NounMask(const std::vector<Token>& tokens, const SureNounSet& nouns) {
    bits.reserve(tokens.size());
    for (const auto& t : tokens) bits.push_back(t.is_word() && nouns.contains(t.text));
  }
  // Positions outside the stream are non-nouns.
  bool operator()(std::ptrdiff_t i) const {
    return i >= 0 && i < static_cast<std::ptrdiff_t>(bits.size()) && bits[i];
  }
};

void train_range(const std::vector<Token>& tokens, const NounMask& noun,
                 std::size_t lo, std::size_t hi, PairCounts& out) {
  for (std::size_t i = lo; i < hi; ++i) {
    const auto p = static_cast<std::ptrdiff_t>(i);
    if (noun(p) && noun(p + 1) && !noun(p - 1) && !noun(p + 2)) {
      out.add(tokens[i].text, tokens[i + 1].text);
    }
  }
}

void window_range(const std::vector<Token>& tokens, const NounMask& noun, int width,
                  std::size_t lo, std::size_t hi, PairCounts& out) {
  const std::size_t n = tokens.size();
  for (std::size_t i = lo; i < hi; ++i) {
    if (!noun(static_cast<std::ptrdiff_t>(i))) continue;
    const std::size_t last = std::min(n - 1, i + static_cast<std::size_t>(width) - 1);
    for (std::size_t j = i + 1; j <= last; ++j) {
      if (noun(static_cast<std::ptrdiff_t>(j))) out.add(tokens[i].text, tokens[j].text);
    }
  }
}

template <typename Fn>
PairCounts run_sharded(std::size_t n, unsigned shards, PairCounts proto, Fn fn) {
  if (shards == 0) shards = 1;
  shards = static_cast<unsigned>(std::min<std::size_t>(shards, std::max<std::size_t>(n, 1)));
  std::vector<PairCounts> parts(shards, proto);
  std::vector<std::thread> pool;
  for (unsigned s = 0; s < shards; ++s) {
    const std::size_t lo = n * s / shards;
    const std::size_t hi = n * (s + 1) / shards;
    pool.emplace_back([&, s, lo, hi] { fn(lo, hi, parts[s]); });
  }
  for (auto& t : pool) t.join();
  for (const auto& p : parts) proto.merge(p);
  return proto;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (detail::is_space(c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (is_word_char(c)) {
      while (j < text.size() && is_word_char(text[j])) ++j;
      out.push_back({std::string(text.substr(i, j - i)), TokenKind::kWord, std::nullopt});
    } else {
      while (j < text.size() && !is_word_char(text[j]) && !detail::is_space(text[j])) ++j;
      out.push_back(
          {std::string(text.substr(i, j - i)), TokenKind::kPunctuation, std::nullopt});
    }
    i = j;
  }
  return out;
}

std::vector<Token> tokenize_tagged(std::string_view text) {
  std::vector<Token> out;
  for (auto raw : detail::split_ws(text)) {
    auto slash = raw.rfind('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == raw.size()) {
      throw InputError("untagged token: '" + std::string(raw) + "'");
    }
    std::string word(raw.substr(0, slash));
    std::string tag(raw.substr(slash + 1));
    for (auto& ch : tag) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    const bool wordlike = std::all_of(word.begin(), word.end(), is_word_char);
    out.push_back({std::move(word), wordlike ? TokenKind::kWord : TokenKind::kPunctuation,
                   std::move(tag)});
  }
  return out;
}

void PairCounts::add(const std::string& modifier, const std::string& head, std::int64_t n) {
  if (n < 0) throw ArgumentError("negative pair count");
  if (n == 0) return;
  table_[{modifier, head}] += n;
  total_ += n;
}

std::int64_t PairCounts::count(std::string_view modifier, std::string_view head) const {
  auto it = table_.find({std::string(modifier), std::string(head)});
  return it == table_.end() ? 0 : it->second;
}

void PairCounts::merge(const PairCounts& other) {
  for (const auto& [k, v] : other.table_) table_[k] += v;
  total_ += other.total_;
}

PairCounts extract_train_pairs(const std::vector<Token>& tokens, const SureNounSet& nouns) {
  PairCounts out(PairScheme::kPattern, 2);
  if (tokens.size() < 2) return out;
  NounMask mask(tokens, nouns);
  train_range(tokens, mask, 0, tokens.size() - 1, out);
  return out;
}

PairCounts extract_train_pairs(const std::vector<Token>& tokens, const SureNounSet& nouns,
                               unsigned shards) {
  PairCounts proto(PairScheme::kPattern, 2);
  if (tokens.size() < 2) return proto;
  NounMask mask(tokens, nouns);
  return run_sharded(tokens.size() - 1, shards, proto,
                     [&](std::size_t lo, std::size_t hi, PairCounts& out) {
                       train_range(tokens, mask, lo, hi, out);
                     });
}

std::vector<Triple> extract_test_triples(const std::vector<Token>& tokens,
                                         const SureNounSet& nouns) {
  std::vector<Triple> out;
  if (tokens.size() < 3) return out;
  NounMask noun(tokens, nouns);
  for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
    const auto p = static_cast<std::ptrdiff_t>(i);
    if (noun(p) && noun(p + 1) && noun(p + 2) && !noun(p - 1) && !noun(p + 3)) {
      out.push_back({tokens[i].text, tokens[i + 1].text, tokens[i + 2].text});
    }
  }
  return out;
}

PairCounts extract_windowed_pairs(const std::vector<Token>& tokens,
                                  const SureNounSet& nouns, int width) {
  if (width < 2) throw ArgumentError("window width must be at least 2");
  PairCounts out(PairScheme::kWindow, width);
  NounMask mask(tokens, nouns);
  window_range(tokens, mask, width, 0, tokens.size(), out);
  return out;
}

PairCounts extract_windowed_pairs(const std::vector<Token>& tokens,
                                  const SureNounSet& nouns, int width, unsigned shards) {
  if (width < 2) throw ArgumentError("window width must be at least 2");
  PairCounts proto(PairScheme::kWindow, width);
  NounMask mask(tokens, nouns);
  return run_sharded(tokens.size(), shards, proto,
                     [&](std::size_t lo, std::size_t hi, PairCounts& out) {
                       window_range(tokens, mask, width, lo, hi, out);
                     });
}

PairCounts symmetrize(const PairCounts& counts) {
  PairCounts out(counts.scheme(), counts.window());
  for (const auto& [k, v] : counts.table()) {
    out.add(k.first, k.second, v);
    out.add(k.second, k.first, v);
  }
  out.set_symmetric(true);
  return out;
}

std::optional<std::size_t> preposition_index(std::string_view word) {
  for (std::size_t i = 0; i < kPrepositions.size(); ++i) {
    if (kPrepositions[i] == word) return i;
  }
  return std::nullopt;
}

bool is_noun_tag(std::string_view tag) {
  return tag == "nn" || tag == "nns" || tag == "nnp" || tag == "nnps" || tag == "vbg";
}

bool is_modifier_tag(std::string_view tag) {
  return tag == "jj" || tag == "dt" || tag == "cd" || tag == "prp$" || tag == "pos";
}

std::int64_t PrepObservations::head_total(std::string_view prep) const {
  std::int64_t t = 0;
  for (const auto& [k, v] : head_counts) {
    if (k.first == prep) t += v;
  }
  return t;
}

std::int64_t PrepObservations::object_total(std::string_view prep) const {
  std::int64_t t = 0;
  for (const auto& [k, v] : object_counts) {
    if (k.first == prep) t += v;
  }
  return t;
}

void PrepObservations::merge(const PrepObservations& other) {
  for (const auto& [k, v] : other.head_counts) head_counts[k] += v;
  for (const auto& [k, v] : other.object_counts) object_counts[k] += v;
}

PrepObservations extract_prep_observations(const std::vector<Token>& tagged) {
  for (const auto& t : tagged) {
    if (!t.tag || t.tag->empty()) throw InputError("untagged token: '" + t.text + "'");
  }
  PrepObservations obs;
  const std::size_t n = tagged.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!is_noun_tag(*tagged[i].tag)) continue;
    const auto& prep = tagged[i + 1].text;
    if (!preposition_index(prep)) continue;
    obs.head_counts[{prep, tagged[i].text}] += 1;

    std::size_t j = i + 2;
    int modifiers = 0;
    while (j < n && modifiers < 3 && is_modifier_tag(*tagged[j].tag)) {
      ++j;
      ++modifiers;
    }
    if (j < n && is_noun_tag(*tagged[j].tag)) {
      obs.object_counts[{prep, tagged[j].text}] += 1;
    }
  }
  return obs;
}

void write_pair_counts(std::ostream& out, const PairCounts& counts) {
  out << "#scheme=" << (counts.scheme() == PairScheme::kWindow ? "window" : "pattern") << '\n';
  out << "#window=" << counts.window() << '\n';
  out << "#symmetric=" << (counts.symmetric() ? 1 : 0) << '\n';
  for (const auto& [k, v] : counts.table()) {
    out << k.first << '\t' << k.second << '\t' << v << '\n';
  }
}

PairCounts read_pair_counts(std::istream& in) {
  PairScheme scheme = PairScheme::kPattern;
  int window = 2;
  bool symmetric = false;
  std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    if (line.front() == '#') {
      auto body = std::string_view(line).substr(1);
      auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      auto key = body.substr(0, eq);
      auto val = body.substr(eq + 1);
      if (key == "scheme") scheme = val == "window" ? PairScheme::kWindow : PairScheme::kPattern;
      if (key == "window") window = static_cast<int>(detail::parse_int(val, "window"));
      if (key == "symmetric") symmetric = val == "1";
      continue;
    }
    auto f = detail::split(line, '\t');
    if (f.size() != 3) {
      throw InputError("counts line " + std::to_string(line_no) + ": expected 3 fields");
    }
    auto c = detail::parse_int(f[2], "count");
    if (c < 0) throw InputError("counts line " + std::to_string(line_no) + ": negative count");
    rows.emplace_back(std::string(f[0]), std::string(f[1]), c);
  }
  PairCounts counts(scheme, window);
  for (auto& [a, b, c] : rows) counts.add(a, b, c);
  counts.set_symmetric(symmetric);
  return counts;
}

void write_triples(std::ostream& out, const std::vector<Triple>& triples) {
  for (const auto& t : triples) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_prep_observations(std::ostream& out, const PrepObservations& obs) {
  std::map<std::pair<std::string, std::string>, std::pair<std::int64_t, std::int64_t>> rows;
  for (const auto& [k, v] : obs.head_counts) rows[k].first = v;
  for (const auto& [k, v] : obs.object_counts) rows[k].second = v;
  for (const auto& [k, v] : rows) {
    out << k.first << '\t' << k.second << '\t' << v.first << '\t' << v.second << '\n';
  }
}

PrepObservations read_prep_observations(std::istream& in) {
  PrepObservations obs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto f = detail::split(line, '\t');
    if (f.size() != 4) {
      throw InputError("observations line " + std::to_string(line_no) + ": expected 4 fields");
    }
    std::string prep(f[0]);
    if (!preposition_index(prep)) {
      throw InputError("observations line " + std::to_string(line_no) +
                       ": unknown preposition '" + prep + "'");
    }
    auto h = detail::parse_int(f[2], "head count");
    auto o = detail::parse_int(f[3], "object count");
    if (h < 0 || o < 0) throw InputError("negative observation count");
    if (h > 0) obs.head_counts[{prep, std::string(f[1])}] += h;
    if (o > 0) obs.object_counts[{prep, std::string(f[1])}] += o;
  }
  return obs;
}

}  // namespace nctk
