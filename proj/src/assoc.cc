#include "nctk/assoc.h"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <ostream>

#include "nctk/error.h"
#include "text_util.h"

namespace nctk {

std::string_view to_string(Estimator e) { return e == Estimator::kEle ? "ele" : "mle"; }

Estimator parse_estimator(std::string_view text) {
  if (text == "mle") return Estimator::kMle;
  if (text == "ele") return Estimator::kEle;
  throw ArgumentError("unknown estimator: " + std::string(text));
}

AffinityMatrix::AffinityMatrix(std::vector<CategoryId> ids, SchemeMode mode)
    : ids_(std::move(ids)), mode_(mode), dense_(ids_.size() <= kDenseLimit) {
  if (dense_) values_.assign(ids_.size() * ids_.size(), 0.0);
}

double AffinityMatrix::operator()(std::size_t i, std::size_t j) const {
  const std::size_t k = size();
  if (i >= k || j >= k) throw ArgumentError("affinity index out of range");
  if (dense_) return values_[i * k + j];
  auto it = sparse_.find(static_cast<std::uint64_t>(i) * k + j);
  return it == sparse_.end() ? 0.0 : it->second;
}

void AffinityMatrix::set(std::size_t i, std::size_t j, double value) {
  const std::size_t k = size();
  if (i >= k || j >= k) throw ArgumentError("affinity index out of range");
  if (value < 0.0) throw ArgumentError("negative affinity");
  if (dense_) {
    values_[i * k + j] = value;
  } else if (value == 0.0) {
    sparse_.erase(static_cast<std::uint64_t>(i) * k + j);
  } else {
    sparse_[static_cast<std::uint64_t>(i) * k + j] = value;
  }
}

AffinityMatrix AffinityMatrix::remapped(const Thesaurus& t) const {
  std::vector<CategoryId> ids;
  ids.reserve(t.category_count());
  for (const auto& c : t.categories()) ids.push_back(c.id);
  std::vector<std::size_t> map(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto idx = t.index_of(ids_[i]);
    if (!idx) throw InputError("affinity concept not in thesaurus: " + ids_[i]);
    map[i] = *idx;
  }
  AffinityMatrix out(std::move(ids), mode_);
  for_each_nonzero([&](std::size_t i, std::size_t j, double v) { out.set(map[i], map[j], v); });
  if (!eta_.empty()) {
    out.eta_.assign(out.size(), 0.0);
    for (std::size_t j = 0; j < size(); ++j) out.eta_[map[j]] = eta_[j];
  }
  out.dropped_ = dropped_;
  return out;
}

AffinityMatrix estimate_affinities(const PairCounts& pairs, const Thesaurus& t) {
  std::vector<CategoryId> ids;
  ids.reserve(t.category_count());
  for (const auto& c : t.categories()) ids.push_back(c.id);
  AffinityMatrix a(std::move(ids), t.mode());
  const std::size_t k = a.size();

  // Raw fractional counts first, normalized once accumulation is complete.
  std::unordered_map<std::uint64_t, double> raw;
  for (const auto& [key, count] : pairs.table()) {
    auto c1 = t.resolve(key.first);
    auto c2 = t.resolve(key.second);
    if (c1.empty() || c2.empty()) {
      ++a.dropped_.events;
      a.dropped_.weight += count;
      continue;
    }
    const double share = static_cast<double>(count) /
                          (static_cast<double>(c1.size()) * static_cast<double>(c2.size()));
    for (auto i : c1)
      for (auto j : c2) raw[static_cast<std::uint64_t>(i) * k + j] += share;
  }

  a.eta_.assign(k, 0.0);
  std::vector<std::pair<std::uint64_t, double>> cells(raw.begin(), raw.end());
  std::sort(cells.begin(), cells.end());
  for (const auto& [key, v] : cells) a.eta_[key % k] += v;
  for (const auto& [key, v] : cells) a.set(key / k, key % k, v / a.eta_[key % k]);
  return a;
}

namespace {

struct ModelHeader {
  std::map<std::string, std::string> keys;
  std::vector<CategoryId> concepts;
  std::vector<std::vector<std::string_view>> rows;
};

ModelHeader read_model_text(std::istream& in, std::string& storage) {
  std::ostringstream ss;
  ss << in.rdbuf();
  storage = ss.str();
  ModelHeader h;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(storage)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (line.front() == '#') {
      auto body = line.substr(1);
      auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      std::string key(body.substr(0, eq));
      std::string val(body.substr(eq + 1));
      if (key == "concept") {
        h.concepts.push_back(std::move(val));
      } else {
        h.keys[key] = std::move(val);
      }
      continue;
    }
    h.rows.push_back(detail::split(line, '\t'));
  }
  return h;
}

std::unordered_map<std::string, std::size_t> index_concepts(const std::vector<CategoryId>& ids) {
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!idx.emplace(ids[i], i).second) throw InputError("duplicate concept id: " + ids[i]);
  }
  return idx;
}

std::size_t lookup_concept(const std::unordered_map<std::string, std::size_t>& idx,
                           std::string_view id) {
  auto it = idx.find(std::string(id));
  if (it == idx.end()) throw InputError("undeclared concept: " + std::string(id));
  return it->second;
}

void check_count(const ModelHeader& h) {
  auto it = h.keys.find("categories");
  if (it == h.keys.end()) throw InputError("model file lacks #categories");
  if (detail::parse_int(it->second, "categories") !=
      static_cast<long long>(h.concepts.size())) {
    throw InputError("#categories does not match #concept lines");
  }
}

SchemeMode header_scheme(const ModelHeader& h) {
  auto it = h.keys.find("scheme");
  if (it == h.keys.end()) throw InputError("model file lacks #scheme");
  try {
    return parse_scheme_mode(it->second);
  } catch (const ArgumentError& e) {
    throw InputError(e.what());
  }
}

}  // namespace

void write_affinities(std::ostream& out, const AffinityMatrix& a) {
  out << "#model=affinity\n";
  out << "#scheme=" << to_string(a.mode()) << '\n';
  out << "#estimator=mle\n";
  out << "#categories=" << a.size() << '\n';
  for (const auto& id : a.ids()) out << "#concept=" << id << '\n';
  a.for_each_nonzero([&](std::size_t i, std::size_t j, double v) {
    out << a.ids()[i] << '\t' << a.ids()[j] << '\t' << detail::format_double(v) << '\n';
  });
}

AffinityMatrix read_affinities(std::istream& in) {
  std::string storage;
  auto h = read_model_text(in, storage);
  if (auto it = h.keys.find("model"); it != h.keys.end() && it->second != "affinity") {
    throw InputError("not an affinity model: " + it->second);
  }
  check_count(h);
  auto idx = index_concepts(h.concepts);
  AffinityMatrix a(h.concepts, header_scheme(h));
  for (const auto& f : h.rows) {
    if (f.size() != 3) throw InputError("affinity row: expected 3 fields");
    double v = detail::parse_double(f[2], "affinity");
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("affinity outside [0,1]");
    a.set(lookup_concept(idx, f[0]), lookup_concept(idx, f[1]), v);
  }
  return a;
}

ParaphraseModel::ParaphraseModel(std::vector<CategoryId> ids, SchemeMode mode,
                                 Estimator estimator)
    : ids_(std::move(ids)), mode_(mode), estimator_(estimator) {
  for (auto& row : head_) row.assign(ids_.size(), 0.0);
  for (auto& row : object_) row.assign(ids_.size(), 0.0);
}

ParaphraseModel ParaphraseModel::remapped(const Thesaurus& t) const {
  std::vector<CategoryId> ids;
  for (const auto& c : t.categories()) ids.push_back(c.id);
  ParaphraseModel out(std::move(ids), mode_, estimator_);
  for (std::size_t c = 0; c < concept_count(); ++c) {
    auto idx = t.index_of(ids_[c]);
    if (!idx) throw InputError("paraphrase concept not in thesaurus: " + ids_[c]);
    for (std::size_t p = 0; p < kPreps; ++p) {
      out.head_[p][*idx] = head_[p][c];
      out.object_[p][*idx] = object_[p][c];
    }
  }
  out.dropped_ = dropped_;
  return out;
}

ParaphraseModel estimate_paraphrase(const PrepObservations& obs, const Thesaurus& t,
                                    Estimator estimator) {
  std::vector<CategoryId> ids;
  for (const auto& c : t.categories()) ids.push_back(c.id);
  ParaphraseModel m(std::move(ids), t.mode(), estimator);
  const std::size_t k = m.concept_count();

  auto accumulate = [&](const auto& table, auto& dest) {
    std::array<double, ParaphraseModel::kPreps> eta{};
    for (const auto& [key, count] : table) {
      auto p = preposition_index(key.first);
      if (!p) continue;
      auto cats = t.resolve(key.second);
      if (cats.empty()) {
        ++m.dropped_.events;
        m.dropped_.weight += count;
        continue;
      }
      const double share = static_cast<double>(count) / static_cast<double>(cats.size());
      for (auto c : cats) dest[*p][c] += share;
      eta[*p] += static_cast<double>(count);
    }
    for (std::size_t p = 0; p < ParaphraseModel::kPreps; ++p) {
      if (estimator == Estimator::kEle) {
        const double denom = static_cast<double>(k) / 2.0 + eta[p];
        for (auto& v : dest[p]) v = (0.5 + v) / denom;
      } else if (eta[p] > 0.0) {
        for (auto& v : dest[p]) v /= eta[p];
      }
    }
  };
  accumulate(obs.head_counts, m.head_);
  accumulate(obs.object_counts, m.object_);
  return m;
}

ParaphraseModel estimate_paraphrase_mle(const PrepObservations& obs, const Thesaurus& t) {
  return estimate_paraphrase(obs, t, Estimator::kMle);
}

ParaphraseModel estimate_paraphrase_ele(const PrepObservations& obs, const Thesaurus& t) {
  return estimate_paraphrase(obs, t, Estimator::kEle);
}

void write_paraphrase_model(std::ostream& out, const ParaphraseModel& m) {
  out << "#model=paraphrase\n";
  out << "#scheme=" << to_string(m.mode()) << '\n';
  out << "#estimator=" << to_string(m.estimator()) << '\n';
  out << "#categories=" << m.concept_count() << '\n';
  for (const auto& id : m.ids()) out << "#concept=" << id << '\n';
  for (std::size_t p = 0; p < ParaphraseModel::kPreps; ++p) {
    for (std::size_t c = 0; c < m.concept_count(); ++c) {
      const double h = m.head(p, c);
      const double o = m.object(p, c);
      if (h == 0.0 && o == 0.0) continue;
      out << kPrepositions[p] << '\t' << m.ids()[c] << '\t' << detail::format_double(h)
          << '\t' << detail::format_double(o) << '\n';
    }
  }
}

ParaphraseModel read_paraphrase_model(std::istream& in) {
  std::string storage;
  auto h = read_model_text(in, storage);
  if (auto it = h.keys.find("model"); it != h.keys.end() && it->second != "paraphrase") {
    throw InputError("not a paraphrase model: " + it->second);
  }
  check_count(h);
  auto est_it = h.keys.find("estimator");
  if (est_it == h.keys.end()) throw InputError("model file lacks #estimator");
  Estimator est;
  try {
    est = parse_estimator(est_it->second);
  } catch (const ArgumentError& e) {
    throw InputError(e.what());
  }
  auto idx = index_concepts(h.concepts);
  ParaphraseModel m(h.concepts, header_scheme(h), est);
  for (const auto& f : h.rows) {
    if (f.size() != 4) throw InputError("paraphrase row: expected 4 fields");
    auto p = preposition_index(f[0]);
    if (!p) throw InputError("unknown preposition: " + std::string(f[0]));
    auto c = lookup_concept(idx, f[1]);
    m.set_head(*p, c, detail::parse_double(f[2], "head probability"));
    m.set_object(*p, c, detail::parse_double(f[3], "object probability"));
  }
  return m;
}

}  // namespace nctk
