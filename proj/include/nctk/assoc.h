#ifndef NCTK_ASSOC_H_
#define NCTK_ASSOC_H_

// Probability estimation from extracted counts: the bracketing affinity
// matrix and the per-preposition head/object concept distributions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nctk/extract.h"
#include "nctk/lexres.h"

namespace nctk {

enum class Estimator { kMle, kEle };

std::string_view to_string(Estimator e);
Estimator parse_estimator(std::string_view text);

// Pairs or observations discarded because a word had no category.
struct DropTally {
  std::size_t events = 0;
  std::int64_t weight = 0;
};

// A[i][j] = Pr(t_i -> t_j | t_j): the probability that, given category j is
// modified, the modifier belongs to category i. Columns sum to one when their
// normalizer is positive and are zero otherwise.
//
// Storage is dense up to kDenseLimit categories and hashed beyond.
class AffinityMatrix {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  AffinityMatrix() = default;
  AffinityMatrix(std::vector<CategoryId> ids, SchemeMode mode);

  std::size_t size() const { return ids_.size(); }
  bool dense() const { return dense_; }
  SchemeMode mode() const { return mode_; }
  const std::vector<CategoryId>& ids() const { return ids_; }

  double operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double value);

  // Column normalizer from estimation; empty for matrices built by hand or
  // read from disk.
  const std::vector<double>& normalizers() const { return eta_; }
  const DropTally& dropped() const { return dropped_; }

  // Calls fn(i, j, value) for every nonzero cell, row-major.
  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (dense_) {
      const std::size_t k = size();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (double v = values_[i * k + j]; v != 0.0) fn(i, j, v);
    } else {
      std::vector<std::pair<std::uint64_t, double>> cells(sparse_.begin(), sparse_.end());
      std::sort(cells.begin(), cells.end());
      for (const auto& [key, v] : cells) fn(key / size(), key % size(), v);
    }
  }

  // Reorders the matrix onto the category indices of t. Every id must exist
  // in t; extra categories in t get empty rows and columns.
  AffinityMatrix remapped(const Thesaurus& t) const;

 private:
  friend AffinityMatrix estimate_affinities(const PairCounts&, const Thesaurus&);

  std::vector<CategoryId> ids_;
  SchemeMode mode_ = SchemeMode::kConceptual;
  bool dense_ = true;
  std::vector<double> values_;
  std::unordered_map<std::uint64_t, double> sparse_;
  std::vector<double> eta_;
  DropTally dropped_;
};

// values[i][j] = sum over w_i in t_i, w_j in t_j of
//   count(w_i, w_j) / (ambig(w_i) ambig(w_j)), divided by the column total.
// Words are mapped through plural normalization; unmappable pairs are
// dropped and tallied.
AffinityMatrix estimate_affinities(const PairCounts& pairs, const Thesaurus& t);

void write_affinities(std::ostream& out, const AffinityMatrix& a);
// Indices follow the #concept order of the file.
AffinityMatrix read_affinities(std::istream& in);

// Per-preposition concept distributions. head[p][c] = Pr(c | p) for concepts
// modified by p, object[p][c] for concepts governed by p.
class ParaphraseModel {
 public:
  static constexpr std::size_t kPreps = kPrepositions.size();

  ParaphraseModel() = default;
  ParaphraseModel(std::vector<CategoryId> ids, SchemeMode mode, Estimator estimator);

  std::size_t concept_count() const { return ids_.size(); }
  const std::vector<CategoryId>& ids() const { return ids_; }
  SchemeMode mode() const { return mode_; }
  Estimator estimator() const { return estimator_; }

  double head(std::size_t prep, std::size_t c) const { return head_[prep][c]; }
  double object(std::size_t prep, std::size_t c) const { return object_[prep][c]; }
  void set_head(std::size_t prep, std::size_t c, double v) { head_[prep].at(c) = v; }
  void set_object(std::size_t prep, std::size_t c, double v) { object_[prep].at(c) = v; }

  const DropTally& dropped() const { return dropped_; }

  ParaphraseModel remapped(const Thesaurus& t) const;

 private:
  friend ParaphraseModel estimate_paraphrase(const PrepObservations&, const Thesaurus&,
                                             Estimator);

  std::vector<CategoryId> ids_;
  SchemeMode mode_ = SchemeMode::kConceptual;
  Estimator estimator_ = Estimator::kMle;
  std::array<std::vector<double>, kPreps> head_;
  std::array<std::vector<double>, kPreps> object_;
  DropTally dropped_;
};

// Pr(c | r) = (sum over w in c of count(w, r) / ambig(w)) / eta_r.
ParaphraseModel estimate_paraphrase_mle(const PrepObservations& obs, const Thesaurus& t);

// Pr(c | r) = (1/2 + weighted count) / (|C|/2 + eta_r).
ParaphraseModel estimate_paraphrase_ele(const PrepObservations& obs, const Thesaurus& t);

ParaphraseModel estimate_paraphrase(const PrepObservations& obs, const Thesaurus& t,
                                    Estimator estimator);

void write_paraphrase_model(std::ostream& out, const ParaphraseModel& m);
ParaphraseModel read_paraphrase_model(std::istream& in);

}  // namespace nctk

#endif  // NCTK_ASSOC_H_
