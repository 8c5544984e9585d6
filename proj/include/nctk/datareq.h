#ifndef NCTK_DATAREQ_H_
#define NCTK_DATAREQ_H_

// Data-requirements mathematics for a mode-based learner: the half-binomial
// function, accuracy bounds, the exact expected accuracy and a Monte Carlo
// simulator of learning curves.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace nctk {

// HB(p, n): probability that the majority of n Bernoulli(p) trials succeed,
// counting an exact tie as one half. Uses the sum form
//   HB(p, n) = 1/2 + sum_{i=0}^{ceil(n/2)-1} (p - 1/2) C(2i, i) (p(1-p))^i.
double half_binomial(double p, std::uint64_t n);

// Literal upper tail plus half the midpoint term for even n.
double half_binomial_direct(double p, std::uint64_t n);

// Table of HB(p, 0..n) that grows on demand.
class HalfBinomialTable {
 public:
  explicit HalfBinomialTable(double p);
  double operator()(std::uint64_t n);
  double p() const { return p_; }

 private:
  double p_;
  double pq_;
  double term_;               // next term of the sum form
  std::uint64_t next_i_ = 0;  // index of term_
  std::vector<double> partial_;  // partial_[k] = 1/2 plus the first k terms
};

// e^{-m/bins}: bound on the probability that a test input lands in a bin with
// no training data.
double empty_bin_bound(double m, double bins);

struct ErrorFactor {
  double u = 0.0;
  // u / (1 - q). At q = 1 this is the limit value.
  double ratio = 0.0;
};

// U_n(q) = 1 - q HB(q, n): error rate, relative to optimal, of a mode
// predictor trained on n instances of a bin whose optimal value has
// probability q.
ErrorFactor nonempty_error_factor(double q, std::uint64_t n);

// (1 - e^{-m/B})(2p - 1) + e^{-m/B} / |V|.
double accuracy_bound_old(double m, double bins, unsigned value_count, double p);

// Largest m accepted by g_exact.
inline constexpr std::uint64_t kGExactMaxM = 100'000'000;

// G(m, r, p) = sum_n binomial(n; m, r) HB(p, n), summed outward from the
// mode until relative terms fall below 1e-25.
double g_exact(std::uint64_t m, double r, double p);
double g_exact(std::uint64_t m, double r, HalfBinomialTable& hb);

struct GSchedule {
  std::uint64_t g = 0;
  std::vector<std::uint64_t> k;  // k[j] for j = 0..g
};

// k_j = min(m, max(2j, ceil(mr + 12 sqrt(mr(1-r)) + 40))), g = min(floor(k_0/2),
// floor(m/2)). Beyond these limits the binomial tail is negligible.
GSchedule default_g_schedule(std::uint64_t m, double r);

// Truncated double sum
//   sum_{j=0}^{g} sum_{n=2j}^{k_j} w(n, j) binomial(n; m, r) binomial(j; n, 1-p)
// with w = 1/2 at n = 2j and 1 elsewhere. Every term is a term of G, so this
// never exceeds G. Throws ArgumentError unless g <= floor(m/2),
// k.size() == g + 1 and 2j <= k_j <= m.
double g_lower(std::uint64_t m, double r, double p, const GSchedule& schedule);
double g_lower(std::uint64_t m, double r, double p);

// The same truncation with m!/(m-n)! replaced by (m - k_j)^n, i.e. inner
// terms C(n, j) x_j^n / n! with x_j = r p (m - k_j) / (1 - r). Cheaper and
// looser. Requires r < 1.
double g_lower_factorial_bound(std::uint64_t m, double r, double p,
                               const GSchedule& schedule);

// Bins with probabilities p_i, per-bin optimal value probabilities v_i (or a
// single shared value) and the number of output values.
struct BinWorld {
  std::vector<double> bin_probs;
  std::vector<double> optimal_probs;
  unsigned value_count = 2;

  static BinWorld uniform(std::size_t bins, double p);
  static BinWorld zipf(std::size_t bins, double p);

  double optimal(std::size_t i) const {
    return optimal_probs.size() == 1 ? optimal_probs[0] : optimal_probs[i];
  }
  // Throws ArgumentError when probabilities do not sum to one or a v_i lies
  // outside [1/|V|, 1].
  void validate() const;
};

// alpha = 1 - sum p_i v_i + sum (2 v_i - 1) p_i G(m, p_i, v_i).
// Only two-valued worlds are covered (UnsupportedModelError otherwise).
double expected_accuracy(const BinWorld& world, std::uint64_t m);

// Uniform bins with a shared optimal probability: 1 - p + (2p - 1) G(m, 1/B, p).
double expected_accuracy_uniform(std::uint64_t m, std::size_t bins, double p);

// 1.6 m / ln(0.56 B)^2: approximate expected number of training instances in
// the bin of a test input under Zipfian bins.
double zipf_expected_relevant(double m, double bins);

enum class BinDistribution { kUniform, kZipf };

std::string_view to_string(BinDistribution d);
BinDistribution parse_bin_distribution(std::string_view text);

struct SimConfig {
  std::size_t bins = 10000;
  BinDistribution distribution = BinDistribution::kUniform;
  double p = 0.9;
  std::size_t test_instances = 1000;
  std::size_t repetitions = 30;
  double t_multiplier = 2.045;
  std::vector<std::uint64_t> m_schedule = {0,     1000,  2000,  3000,  5000,
                                           10000, 20000, 30000, 50000, 100000};
  std::uint64_t seed = 1;
  unsigned threads = 1;

  void validate() const;
};

struct LearningCurvePoint {
  std::uint64_t m = 0;
  double mean_accuracy = 0.0;
  double ci_halfwidth = 0.0;
  double empty_bin_fraction = 0.0;
  std::vector<double> accuracies;  // one per repetition
};

// Trains a fresh mode-based learner per (m, repetition) and measures it on
// fresh test draws. Empty bins and tied bins predict a value drawn uniformly
// once at training time. Output depends only on the config, not on the
// thread count.
std::vector<LearningCurvePoint> simulate_mode_learner(const SimConfig& cfg);

}  // namespace nctk

#endif  // NCTK_DATAREQ_H_
