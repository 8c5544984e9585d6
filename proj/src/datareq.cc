#include "nctk/datareq.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "nctk/error.h"

namespace nctk {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError(std::string(what) + " must lie in [0, 1]");
  }
}

std::uint64_t ceil_half(std::uint64_t n) { return (n + 1) / 2; }

}  // namespace

double half_binomial(double p, std::uint64_t n) {
  check_probability(p, "p");
  const double pq = p * (1.0 - p);
  double term = p - 0.5;
  double sum = 0.5;
  const std::uint64_t terms = ceil_half(n);
  for (std::uint64_t i = 0; i < terms; ++i) {
    sum += term;
    if (term == 0.0) break;
    term *= 2.0 * static_cast<double>(2 * i + 1) / static_cast<double>(i + 1) * pq;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double half_binomial_direct(double p, std::uint64_t n) {
  check_probability(p, "p");
  if (n == 0) return 0.5;
  if (p == 0.0 || p == 1.0) return p;
  const double q = 1.0 - p;
  const double dn = static_cast<double>(n);
  if (n <= 60) {
    auto pmf = [&](std::uint64_t i) {
      double c = 1.0;
      for (std::uint64_t k = 0; k < i; ++k) {
        c = c * static_cast<double>(n - k) / static_cast<double>(k + 1);
      }
      const double di = static_cast<double>(i);
      return c * std::pow(p, di) * std::pow(q, dn - di);
    };
    double sum = 0.0;
    for (std::uint64_t i = n / 2 + 1; i <= n; ++i) sum += pmf(i);
    if (n % 2 == 0) sum += 0.5 * pmf(n / 2);
    return sum;
  }
  // Weights relative to the mode, then normalized: avoids log-factorial
  // rounding that grows with n.
  const auto mode = std::min<std::uint64_t>(n, static_cast<std::uint64_t>((dn + 1.0) * p));
  auto weight_of = [&](std::uint64_t i) -> double {
    if (2 * i > n) return 1.0;
    if (2 * i == n) return 0.5;
    return 0.0;
  };
  double total = 1.0, tail = weight_of(mode);
  double w = 1.0;
  for (std::uint64_t i = mode; i < n && w > 0.0; ++i) {
    w *= static_cast<double>(n - i) / static_cast<double>(i + 1) * (p / q);
    total += w;
    tail += w * weight_of(i + 1);
  }
  w = 1.0;
  for (std::uint64_t i = mode; i > 0 && w > 0.0; --i) {
    w *= static_cast<double>(i) / static_cast<double>(n - i + 1) * (q / p);
    total += w;
    tail += w * weight_of(i - 1);
  }
  return tail / total;
}

HalfBinomialTable::HalfBinomialTable(double p)
    : p_(p), pq_(p * (1.0 - p)), term_(p - 0.5), partial_{0.5} {
  check_probability(p, "p");
}

double HalfBinomialTable::operator()(std::uint64_t n) {
  const std::uint64_t k = ceil_half(n);
  while (partial_.size() <= k) {
    partial_.push_back(partial_.back() + term_);
    term_ *= 2.0 * static_cast<double>(2 * next_i_ + 1) / static_cast<double>(next_i_ + 1) * pq_;
    ++next_i_;
  }
  return std::clamp(partial_[k], 0.0, 1.0);
}

double empty_bin_bound(double m, double bins) {
  if (!(m >= 0.0)) throw ArgumentError("m must be nonnegative");
  if (!(bins >= 1.0)) throw ArgumentError("need at least one bin");
  return std::exp(-m / bins);
}

ErrorFactor nonempty_error_factor(double q, std::uint64_t n) {
  if (!(q > 0.0 && q <= 1.0)) throw ArgumentError("q must lie in (0, 1]");
  if (n < 1) throw ArgumentError("n must be at least 1");
  ErrorFactor f;
  f.u = 1.0 - q * half_binomial_direct(q, n);
  if (q == 1.0) {
    // U_n(q) / (1 - q) -> 1 + q for n <= 2 and -> 1 for n >= 3.
    f.ratio = n <= 2 ? 2.0 : 1.0;
  } else {
    f.ratio = f.u / (1.0 - q);
  }
  return f;
}

double accuracy_bound_old(double m, double bins, unsigned value_count, double p) {
  if (value_count < 2) throw ArgumentError("need at least two values");
  const double floor_p = 1.0 / static_cast<double>(value_count);
  if (!(p >= floor_p && p <= 1.0)) throw ArgumentError("p must lie in [1/|V|, 1]");
  const double e = empty_bin_bound(m, bins);
  return (1.0 - e) * (2.0 * p - 1.0) + e * floor_p;
}

double g_exact(std::uint64_t m, double r, HalfBinomialTable& hb) {
  check_probability(r, "r");
  if (m > kGExactMaxM) {
    throw RangeError("m too large for exact G; use g_lower");
  }
  if (r == 0.0 || m == 0) return hb(0);
  if (r == 1.0) return hb(m);

  // Weights relative to the mode; normalizing by their sum removes the need
  // for the binomial coefficient itself.
  constexpr double kCut = 1e-25;
  const double odds = r / (1.0 - r);
  const double dm = static_cast<double>(m);
  const auto mode = std::min<std::uint64_t>(m, static_cast<std::uint64_t>(std::floor((dm + 1.0) * r)));

  double mass = 1.0;
  double acc = hb(mode);
  double w = 1.0;
  for (std::uint64_t n = mode; n < m; ++n) {
    w *= static_cast<double>(m - n) / static_cast<double>(n + 1) * odds;
    if (w < kCut) break;
    mass += w;
    acc += w * hb(n + 1);
  }
  w = 1.0;
  for (std::uint64_t n = mode; n > 0; --n) {
    w *= static_cast<double>(n) / (static_cast<double>(m - n + 1) * odds);
    if (w < kCut) break;
    mass += w;
    acc += w * hb(n - 1);
  }
  return acc / mass;
}

double g_exact(std::uint64_t m, double r, double p) {
  HalfBinomialTable hb(p);
  return g_exact(m, r, hb);
}

GSchedule default_g_schedule(std::uint64_t m, double r) {
  check_probability(r, "r");
  const double dm = static_cast<double>(m);
  const double reach = std::ceil(dm * r + 12.0 * std::sqrt(dm * r * (1.0 - r)) + 40.0);
  const std::uint64_t k0 = std::min<std::uint64_t>(m, static_cast<std::uint64_t>(reach));
  GSchedule s;
  s.g = std::min(k0 / 2, m / 2);
  s.k.reserve(s.g + 1);
  for (std::uint64_t j = 0; j <= s.g; ++j) s.k.push_back(std::max<std::uint64_t>(k0, 2 * j));
  return s;
}

namespace {

void validate_schedule(std::uint64_t m, const GSchedule& s) {
  if (s.g > m / 2) throw ArgumentError("g exceeds floor(m/2)");
  if (s.k.size() != s.g + 1) throw ArgumentError("k schedule must have g + 1 entries");
  for (std::uint64_t j = 0; j <= s.g; ++j) {
    if (s.k[j] < 2 * j || s.k[j] > m) throw ArgumentError("k_j must satisfy 2j <= k_j <= m");
  }
}

// Terms are accumulated in extended precision: a full schedule reproduces G
// itself, and double rounding of the log factorials is enough to push the sum
// past G by ~1e-12.
using Wide = long double;

Wide xlogy_wide(Wide n, Wide y) { return n == 0 ? 0 : n * std::log(y); }

// log n! for n = 0..top.
std::vector<Wide> log_factorials(std::uint64_t top) {
  std::vector<Wide> lf(top + 1, 0);
  for (std::uint64_t n = 1; n <= top; ++n) lf[n] = lf[n - 1] + std::log(static_cast<Wide>(n));
  return lf;
}

template <typename LogOuter>
double truncated_double_sum(const GSchedule& s, double p, const std::vector<Wide>& lf,
                            LogOuter log_outer) {
  const Wide lp = p;
  const Wide lq = 1 - lp;
  Wide total = 0;
  for (std::uint64_t j = 0; j <= s.g; ++j) {
    const Wide dj = static_cast<Wide>(j);
    for (std::uint64_t n = 2 * j; n <= s.k[j]; ++n) {
      const Wide outer = log_outer(j, n);
      if (!(outer > -745)) continue;
      const Wide dn = static_cast<Wide>(n);
      const Wide lt = outer + lf[n] - lf[j] - lf[n - j] + xlogy_wide(dj, lq) +
                      xlogy_wide(dn - dj, lp);
      if (!(lt > -745)) continue;
      total += (n == 2 * j ? Wide(0.5) : Wide(1)) * std::exp(lt);
    }
  }
  return static_cast<double>(total);
}

}  // namespace

double g_lower(std::uint64_t m, double r, double p, const GSchedule& schedule) {
  check_probability(r, "r");
  check_probability(p, "p");
  validate_schedule(m, schedule);
  const std::uint64_t top = *std::max_element(schedule.k.begin(), schedule.k.end());
  const auto lf = log_factorials(top);
  // log of binomial(n; m, r), with m!/(m-n)! accumulated term by term.
  std::vector<Wide> lb(top + 1);
  const Wide dm = static_cast<Wide>(m);
  const Wide wr = r;
  Wide lff = 0;
  for (std::uint64_t n = 0; n <= top; ++n) {
    if (n > 0) lff += std::log(dm - static_cast<Wide>(n) + 1);
    const Wide dn = static_cast<Wide>(n);
    lb[n] = lff - lf[n] + xlogy_wide(dn, wr) + xlogy_wide(dm - dn, 1 - wr);
  }
  // For each n the inner binomial(j; n, 1-p) terms follow by ratio from p^n.
  const Wide wp = p;
  const Wide odds = p > 0.0 ? (1 - wp) / wp : 0;
  Wide total = 0;
  for (std::uint64_t n = 0; n <= top; ++n) {
    if (!(lb[n] > -745)) continue;
    const Wide dn = static_cast<Wide>(n);
    const Wide lpn = xlogy_wide(dn, wp);
    if (!(lpn > -11000)) {
      for (std::uint64_t j = 0; j <= schedule.g && 2 * j <= n; ++j) {
        if (n > schedule.k[j]) continue;
        const Wide dj = static_cast<Wide>(j);
        const Wide lt = lb[n] + lf[n] - lf[j] - lf[n - j] + xlogy_wide(dj, 1 - wp) +
                        xlogy_wide(dn - dj, wp);
        if (lt > -745) total += (n == 2 * j ? Wide(0.5) : Wide(1)) * std::exp(lt);
      }
      continue;
    }
    const Wide outer = std::exp(lb[n]);
    Wide inner = std::exp(lpn);
    for (std::uint64_t j = 0; j <= schedule.g && 2 * j <= n; ++j) {
      if (n <= schedule.k[j]) total += (n == 2 * j ? Wide(0.5) : Wide(1)) * outer * inner;
      inner *= static_cast<Wide>(n - j) / static_cast<Wide>(j + 1) * odds;
    }
  }
  return static_cast<double>(total);
}

double g_lower(std::uint64_t m, double r, double p) {
  return g_lower(m, r, p, default_g_schedule(m, r));
}

double g_lower_factorial_bound(std::uint64_t m, double r, double p,
                               const GSchedule& schedule) {
  check_probability(r, "r");
  check_probability(p, "p");
  if (r == 1.0) throw ArgumentError("r must be below 1");
  validate_schedule(m, schedule);
  const std::uint64_t top = *std::max_element(schedule.k.begin(), schedule.k.end());
  const auto lf = log_factorials(top);
  const Wide dm = static_cast<Wide>(m);
  const Wide wr = r;
  const Wide base = xlogy_wide(dm, 1 - wr);
  return truncated_double_sum(schedule, p, lf, [&](std::uint64_t j, std::uint64_t n) {
    const Wide dn = static_cast<Wide>(n);
    const Wide y = wr * (dm - static_cast<Wide>(schedule.k[j])) / (1 - wr);
    return base + xlogy_wide(dn, y) - lf[n];
  });
}

BinWorld BinWorld::uniform(std::size_t bins, double p) {
  if (bins == 0) throw ArgumentError("need at least one bin");
  BinWorld w;
  w.bin_probs.assign(bins, 1.0 / static_cast<double>(bins));
  w.optimal_probs = {p};
  return w;
}

BinWorld BinWorld::zipf(std::size_t bins, double p) {
  if (bins == 0) throw ArgumentError("need at least one bin");
  BinWorld w;
  double h = 0.0;
  for (std::size_t i = bins; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  w.bin_probs.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) w.bin_probs[i] = 1.0 / (static_cast<double>(i + 1) * h);
  w.optimal_probs = {p};
  return w;
}

void BinWorld::validate() const {
  if (bin_probs.empty()) throw ArgumentError("no bins");
  if (value_count < 2) throw ArgumentError("need at least two values");
  if (optimal_probs.size() != 1 && optimal_probs.size() != bin_probs.size()) {
    throw ArgumentError("optimal probabilities must be scalar or one per bin");
  }
  double sum = 0.0;
  for (double q : bin_probs) {
    if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("bin probability outside [0, 1]");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw ArgumentError("bin probabilities must sum to 1");
  const double lo = 1.0 / static_cast<double>(value_count);
  for (double v : optimal_probs) {
    if (!(v >= lo && v <= 1.0)) throw ArgumentError("optimal probability outside [1/|V|, 1]");
  }
}

double expected_accuracy(const BinWorld& world, std::uint64_t m) {
  world.validate();
  if (world.value_count != 2) {
    throw UnsupportedModelError("expected accuracy is only derived for two values");
  }
  std::map<double, HalfBinomialTable> tables;
  std::map<std::pair<double, double>, double> cache;
  double alpha = 1.0;
  for (std::size_t i = 0; i < world.bin_probs.size(); ++i) {
    const double pi = world.bin_probs[i];
    const double vi = world.optimal(i);
    auto key = std::make_pair(pi, vi);
    auto it = cache.find(key);
    if (it == cache.end()) {
      auto& hb = tables.try_emplace(vi, vi).first->second;
      it = cache.emplace(key, g_exact(m, pi, hb)).first;
    }
    alpha += -pi * vi + (2.0 * vi - 1.0) * pi * it->second;
  }
  return alpha;
}

double expected_accuracy_uniform(std::uint64_t m, std::size_t bins, double p) {
  if (bins == 0) throw ArgumentError("need at least one bin");
  if (!(p >= 0.5 && p <= 1.0)) throw ArgumentError("p must lie in [1/2, 1]");
  return 1.0 - p + (2.0 * p - 1.0) * g_exact(m, 1.0 / static_cast<double>(bins), p);
}

double zipf_expected_relevant(double m, double bins) {
  if (!(bins >= 2.0)) throw ArgumentError("need at least two bins");
  if (!(m >= 0.0)) throw ArgumentError("m must be nonnegative");
  const double l = std::log(0.56 * bins);
  return 1.6 * m / (l * l);
}

std::string_view to_string(BinDistribution d) {
  return d == BinDistribution::kZipf ? "zipf" : "uniform";
}

BinDistribution parse_bin_distribution(std::string_view text) {
  if (text == "uniform") return BinDistribution::kUniform;
  if (text == "zipf") return BinDistribution::kZipf;
  throw ArgumentError("unknown bin distribution: " + std::string(text));
}

void SimConfig::validate() const {
  if (bins == 0) throw ArgumentError("need at least one bin");
  if (repetitions < 2) throw ArgumentError("need at least two repetitions");
  if (test_instances == 0) throw ArgumentError("need at least one test instance");
  check_probability(p, "p");
  if (!(t_multiplier >= 0.0)) throw ArgumentError("t multiplier must be nonnegative");
}

namespace {

struct RepResult {
  double accuracy = 0.0;
  double empty = 0.0;
};

class BinSampler {
 public:
  BinSampler(std::size_t bins, BinDistribution d) : bins_(bins), zipf_(d == BinDistribution::kZipf) {
    if (zipf_) {
      cum_.resize(bins);
      double acc = 0.0;
      for (std::size_t i = 0; i < bins; ++i) {
        acc += 1.0 / static_cast<double>(i + 1);
        cum_[i] = acc;
      }
    }
  }

  template <typename Rng>
  std::size_t operator()(Rng& rng) const {
    if (!zipf_) return std::uniform_int_distribution<std::size_t>(0, bins_ - 1)(rng);
    const double u = std::uniform_real_distribution<double>(0.0, cum_.back())(rng);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), bins_ - 1);
  }

 private:
  std::size_t bins_;
  bool zipf_;
  std::vector<double> cum_;
};

RepResult run_rep(const SimConfig& cfg, const BinSampler& sampler, std::uint64_t m,
                  std::size_t m_index, std::size_t rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(m_index),
                    static_cast<std::uint32_t>(cfg.distribution)};
  std::mt19937_64 rng(seq);
  std::bernoulli_distribution value(cfg.p);
  std::bernoulli_distribution coin(0.5);

  std::vector<std::uint32_t> ones(cfg.bins, 0);
  std::vector<std::uint32_t> total(cfg.bins, 0);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::size_t b = sampler(rng);
    ++total[b];
    ones[b] += value(rng) ? 1 : 0;
  }
  std::vector<std::uint8_t> predict(cfg.bins);
  for (std::size_t b = 0; b < cfg.bins; ++b) {
    const std::uint32_t zeros = total[b] - ones[b];
    if (ones[b] > zeros) {
      predict[b] = 1;
    } else if (ones[b] < zeros) {
      predict[b] = 0;
    } else {
      predict[b] = coin(rng) ? 1 : 0;
    }
  }

  std::size_t correct = 0;
  std::size_t empty = 0;
  for (std::size_t t = 0; t < cfg.test_instances; ++t) {
    const std::size_t b = sampler(rng);
    const std::uint8_t v = value(rng) ? 1 : 0;
    correct += predict[b] == v;
    empty += total[b] == 0;
  }
  const double n = static_cast<double>(cfg.test_instances);
  return {static_cast<double>(correct) / n, static_cast<double>(empty) / n};
}

}  // namespace

std::vector<LearningCurvePoint> simulate_mode_learner(const SimConfig& cfg) {
  cfg.validate();
  const BinSampler sampler(cfg.bins, cfg.distribution);
  const std::size_t reps = cfg.repetitions;
  const std::size_t tasks = cfg.m_schedule.size() * reps;
  std::vector<RepResult> results(tasks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks;) {
      const std::size_t mi = t / reps;
      results[t] = run_rep(cfg, sampler, cfg.m_schedule[mi], mi, t % reps);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(tasks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<LearningCurvePoint> curve;
  for (std::size_t mi = 0; mi < cfg.m_schedule.size(); ++mi) {
    LearningCurvePoint pt;
    pt.m = cfg.m_schedule[mi];
    double sum = 0.0;
    double empty = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& res = results[mi * reps + r];
      pt.accuracies.push_back(res.accuracy);
      sum += res.accuracy;
      empty += res.empty;
    }
    const double n = static_cast<double>(reps);
    pt.mean_accuracy = sum / n;
    pt.empty_bin_fraction = empty / n;
    double ss = 0.0;
    for (double a : pt.accuracies) ss += (a - pt.mean_accuracy) * (a - pt.mean_accuracy);
    pt.ci_halfwidth = cfg.t_multiplier * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    curve.push_back(std::move(pt));
  }
  return curve;
}

}  // namespace nctk
