// nctk: command-line front end.
//
// Exit status: 0 on success, 1 on a data error, 2 on a usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nctk/assoc.h"
#include "nctk/bracket.h"
#include "nctk/datareq.h"
#include "nctk/error.h"
#include "nctk/eval.h"
#include "nctk/extract.h"
#include "nctk/lexres.h"
#include "nctk/paraphrase.h"

namespace {

using namespace nctk;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to the named file, or stdout when empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ResourceError("cannot write file: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<std::vector<std::string>> read_compounds(const std::string& path) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(read_all(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line.substr(0, line.find('\t')));
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (!words.empty()) out.push_back(std::move(words));
  }
  return out;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

Thesaurus scheme_thesaurus(SchemeMode mode, const std::string& thesaurus_path,
                           const std::vector<std::string>& model_ids) {
  if (mode == SchemeMode::kLexical) return Thesaurus::lexical(model_ids);
  if (thesaurus_path.empty()) throw ArgumentError("--thesaurus is required for the conceptual scheme");
  return load_thesaurus(thesaurus_path);
}

std::vector<std::uint64_t> parse_schedule(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint64_t>(v));
    } catch (const std::logic_error&) {
      throw ArgumentError("bad --schedule entry: '" + item + "'");
    }
  }
  if (out.empty()) throw ArgumentError("empty --schedule");
  return out;
}

struct Options {
  std::string input;
  std::string output;
  std::string nouns;
  std::string thesaurus;
  std::string counts;
  std::string observations;
  std::string model;
  std::string vocab;
  std::string scheme = "conceptual";
  std::string estimator = "mle";
  std::string method = "dependency";
  std::string candidates = "full";
  std::string task = "parsing";
  std::string test;
  std::string predictions;
  std::string baseline;
  std::string dist = "uniform";
  std::string schedule;
  bool tuned = false;
  bool symmetric = false;
  bool direct = false;
  int window = 0;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::size_t bins = 10000;
  std::size_t reps = 30;
  std::size_t tests = 1000;
  double p = 0.9;
  double t = 2.045;
  double m = 0;
  std::uint64_t n = 0;
  unsigned values = 2;
};

int run_extract_pairs(const Options& o) {
  if (o.window != 0 && o.window < 2) throw ArgumentError("--window must be at least 2");
  const auto nouns = load_sure_nouns(o.nouns);
  const auto tokens = tokenize(read_all(o.input));
  PairCounts counts = o.window == 0 ? extract_train_pairs(tokens, nouns, o.threads)
                                    : extract_windowed_pairs(tokens, nouns, o.window, o.threads);
  if (o.symmetric) counts = symmetrize(counts);
  Output out(o.output);
  write_pair_counts(out.stream(), counts);
  return 0;
}

int run_extract_triples(const Options& o) {
  const auto nouns = load_sure_nouns(o.nouns);
  Output out(o.output);
  write_triples(out.stream(), extract_test_triples(tokenize(read_all(o.input)), nouns));
  return 0;
}

int run_extract_preps(const Options& o) {
  const auto obs = extract_prep_observations(tokenize_tagged(read_all(o.input)));
  Output out(o.output);
  write_prep_observations(out.stream(), obs);
  return 0;
}

std::vector<std::string> lexical_vocabulary(const std::vector<std::string>& seen,
                                            const std::string& vocab_path) {
  std::set<std::string> vocab(seen.begin(), seen.end());
  if (!vocab_path.empty()) {
    std::istringstream in(read_all(vocab_path));
    for (std::string w; in >> w;) vocab.insert(w);
  }
  return {vocab.begin(), vocab.end()};
}

void report_dropped(const DropTally& d) {
  if (d.events > 0) {
    std::cerr << "dropped " << d.events << " entries (" << d.weight
              << " counts) with words outside the concept inventory\n";
  }
}

int run_train_affinity(const Options& o) {
  std::istringstream in(read_all(o.counts));
  const auto counts = read_pair_counts(in);
  const auto mode = parse_scheme_mode(o.scheme);
  Thesaurus t;
  if (mode == SchemeMode::kLexical) {
    std::vector<std::string> seen;
    for (const auto& [k, v] : counts.table()) {
      seen.push_back(k.first);
      seen.push_back(k.second);
    }
    t = Thesaurus::lexical(lexical_vocabulary(seen, o.vocab));
  } else {
    t = scheme_thesaurus(mode, o.thesaurus, {});
  }
  const auto a = estimate_affinities(counts, t);
  report_dropped(a.dropped());
  Output out(o.output);
  write_affinities(out.stream(), a);
  return 0;
}

int run_train_paraphrase(const Options& o) {
  std::istringstream in(read_all(o.observations));
  const auto obs = read_prep_observations(in);
  const auto mode = parse_scheme_mode(o.scheme);
  Thesaurus t;
  if (mode == SchemeMode::kLexical) {
    std::vector<std::string> seen;
    for (const auto& [k, v] : obs.head_counts) seen.push_back(k.second);
    for (const auto& [k, v] : obs.object_counts) seen.push_back(k.second);
    t = Thesaurus::lexical(lexical_vocabulary(seen, o.vocab));
  } else {
    t = scheme_thesaurus(mode, o.thesaurus, {});
  }
  const auto m = estimate_paraphrase(obs, t, parse_estimator(o.estimator));
  report_dropped(m.dropped());
  Output out(o.output);
  write_paraphrase_model(out.stream(), m);
  return 0;
}

int run_bracket(const Options& o) {
  std::istringstream min(read_all(o.model));
  const auto raw = read_affinities(min);
  const auto t = scheme_thesaurus(raw.mode(), o.thesaurus, raw.ids());
  const auto a = raw.remapped(t);
  const auto method = parse_method(o.method);
  Output out(o.output);
  auto& os = out.stream();
  os << "#scheme=" << to_string(a.mode()) << '\n';
  os << "#method=" << to_string(method) << '\n';
  os << "#tuned=" << (o.tuned ? 1 : 0) << '\n';
  int status = 0;
  for (const auto& words : read_compounds(o.input)) {
    try {
      if (words.size() == 3) {
        const auto d = analyze3(words[0], words[1], words[2], a, t, method, o.tuned);
        os << join(words) << '\t' << to_string(d.branching) << '\t' << fmt(d.ratio) << '\t'
           << (d.guess() ? 1 : 0) << '\n';
      } else if (words.size() >= 2) {
        const auto r = analyze_n(words, a, t, o.tuned);
        const double ratio = r.runner_up > 0.0 ? r.score / r.runner_up
                             : r.score > 0.0   ? std::numeric_limits<double>::infinity()
                                               : 1.0;
        os << join(words) << '\t' << r.parse.bracketed(words) << '\t' << fmt(ratio) << '\t'
           << (r.guess ? 1 : 0) << '\n';
      } else {
        throw InputError("compound needs at least two words: " + join(words));
      }
    } catch (const UnknownWordError& e) {
      std::cerr << join(words) << ": " << e.what() << '\n';
      status = 1;
    }
  }
  return status;
}

int run_paraphrase(const Options& o) {
  std::istringstream min(read_all(o.model));
  const auto raw = read_paraphrase_model(min);
  const auto t = scheme_thesaurus(raw.mode(), o.thesaurus, raw.ids());
  const auto model = raw.remapped(t);
  const auto set = parse_candidate_set(o.candidates);
  Output out(o.output);
  auto& os = out.stream();
  os << "#scheme=" << to_string(model.mode()) << '\n';
  os << "#estimator=" << to_string(model.estimator()) << '\n';
  os << "#candidates=" << to_string(set) << '\n';
  int status = 0;
  for (const auto& words : read_compounds(o.input)) {
    if (words.size() != 2) {
      throw InputError("paraphrase input needs two words per line: " + join(words));
    }
    try {
      const auto d = paraphrase(words[0], words[1], model, t, set);
      os << join(words) << '\t' << d.preposition() << '\t' << fmt(d.scores[d.chosen]) << '\t'
         << (d.tie_broken ? 1 : 0) << '\n';
    } catch (const UnknownWordError& e) {
      std::cerr << join(words) << ": " << e.what() << '\n';
      status = 1;
    }
  }
  return status;
}

// Prediction files are tool output: `compound<TAB>label...`, matched by line
// order against the test set.
std::vector<std::pair<std::optional<char>, bool>> read_predictions(const std::string& path,
                                                                   bool paraphrase_task) {
  std::vector<std::pair<std::optional<char>, bool>> out;
  std::istringstream in(read_all(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string field; std::getline(ls, field, '\t');) f.push_back(field);
    if (f.size() < 2) throw InputError("prediction line lacks a label: " + line);
    std::optional<char> label;
    if (paraphrase_task) {
      auto p = preposition_index(f[1]);
      if (p) {
        label = prep_letter(*p);
      } else if (f[1].size() == 1) {
        label = f[1][0];
      }
    } else if (f[1] == "L" || f[1] == "R") {
      label = f[1][0];
    }
    if (!label) throw InputError("unrecognized prediction label: " + f[1]);
    const bool guess = f.size() >= 4 && f[3] == "1";
    out.emplace_back(label, guess);
  }
  return out;
}

void print_report(std::ostream& os, const EvalReport& r, const std::string& task) {
  os << "#task=" << task << '\n';
  os << "scored\t" << r.n_scored << '\n';
  os << "correct\t" << r.n_correct << '\n';
  os << "accuracy\t" << format_percent(r.accuracy) << '\n';
  os << "guess_rate\t" << format_percent(r.guess_rate) << '\n';
  for (const auto& c : r.per_class) {
    std::string name(1, c.label);
    if (task == "paraphrase") {
      if (auto p = prep_from_letter(c.label)) name = std::string(kPrepositions[*p]);
    }
    os << "class\t" << name << '\t' << c.correct << '/' << c.total << '\t'
       << format_percent(c.accuracy()) << '\n';
  }
  os << "confusion";
  for (char l : r.labels) os << '\t' << l;
  os << '\n';
  for (std::size_t g = 0; g < r.labels.size(); ++g) {
    os << r.labels[g];
    for (auto v : r.confusion[g]) os << '\t' << v;
    os << '\n';
  }
}

int run_evaluate(const Options& o) {
  const bool para = o.task == "paraphrase";
  if (!para && o.task != "parsing") throw ArgumentError("--task must be parsing or paraphrase");
  const std::string default_test =
      std::string(NCTK_DEFAULT_DATA_DIR) + (para ? "/paraphrase_test.tsv" : "/parsing_test.tsv");
  const std::string test = o.test.empty() ? default_test : o.test;

  std::vector<std::optional<char>> pred;
  std::vector<bool> guesses;
  auto fill = [&](std::size_t n, auto&& stored) {
    if (!o.baseline.empty()) {
      char b = 0;
      if (!para && o.baseline == "left") b = 'L';
      if (para && o.baseline == "of") b = 'O';
      if (!b) throw ArgumentError("unknown --baseline for this task: " + o.baseline);
      pred.assign(n, b);
    } else if (!o.predictions.empty()) {
      auto rows = read_predictions(o.predictions, para);
      if (rows.size() != n) throw InputError("prediction count does not match test set");
      for (auto& [label, guess] : rows) {
        pred.push_back(label);
        guesses.push_back(guess);
      }
    } else {
      pred = stored();
    }
  };

  EvalReport r;
  if (para) {
    const auto items = load_paraphrase_test(test);
    fill(items.size(), [&] {
      std::vector<std::optional<char>> v;
      for (const auto& it : items) v.push_back(it.prediction);
      return v;
    });
    r = evaluate_paraphrase(items, pred, guesses);
  } else {
    const auto items = load_parsing_test(test);
    fill(items.size(), [&] {
      std::vector<std::optional<char>> v;
      for (const auto& it : items) v.push_back(it.prediction);
      return v;
    });
    r = evaluate_parsing(items, pred, guesses);
  }
  Output out(o.output);
  print_report(out.stream(), r, o.task);
  return 0;
}

int run_simulate(const Options& o) {
  SimConfig cfg;
  cfg.bins = o.bins;
  cfg.distribution = parse_bin_distribution(o.dist);
  cfg.p = o.p;
  cfg.test_instances = o.tests;
  cfg.repetitions = o.reps;
  cfg.t_multiplier = o.t;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (!o.schedule.empty()) cfg.m_schedule = parse_schedule(o.schedule);
  const auto curve = simulate_mode_learner(cfg);

  Output out(o.output);
  auto& os = out.stream();
  os << "#bins=" << cfg.bins << '\n';
  os << "#distribution=" << to_string(cfg.distribution) << '\n';
  os << "#p=" << fmt(cfg.p) << '\n';
  os << "#repetitions=" << cfg.repetitions << '\n';
  os << "#test_instances=" << cfg.test_instances << '\n';
  os << "#t=" << fmt(cfg.t_multiplier) << '\n';
  os << "#seed=" << cfg.seed << '\n';
  os << "m\tmean\tci\tempty_frac\told_bound\texpected\n";
  const bool two_valued = cfg.p >= 0.5;
  const BinWorld world = cfg.distribution == BinDistribution::kZipf
                             ? BinWorld::zipf(cfg.bins, cfg.p)
                             : BinWorld::uniform(cfg.bins, cfg.p);
  for (const auto& pt : curve) {
    const double dm = static_cast<double>(pt.m);
    const double bins = static_cast<double>(cfg.bins);
    os << pt.m << '\t' << fmt(pt.mean_accuracy) << '\t' << fmt(pt.ci_halfwidth) << '\t'
       << fmt(pt.empty_bin_fraction) << '\t'
       << (two_valued ? fmt(accuracy_bound_old(dm, bins, 2, cfg.p)) : "nan") << '\t'
       << (two_valued ? fmt(expected_accuracy(world, pt.m)) : "nan") << '\n';
  }
  return 0;
}

int run_halfbin(const Options& o) {
  const double v = o.direct ? half_binomial_direct(o.p, o.n) : half_binomial(o.p, o.n);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  Output out(o.output);
  out.stream() << buf << '\n';
  return 0;
}

int run_bounds(const Options& o) {
  Output out(o.output);
  auto& os = out.stream();
  const double bins = static_cast<double>(o.bins);
  os << "empty_bin_bound\t" << fmt(empty_bin_bound(o.m, bins)) << '\n';
  os << "old_bound\t" << fmt(accuracy_bound_old(o.m, bins, o.values, o.p)) << '\n';
  if (o.values == 2) {
    os << "expected_uniform\t"
       << fmt(expected_accuracy_uniform(static_cast<std::uint64_t>(o.m), o.bins, o.p)) << '\n';
  }
  os << "zipf_expected_relevant\t" << fmt(zipf_expected_relevant(o.m, bins)) << '\n';
  if (o.n >= 1) {
    const auto f = nonempty_error_factor(o.p, o.n);
    os << "error_factor\t" << fmt(f.u) << '\n';
    os << "error_factor_ratio\t" << fmt(f.ratio) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noun compound bracketing, paraphrasing and data-requirements toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* ep = app.add_subcommand("extract-pairs", "Training pairs from raw text");
  ep->add_option("--nouns", o.nouns, "Sure-noun file")->required();
  ep->add_option("--input", o.input, "Corpus file (default stdin)");
  ep->add_option("--window", o.window, "Window width (0 = adjacent-pair pattern)");
  ep->add_flag("--symmetric", o.symmetric, "Count each pair in both orders");
  ep->add_option("--threads", o.threads, "Extraction shards");

  auto* et = app.add_subcommand("extract-triples", "Three-noun test compounds from raw text");
  et->add_option("--nouns", o.nouns, "Sure-noun file")->required();
  et->add_option("--input", o.input, "Corpus file (default stdin)");

  auto* epp = app.add_subcommand("extract-preps", "Preposition observations from tagged text");
  epp->add_option("--input", o.input, "Tagged corpus (default stdin)");

  auto* ta = app.add_subcommand("train-affinity", "Estimate the bracketing affinity matrix");
  ta->add_option("--counts", o.counts, "Pair counts file")->required();
  ta->add_option("--thesaurus", o.thesaurus, "Thesaurus TSV");
  ta->add_option("--vocab", o.vocab, "Extra lexical-scheme vocabulary");

  auto* tp = app.add_subcommand("train-paraphrase", "Estimate preposition distributions");
  tp->add_option("--observations", o.observations, "Observations file")->required();
  tp->add_option("--thesaurus", o.thesaurus, "Thesaurus TSV");
  tp->add_option("--vocab", o.vocab, "Extra lexical-scheme vocabulary");
  tp->add_option("--estimator", o.estimator, "mle | ele")->check(CLI::IsMember({"mle", "ele"}));

  for (auto* sub : {ta, tp}) {
    sub->add_option("--scheme", o.scheme, "conceptual | lexical")
        ->check(CLI::IsMember({"conceptual", "lexical"}));
  }

  auto* br = app.add_subcommand("bracket", "Bracket compounds");
  br->add_option("--model", o.model, "Affinity model")->required();
  br->add_option("--thesaurus", o.thesaurus, "Thesaurus TSV (conceptual models)");
  br->add_option("--input", o.input, "Compounds, one per line (default stdin)");
  br->add_option("--method", o.method, "dependency | adjacency")
      ->check(CLI::IsMember({"dependency", "adjacency"}));
  br->add_flag("--tuned", o.tuned, "Apply category-size and choice factors");

  auto* pa = app.add_subcommand("paraphrase", "Choose prepositional paraphrases");
  pa->add_option("--model", o.model, "Paraphrase model")->required();
  pa->add_option("--thesaurus", o.thesaurus, "Thesaurus TSV (conceptual models)");
  pa->add_option("--input", o.input, "Two-word compounds (default stdin)");
  pa->add_option("--candidates", o.candidates, "full | 3 | 2")
      ->check(CLI::IsMember({"full", "3", "2"}));

  auto* ev = app.add_subcommand("evaluate", "Score predictions against a test set");
  ev->add_option("--task", o.task, "parsing | paraphrase")
      ->check(CLI::IsMember({"parsing", "paraphrase"}));
  ev->add_option("--test", o.test, "Test-set TSV (default: shipped data)");
  ev->add_option("--predictions", o.predictions, "bracket/paraphrase output to score");
  ev->add_option("--baseline", o.baseline, "left | of");

  auto* si = app.add_subcommand("simulate", "Mode-based learner learning curve");
  si->add_option("--seed", o.seed, "Random seed");
  si->add_option("--bins", o.bins, "Number of bins");
  si->add_option("--dist", o.dist, "uniform | zipf")->check(CLI::IsMember({"uniform", "zipf"}));
  si->add_option("--p", o.p, "Probability of the optimal value");
  si->add_option("--reps", o.reps, "Repetitions per training size");
  si->add_option("--tests", o.tests, "Test draws per repetition");
  si->add_option("--t", o.t, "t multiplier for the confidence interval");
  si->add_option("--schedule", o.schedule, "Comma-separated training sizes");
  si->add_option("--threads", o.threads, "Worker threads");

  auto* hb = app.add_subcommand("halfbin", "Half-binomial value");
  hb->add_option("--p", o.p, "Success probability")->required();
  hb->add_option("--n", o.n, "Trials")->required();
  hb->add_flag("--direct", o.direct, "Use the tail-sum definition");

  auto* bd = app.add_subcommand("bounds", "Accuracy bounds for a training size");
  bd->add_option("--m", o.m, "Training instances")->required();
  bd->add_option("--bins", o.bins, "Number of bins");
  bd->add_option("--p", o.p, "Probability of the optimal value");
  bd->add_option("--values", o.values, "Number of output values");
  bd->add_option("--n", o.n, "Bin count for the non-empty error factor");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->add_option("--output", o.output, "Output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ep) return run_extract_pairs(o);
    if (*et) return run_extract_triples(o);
    if (*epp) return run_extract_preps(o);
    if (*ta) return run_train_affinity(o);
    if (*tp) return run_train_paraphrase(o);
    if (*br) return run_bracket(o);
    if (*pa) return run_paraphrase(o);
    if (*ev) return run_evaluate(o);
    if (*si) return run_simulate(o);
    if (*hb) return run_halfbin(o);
    if (*bd) return run_bounds(o);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
