#include "fakerev/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fakerev/charstats.hpp"
#include "fakerev/corpus.hpp"
#include "fakerev/csv.hpp"
#include "fakerev/featurizer.hpp"
#include "fakerev/learner/model.hpp"
#include "fakerev/learner/validation.hpp"
#include "fakerev/matcher.hpp"
#include "fakerev/parallel.hpp"
#include "fakerev/sweeper.hpp"
#include "fakerev/syngen.hpp"

#ifndef FAKEREV_VERSION
#define FAKEREV_VERSION "0.0.0"
#endif

namespace fakerev::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class MissingInput : public std::runtime_error {
 public:
  explicit MissingInput(const fs::path& path)
      : std::runtime_error("input file not found: " + path.string()), path_(path) {}
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path temp_dir_for(const fs::path& target) {
  if (const char* env = std::getenv("FAKEREV_TMPDIR"); env && *env) return env;
  const auto parent = target.parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

void write_atomically(const fs::path& target, const std::string& content) {
  const fs::path tmp = temp_dir_for(target) / ("." + target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::copy_file(tmp, target, fs::copy_options::overwrite_existing);
    fs::remove(tmp);
  }
}

/// One subcommand invocation: shared options, the files it touches and the
/// manifest written next to every output.
struct Run {
  std::string command;
  std::vector<std::string> argv;
  std::optional<std::uint64_t> seed_option;
  std::uint64_t seed = 0;
  bool seed_generated = false;
  int workers = 0;
  std::vector<fs::path> inputs;
  std::vector<std::pair<fs::path, std::string>> outputs;  // path, content
  ordered_json parameters = ordered_json::object();
  ordered_json summary = ordered_json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void resolve_seed() {
    if (seed_option) {
      seed = *seed_option;
      return;
    }
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    seed_generated = true;
    std::cerr << "seed: " << seed << '\n';
  }

  const fs::path& input(const fs::path& path) {
    if (!fs::exists(path)) throw MissingInput(path);
    inputs.push_back(path);
    return path;
  }

  void output(const fs::path& path, std::string content) {
    for (const auto& in : inputs) {
      std::error_code ec;
      if (fs::equivalent(in, path, ec))
        throw std::invalid_argument("output " + path.string() + " would overwrite an input");
    }
    outputs.emplace_back(path, std::move(content));
  }

  void commit() {
    for (const auto& [path, content] : outputs) write_atomically(path, content);
    const auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ordered_json m;
    m["tool"] = "fakerev";
    m["version"] = FAKEREV_VERSION;
    m["subcommand"] = command;
    m["argv"] = argv;
    m["seed"] = seed;
    m["seed_generated"] = seed_generated;
    m["workers"] = resolve_workers(workers);
    m["parameters"] = parameters;
    ordered_json ins = ordered_json::array();
    for (const auto& p : inputs) {
      const auto bytes = read_file(p);
      ins.push_back({{"path", p.string()}, {"bytes", bytes.size()}, {"fnv1a64", fnv1a(bytes)}});
    }
    m["inputs"] = ins;
    ordered_json outs = ordered_json::array();
    for (const auto& [path, content] : outputs)
      outs.push_back({{"path", path.string()}, {"bytes", content.size()}, {"fnv1a64", fnv1a(content)}});
    m["outputs"] = outs;
    m["summary"] = summary;
    m["wall_time_s"] = wall;
    std::vector<std::string> repro = argv;
    if (seed_generated) {
      repro.push_back("--seed");
      repro.push_back(std::to_string(seed));
    }
    m["reproduce"] = repro;
    const auto text = m.dump(2) + "\n";
    for (const auto& [path, content] : outputs) write_atomically(path.string() + ".manifest.json", text);
    std::cout << summary.dump() << '\n';
  }
};

void record_options(const CLI::App& sub, ordered_json& params) {
  for (const auto* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string name = opt->get_single_name();
    const auto& results = opt->results();
    if (!results.empty()) {
      params[name] = results.size() == 1 ? json(results.front()) : json(results);
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
}

// ---- shared option groups ----

struct ModelOptions {
  std::string algorithm = "rf";
  std::size_t n_estimators = 100;
  std::string max_depth = "none";
  std::string max_features = "sqrt";
  std::size_t min_samples_split = 2;
  bool no_bootstrap = false;
  bool no_normalize = false;
  bool no_standardize = false;

  void add(CLI::App* app, bool with_algorithm = true) {
    if (with_algorithm) app->add_option("--algorithm", algorithm, "gnb, dt or rf")->capture_default_str();
    app->add_option("--n-estimators", n_estimators, "trees in a forest")->capture_default_str();
    app->add_option("--max-depth", max_depth, "integer or 'none'")->capture_default_str();
    app->add_option("--max-features", max_features, "all, sqrt or an integer (forest)")->capture_default_str();
    app->add_option("--min-samples-split", min_samples_split, "smallest node that may be split")->capture_default_str();
    app->add_flag("--no-bootstrap", no_bootstrap, "grow forest trees on the full training set");
    app->add_flag("--no-normalize", no_normalize, "skip per-sample unit-norm scaling");
    app->add_flag("--no-standardize", no_standardize, "skip per-feature standardization");
  }

  std::optional<std::size_t> depth() const {
    if (max_depth == "none") return std::nullopt;
    std::size_t pos = 0;
    const auto value = std::stoull(max_depth, &pos);
    if (pos != max_depth.size()) throw std::invalid_argument("max-depth must be an integer or 'none'");
    return static_cast<std::size_t>(value);
  }

  ModelSpec spec_for(Algorithm algo, std::uint64_t seed) const {
    switch (algo) {
      case Algorithm::gnb: return ModelSpec::gnb();
      case Algorithm::tree: {
        TreeParams p;
        p.max_depth = depth();
        p.max_features = MaxFeatures{MaxFeatures::Kind::all, 0};
        p.min_samples_split = min_samples_split;
        p.seed = seed;
        p.validate();
        return ModelSpec::decision_tree(p);
      }
      case Algorithm::forest: {
        ForestParams p;
        p.n_estimators = n_estimators;
        p.tree.max_depth = depth();
        p.tree.max_features = MaxFeatures::parse(max_features);
        p.tree.min_samples_split = min_samples_split;
        p.bootstrap = !no_bootstrap;
        p.seed = seed;
        p.validate();
        return ModelSpec::random_forest(p);
      }
    }
    throw std::invalid_argument("unknown algorithm");
  }

  ModelSpec spec(std::uint64_t seed) const { return spec_for(parse_algorithm(algorithm), seed); }
  Preprocessing prep() const { return {!no_normalize, !no_standardize}; }
};

struct CVOptions {
  std::size_t folds = 10;
  std::size_t repeats = 30;
  std::string scope = "fold";

  void add(CLI::App* app, std::size_t default_repeats) {
    repeats = default_repeats;
    app->add_option("--folds", folds, "stratified folds per repeat")->capture_default_str();
    app->add_option("--repeats", repeats, "cross-validation repeats")->capture_default_str();
    app->add_option("--preprocess-scope", scope, "fold (fit on training folds) or global")->capture_default_str();
  }

  CVConfig config(std::uint64_t seed, const Preprocessing& prep, int workers) const {
    CVConfig cv;
    cv.folds = folds;
    cv.repeats = repeats;
    cv.seed = seed;
    cv.scope = parse_preprocess_scope(scope);
    cv.prep = prep;
    cv.workers = workers;
    cv.validate();
    return cv;
  }
};

ordered_json metric_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json metrics_json(const Metrics& m) {
  return {{"precision", metric_json(m.precision)},
          {"recall", metric_json(m.recall)},
          {"f1", metric_json(m.f1)},
          {"accuracy", metric_json(m.accuracy)},
          {"auc_roc", metric_json(m.auc_roc)}};
}

ordered_json summary_json(const MetricSummary& s) {
  return {{"mean", metric_json(s.mean)}, {"sd", metric_json(s.sd)}, {"defined_folds", s.defined}};
}

ordered_json cv_json(const CVResult& r) {
  return {{"precision", summary_json(r.precision)},
          {"recall", summary_json(r.recall)},
          {"f1", summary_json(r.f1)},
          {"accuracy", summary_json(r.accuracy)},
          {"auc_roc", summary_json(r.auc_roc)}};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::map<std::string, AppMetadata> maybe_metadata(Run& run, const std::string& path) {
  if (path.empty()) return {};
  return load_app_metadata(run.input(path));
}

Dataset labeled_features(Run& run, const std::string& path) {
  const auto table = read_features_csv(run.input(path));
  auto data = labeled_dataset(table);
  if (data.X.rows() == 0) throw ValidationError("no labeled rows in " + path);
  return data;
}

std::vector<std::string> names_vector() {
  std::vector<std::string> out;
  for (auto n : feature_names()) out.emplace_back(n);
  return out;
}

// ---- statistics report ----

ordered_json describe(std::vector<double> v, double scale = 1.0) {
  ordered_json j;
  j["n"] = v.size();
  if (v.empty()) {
    j["mean"] = nullptr;
    j["median"] = nullptr;
    j["sd"] = nullptr;
    return j;
  }
  for (auto& x : v) x /= scale;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  const double median = v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2.0;
  j["mean"] = mean;
  j["median"] = median;
  if (v.size() >= 2) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    j["sd"] = std::sqrt(ss / static_cast<double>(v.size() - 1));
  } else {
    j["sd"] = nullptr;
  }
  return j;
}

template <typename Fn>
ordered_json guarded_test(Fn&& fn) {
  try {
    const stats::TestResult r = fn();
    return {{"statistic", r.statistic}, {"p_value", r.p_value}, {"effect_size", metric_json(r.effect_size)}};
  } catch (const std::exception& e) {
    return {{"error", e.what()}};
  }
}

ordered_json compare(const std::vector<double>& fake, const std::vector<double>& regular, double scale, bool rank_test) {
  ordered_json j;
  j["fake"] = describe(fake, scale);
  j["regular"] = describe(regular, scale);
  std::vector<double> a = fake, b = regular;
  for (auto& x : a) x /= scale;
  for (auto& x : b) x /= scale;
  if (rank_test) {
    j["test"] = "wilcoxon_rank_sum";
    j["result"] = guarded_test([&] { return stats::wilcoxon_rank_sum(a, b); });
  } else {
    j["test"] = "two_sample_t";
    j["result"] = guarded_test([&] { return stats::two_sample_t(a, b); });
  }
  return j;
}

ordered_json category_json(const std::vector<stats::CategoryRank>& ranks) {
  ordered_json j;
  ordered_json rows = ordered_json::array();
  std::vector<double> xs, ys;
  for (const auto& r : ranks) {
    rows.push_back({{"category", r.category},
                    {"rank_fake", r.rank_fake},
                    {"rank_official", r.rank_official},
                    {"rank_delta", stats::rank_delta(r.rank_official, r.rank_fake)}});
    xs.push_back(r.rank_fake);
    ys.push_back(r.rank_official);
  }
  j["categories"] = rows;
  j["spearman"] = guarded_test([&] { return stats::spearman(xs, ys); });
  return j;
}

std::vector<stats::CategoryRank> read_category_ranks(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty category rank file");
  const auto header = csv::split(line);
  if (header != std::vector<std::string>{"category", "rank_fake", "rank_official"})
    throw ValidationError("category rank header must be category,rank_fake,rank_official", 1);
  std::vector<stats::CategoryRank> out;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 3) throw ValidationError("expected 3 fields", n);
    try {
      out.push_back({f[0], std::stoi(f[1]), std::stoi(f[2])});
    } catch (const std::logic_error&) {
      throw ValidationError("ranks must be integers", n);
    }
    if (out.back().rank_fake < 1 || out.back().rank_official < 1) throw ValidationError("ranks must be >= 1", n);
  }
  return out;
}

// Competition ranks ("1224"): one plus the number of strictly larger counts.
std::map<std::string, int> competition_ranks(const std::map<std::string, std::size_t>& counts) {
  std::map<std::string, int> out;
  for (const auto& [k, v] : counts) {
    int rank = 1;
    for (const auto& [k2, v2] : counts)
      if (v2 > v) ++rank;
    out[k] = rank;
  }
  return out;
}

ordered_json ngram_json(const stats::NgramComparison& c) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : c.common)
    rows.push_back({{"token", r.token}, {"rank_fake", r.rank_a}, {"rank_regular", r.rank_b}, {"delta", r.delta}});
  return {{"common", rows}, {"only_fake", c.only_a}, {"only_regular", c.only_b}};
}

ordered_json corpus_statistics(const ReviewCorpus& corpus, const std::map<std::string, AppMetadata>& metadata,
                               std::size_t top_k) {
  const Profiles profiles = build_profiles(corpus, metadata.empty() ? nullptr : &metadata);

  std::map<std::string, bool> reviewer_fake;
  for (const auto& r : corpus.reviews()) {
    if (!r.label) continue;
    auto& flag = reviewer_fake[r.reviewer_id];
    flag = flag || *r.label == Label::fake;
  }

  std::vector<double> count[2], freq[2], life[2], rating[2], length[2];
  std::vector<std::string> texts[2];
  std::array<std::size_t, 5> stars[2]{};
  std::size_t reviews[2] = {0, 0};
  for (const auto& [id, fake] : reviewer_fake) {
    const auto& p = profiles.reviewers.at(id);
    const int c = fake ? 0 : 1;
    count[c].push_back(static_cast<double>(p.total_reviews));
    life[c].push_back(static_cast<double>(p.account_lifetime_s));
    if (p.review_frequency_s) freq[c].push_back(*p.review_frequency_s);
  }
  for (const auto& r : corpus.reviews()) {
    if (!r.label) continue;
    const int c = *r.label == Label::fake ? 0 : 1;
    ++reviews[c];
    rating[c].push_back(r.rating);
    ++stars[c][static_cast<std::size_t>(r.rating - 1)];
    length[c].push_back(static_cast<double>(extract_features(r, profiles.reviewers.at(r.reviewer_id),
                                                              profiles.apps.at(r.app_id))
                                                 .values[feature::review_length]));
    texts[c].push_back(r.title + " " + r.body);
  }

  ordered_json j;
  j["populations"] = {{"fake", {{"reviews", reviews[0]}, {"reviewers", count[0].size()}}},
                      {"regular", {{"reviews", reviews[1]}, {"reviewers", count[1].size()}}},
                      {"reviewer_rule", "a reviewer is fake when any of their labeled reviews is fake"}};
  j["reviewers"] = {{"reviews_per_reviewer", compare(count[0], count[1], 1.0, false)},
                    {"review_frequency_days", compare(freq[0], freq[1], 86'400.0, false)},
                    {"account_lifetime_days", compare(life[0], life[1], 86'400.0, false)}};
  ordered_json dist;
  for (int c = 0; c < 2; ++c) {
    std::vector<double> fractions(5, 0.0);
    for (std::size_t s = 0; s < 5; ++s)
      if (reviews[c]) fractions[s] = static_cast<double>(stars[c][s]) / static_cast<double>(reviews[c]);
    dist[c == 0 ? "fake" : "regular"] = fractions;
  }
  j["reviews"] = {{"rating_fractions_1_to_5_stars", dist},
                  {"rating", compare(rating[0], rating[1], 1.0, true)},
                  {"length_chars", compare(length[0], length[1], 1.0, true)}};
  j["ngrams"] = {{"top_k", top_k},
                 {"words", ngram_json(stats::ngram_rank_delta(texts[0], texts[1], 1, top_k))},
                 {"bigrams", ngram_json(stats::ngram_rank_delta(texts[0], texts[1], 2, top_k))}};

  if (!metadata.empty()) {
    std::map<std::string, std::size_t> all, with_fake;
    std::map<std::string, bool> app_has_fake;
    for (const auto& r : corpus.reviews()) {
      auto& f = app_has_fake[r.app_id];
      f = f || (r.label && *r.label == Label::fake);
    }
    for (const auto& [app, fake] : app_has_fake) {
      const auto& p = profiles.apps.at(app);
      if (!p.category) continue;
      ++all[*p.category];
      with_fake[*p.category] += fake ? 1 : 0;
    }
    const auto rank_off = competition_ranks(all);
    const auto rank_fake = competition_ranks(with_fake);
    std::vector<stats::CategoryRank> ranks;
    for (const auto& [cat, n] : all) ranks.push_back({cat, rank_fake.at(cat), rank_off.at(cat)});
    j["categories"] = category_json(ranks);
  }
  return j;
}

// ---- subcommands ----

struct Options {
  std::string in, out, apps, candidates, corpus, features, model, profiles, category_ranks, folds_out, params,
      apps_out, scoring = "precision", algorithms = "rf,dt", skews, grid_n = "100,300,500",
      grid_depth = "10,30,none", grid_features = "sqrt,all";
  bool lenient = false, dedup = false, no_dedup = false, rfecv = false;
  std::size_t max_dist = 10, top_k = 100, n_fake = 800, n_apps = 500;
  std::optional<std::size_t> fake_reviewers, regular_reviewers, fake_reviews, regular_reviews;
  double threshold = 0.5, store_lifetime_s = kDefaultStoreLifetimeS, min_skew = 1.0, tolerance = 0.005;
  ModelOptions m;
  CVOptions cv;
};

void cmd_ingest(Run& run, const Options& o) {
  const auto loaded = load_reviews(run.input(o.in), !o.lenient);
  const auto metadata = maybe_metadata(run, o.apps);
  ReviewCorpus corpus = loaded.corpus;
  std::size_t removed = 0;
  if (o.dedup) {
    auto d = dedup(corpus);
    corpus = std::move(d.corpus);
    removed = d.removed_count;
  }
  std::ostringstream out;
  write_reviews(out, corpus);
  run.output(o.out, out.str());

  const Profiles profiles = build_profiles(corpus, metadata.empty() ? nullptr : &metadata);
  if (!o.profiles.empty()) {
    std::ostringstream p;
    for (const auto& [id, r] : profiles.reviewers) {
      ordered_json j{{"kind", "reviewer"},
                     {"reviewer_id", id},
                     {"total_reviews", r.total_reviews},
                     {"per_star_fraction", r.per_star_fraction},
                     {"first_ts", r.first_ts},
                     {"last_ts", r.last_ts},
                     {"account_lifetime_s", r.account_lifetime_s},
                     {"review_frequency_s", metric_json(r.review_frequency_s)}};
      p << j.dump() << '\n';
    }
    for (const auto& [id, a] : profiles.apps) {
      ordered_json j{{"kind", "app"},
                     {"app_id", id},
                     {"total_reviews", a.total_reviews},
                     {"per_star_fraction", a.per_star_fraction},
                     {"category", a.category ? json(*a.category) : json(nullptr)},
                     {"price_cents", a.price_cents ? json(*a.price_cents) : json(nullptr)}};
      p << j.dump() << '\n';
    }
    run.output(o.profiles, p.str());
  }
  run.summary = {{"records", loaded.records},        {"skipped", loaded.skipped},
                 {"duplicates_removed", removed},    {"reviews", corpus.size()},
                 {"reviewers", profiles.reviewers.size()}, {"apps", profiles.apps.size()}};
}

void cmd_match(Run& run, const Options& o) {
  const auto candidates = load_candidates(run.input(o.candidates));
  auto corpus = load_reviews(run.input(o.corpus), !o.lenient).corpus;
  std::size_t removed = 0;
  if (!o.no_dedup) {
    auto d = dedup(corpus);
    corpus = std::move(d.corpus);
    removed = d.removed_count;
  }
  const auto results = match_reviews(candidates, corpus, o.max_dist, run.workers);
  std::ostringstream out;
  write_match_csv(out, results);
  run.output(o.out, out.str());
  std::map<std::string, std::size_t> by_method;
  for (const auto& r : results) ++by_method[std::string(to_string(r.method))];
  run.summary = {{"candidates", candidates.size()}, {"corpus_reviews", corpus.size()},
                 {"duplicates_removed", removed}, {"methods", by_method}};
}

void cmd_stats(Run& run, const Options& o) {
  if (o.in.empty() && o.category_ranks.empty())
    throw std::invalid_argument("stats needs --in, --category-ranks or both");
  ordered_json report;
  if (!o.in.empty()) {
    const auto corpus = load_reviews(run.input(o.in), !o.lenient).corpus;
    report = corpus_statistics(corpus, maybe_metadata(run, o.apps), o.top_k);
  }
  if (!o.category_ranks.empty()) report["category_ranks"] = category_json(read_category_ranks(run.input(o.category_ranks)));
  run.output(o.out, report.dump(2) + "\n");
  if (report.contains("populations")) run.summary["populations"] = report["populations"];
  if (report.contains("category_ranks")) run.summary["spearman"] = report["category_ranks"]["spearman"];
}

void cmd_featurize(Run& run, const Options& o) {
  const auto corpus = load_reviews(run.input(o.in), !o.lenient).corpus;
  const auto metadata = maybe_metadata(run, o.apps);
  const auto profiles = build_profiles(corpus, metadata.empty() ? nullptr : &metadata);
  const auto table = featurize(corpus, profiles, o.store_lifetime_s, run.workers);
  std::ostringstream out;
  write_features_csv(out, table);
  run.output(o.out, out.str());
  std::size_t fakes = 0, regulars = 0;
  for (const auto& l : table.labels)
    if (l) (*l == Label::fake ? fakes : regulars)++;
  run.summary = {{"rows", table.features.rows()}, {"fake", fakes}, {"regular", regulars}};
}

void cmd_train(Run& run, const Options& o) {
  const auto data = labeled_features(run, o.features);
  const auto spec = o.m.spec(run.seed);
  auto trained = fit_pipeline(spec, data.X, data.y, o.m.prep(), run.workers);
  trained.feature_names = names_vector();
  run.output(o.out, serialize(trained) + "\n");
  run.summary = {{"algorithm", to_string(spec.algorithm)}, {"rows", data.X.rows()}};
}

void cmd_evaluate(Run& run, const Options& o) {
  const auto data = labeled_features(run, o.features);
  ordered_json report;
  if (!o.model.empty()) {
    const auto trained = load_model(run.input(o.model));
    const auto scores = predict_score(trained, data.X);
    auto [cm, metrics] = evaluate(data.y, scores, o.threshold);
    const bool both = std::count(data.y.begin(), data.y.end(), 1) > 0 && std::count(data.y.begin(), data.y.end(), 0) > 0;
    if (both) metrics.auc_roc = auc_roc(data.y, scores);
    report["mode"] = "holdout";
    report["threshold"] = o.threshold;
    report["confusion"] = {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
    report["metrics"] = metrics_json(metrics);
  } else {
    const auto spec = o.m.spec(run.seed);
    const auto cv = o.cv.config(run.seed, o.m.prep(), run.workers);
    const auto result = cross_validate(data.X, data.y, spec, cv);
    report["mode"] = "cross_validation";
    report["algorithm"] = to_string(spec.algorithm);
    report["folds"] = cv.folds;
    report["repeats"] = cv.repeats;
    report["preprocess_scope"] = to_string(cv.scope);
    report["metrics"] = cv_json(result);
    if (!o.folds_out.empty()) {
      std::ostringstream f;
      f << "repeat,fold,tp,fp,fn,tn,precision,recall,f1,accuracy,auc\n";
      for (const auto& r : result.folds)
        f << r.repeat << ',' << r.fold << ',' << r.confusion.tp << ',' << r.confusion.fp << ',' << r.confusion.fn
          << ',' << r.confusion.tn << ',' << csv::number(r.metrics.precision) << ','
          << csv::number(r.metrics.recall) << ',' << csv::number(r.metrics.f1) << ','
          << csv::number(r.metrics.accuracy) << ',' << csv::number(r.metrics.auc_roc) << '\n';
      run.output(o.folds_out, f.str());
    }
  }
  run.output(o.out, report.dump(2) + "\n");
  run.summary = report["metrics"];
}

void cmd_tune(Run& run, const Options& o) {
  const auto data = labeled_features(run, o.features);
  const auto scoring = parse_scoring(o.scoring);
  const auto cv = o.cv.config(run.seed, o.m.prep(), run.workers);
  std::ostringstream out;
  if (o.rfecv) {
    const auto result = rfecv(data.X, data.y, o.m.spec(run.seed), cv, scoring, o.tolerance);
    const auto names = feature_names();
    auto joined = [&](const std::vector<std::size_t>& ids) {
      std::string s;
      for (auto id : ids) s += (s.empty() ? "" : ";") + std::string(names[id]);
      return s;
    };
    out << "n_features,score,score_sd,features\n";
    for (const auto& s : result.curve)
      out << s.features.size() << ',' << csv::number(s.score) << ',' << csv::number(s.score_sd) << ','
          << csv::field(joined(s.features)) << '\n';
    std::vector<std::string> selected;
    for (auto id : result.selected) selected.emplace_back(names[id]);
    run.summary = {{"mode", "rfecv"}, {"scoring", to_string(scoring)}, {"best_score", metric_json(result.best_score)},
                   {"selected", selected}};
  } else {
    ParamGrid grid;
    for (const auto& s : split_list(o.grid_n)) grid.n_estimators.push_back(std::stoull(s));
    for (const auto& s : split_list(o.grid_depth))
      grid.max_depth.push_back(s == "none" ? std::nullopt : std::optional<std::size_t>(std::stoull(s)));
    for (const auto& s : split_list(o.grid_features)) grid.max_features.push_back(MaxFeatures::parse(s));
    grid.criterion = {"gini"};
    const auto result = grid_search(data.X, data.y, grid, cv, scoring);
    out << "n_estimators,max_depth,max_features,criterion,precision,recall,f1,accuracy,auc\n";
    for (const auto& row : result.table) {
      const auto& p = row.params;
      out << p.n_estimators << ',' << (p.tree.max_depth ? std::to_string(*p.tree.max_depth) : "none") << ','
          << p.tree.max_features.to_string() << ',' << p.tree.criterion << ','
          << csv::number(row.result.precision.mean) << ',' << csv::number(row.result.recall.mean) << ','
          << csv::number(row.result.f1.mean) << ',' << csv::number(row.result.accuracy.mean) << ','
          << csv::number(row.result.auc_roc.mean) << '\n';
    }
    const auto& b = result.best;
    run.summary = {{"mode", "grid"},
                   {"scoring", to_string(scoring)},
                   {"best_score", metric_json(result.best_score)},
                   {"best", {{"criterion", b.tree.criterion},
                             {"max_depth", b.tree.max_depth ? json(*b.tree.max_depth) : json(nullptr)},
                             {"max_features", b.tree.max_features.to_string()},
                             {"n_estimators", b.n_estimators}}}};
  }
  run.output(o.out, out.str());
}

void cmd_importance(Run& run, const Options& o) {
  const auto trained = load_model(run.input(o.model));
  const auto imp = feature_importance(trained.model);
  std::vector<std::string> names = trained.feature_names;
  if (names.size() != imp.values.size()) {
    names.clear();
    for (std::size_t j = 0; j < imp.values.size(); ++j) names.push_back("f" + std::to_string(j));
  }
  std::vector<std::size_t> order(imp.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return imp.values[a] > imp.values[b]; });
  std::ostringstream out;
  out << "feature,importance\n";
  for (auto j : order)
    out << csv::field(names[j]) << ',' << (imp.defined ? csv::number(imp.values[j]) : std::string()) << '\n';
  run.output(o.out, out.str());
  run.summary = {{"defined", imp.defined}, {"top", imp.defined ? json(names[order.front()]) : json(nullptr)}};
}

void cmd_sweep(Run& run, const Options& o) {
  const auto data = labeled_features(run, o.features);
  std::vector<std::size_t> fake_rows, regular_rows;
  for (std::size_t i = 0; i < data.y.size(); ++i) (data.y[i] ? fake_rows : regular_rows).push_back(i);
  if (fake_rows.size() < o.n_fake)
    throw std::invalid_argument("sweep needs " + std::to_string(o.n_fake) + " fake rows but the input has " +
                                std::to_string(fake_rows.size()));
  auto rng = derive_engine(run.seed, {3});
  std::shuffle(fake_rows.begin(), fake_rows.end(), rng);
  fake_rows.resize(o.n_fake);
  std::sort(fake_rows.begin(), fake_rows.end());

  SweepConfig config;
  if (!o.skews.empty()) {
    config.skews.clear();
    for (const auto& s : split_list(o.skews)) config.skews.push_back(std::stod(s));
  } else {
    config.skews = skews_from(o.min_skew);
  }
  for (const auto& a : split_list(o.algorithms)) config.algorithms.push_back(o.m.spec_for(parse_algorithm(a), run.seed));
  config.cv = o.cv.config(run.seed, o.m.prep(), 1);
  config.seed = run.seed;
  config.workers = run.workers;
  const auto rows = run_sweep(data.X.select_rows(fake_rows), data.X.select_rows(regular_rows), config);
  std::ostringstream out;
  write_sweep_csv(out, rows);
  run.output(o.out, out.str());
  run.summary = {{"rows", rows.size()}, {"n_fake", o.n_fake}, {"regular_pool", regular_rows.size()}};
}

syngen::PopulationParams population_from(const json& j, syngen::PopulationParams p) {
  auto get = [&](const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  get("mean_reviews_per_reviewer", p.mean_reviews_per_reviewer);
  get("mean_frequency_days", p.mean_frequency_days);
  get("mean_lifetime_days", p.mean_lifetime_days);
  get("length_median_chars", p.length_median_chars);
  get("length_mean_chars", p.length_mean_chars);
  get("app_zipf_exponent", p.app_zipf_exponent);
  get("vote_probability", p.vote_probability);
  if (j.contains("rating_distribution")) p.rating_distribution = j.at("rating_distribution").get<StarFractions>();
  return p;
}

void cmd_syngen(Run& run, const Options& o) {
  syngen::SynConfig config;
  if (!o.params.empty()) {
    const json j = json::parse(read_file(run.input(o.params)), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ValidationError("population parameter file is not a JSON object");
    try {
      if (j.contains("fake")) config.fake = population_from(j.at("fake"), config.fake);
      if (j.contains("regular")) config.regular = population_from(j.at("regular"), config.regular);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("population parameter file: ") + e.what());
    }
  }
  if (o.fake_reviewers || o.regular_reviewers) {
    config.unit = syngen::CountUnit::reviewers;
    config.n_fake = o.fake_reviewers.value_or(0);
    config.n_regular = o.regular_reviewers.value_or(0);
  } else {
    config.unit = syngen::CountUnit::reviews;
    config.n_fake = o.fake_reviews.value_or(8000);
    config.n_regular = o.regular_reviews.value_or(8000);
  }
  config.n_apps = o.n_apps;
  config.seed = run.seed;
  const auto result = syngen::generate(config, run.workers);

  std::ostringstream corpus, apps;
  write_reviews(corpus, result.corpus);
  write_app_metadata(apps, result.apps);
  run.output(o.out, corpus.str());
  run.output(o.out + ".params.json", syngen::params_json(config) + "\n");
  run.output(o.apps_out.empty() ? o.out + ".apps.jsonl" : o.apps_out, apps.str());
  run.summary = {{"reviews", result.corpus.size()},
                 {"reviewers", result.corpus.reviewer_index().size()},
                 {"apps", result.apps.size()}};
}

void print_error(const std::string& kind, const std::string& message, std::size_t line = 0) {
  ordered_json e{{"kind", kind}, {"message", message}};
  if (line) e["line"] = line;
  std::cerr << ordered_json{{"error", e}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Fake app review analysis toolkit", "fakerev"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", FAKEREV_VERSION);
  app.require_subcommand(1);

  Options o;
  Run run;
  run.argv = args;

  auto common = [&](CLI::App* sub, bool out_required = true) {
    sub->add_option("--seed", run.seed_option, "root seed (generated and recorded when absent)");
    sub->add_option("--workers", run.workers, "worker threads (0 = FAKEREV_WORKERS or all cores)")
        ->capture_default_str();
    auto* out = sub->add_option("--out", o.out, "output file");
    if (out_required) out->required();
  };

  auto* ingest = app.add_subcommand("ingest", "validate a review corpus and write it in canonical order");
  ingest->add_option("--in", o.in, "reviews, one JSON record per line")->required();
  ingest->add_option("--apps", o.apps, "app metadata, one JSON record per line");
  ingest->add_option("--profiles", o.profiles, "also write reviewer and app profiles (JSON lines)");
  ingest->add_flag("--lenient", o.lenient, "skip malformed records instead of rejecting the file");
  ingest->add_flag("--dedup", o.dedup, "drop every review whose title and body occur more than once");
  common(ingest);

  auto* match = app.add_subcommand("match", "find candidate texts in a corpus by exact or bounded edit distance");
  match->add_option("--candidates", o.candidates, "candidates: JSON lines with id, title, body")->required();
  match->add_option("--corpus", o.corpus, "reviews to search")->required();
  match->add_option("--max-dist", o.max_dist, "largest edit distance accepted")->capture_default_str();
  match->add_flag("--no-dedup", o.no_dedup, "search the corpus without removing duplicate texts");
  match->add_flag("--lenient", o.lenient, "skip malformed records");
  common(match);

  auto* stats_cmd = app.add_subcommand("stats", "compare fake and regular reviews and reviewers");
  stats_cmd->add_option("--in", o.in, "labeled reviews");
  stats_cmd->add_option("--apps", o.apps, "app metadata for the category ranking");
  stats_cmd->add_option("--category-ranks", o.category_ranks, "CSV category,rank_fake,rank_official");
  stats_cmd->add_option("--top-k", o.top_k, "n-grams compared per population")->capture_default_str();
  stats_cmd->add_flag("--lenient", o.lenient, "skip malformed records");
  common(stats_cmd);

  auto* feat = app.add_subcommand("featurize", "write the 15 classification features per review");
  feat->add_option("--in", o.in, "reviews")->required();
  feat->add_option("--apps", o.apps, "app metadata");
  feat->add_option("--store-lifetime-s", o.store_lifetime_s, "account usage of single-review reviewers")
      ->default_str(csv::number(kDefaultStoreLifetimeS));
  feat->add_flag("--lenient", o.lenient, "skip malformed records");
  common(feat);

  auto* train_cmd = app.add_subcommand("train", "fit a model on a feature CSV");
  train_cmd->add_option("--features", o.features, "feature CSV from featurize")->required();
  o.m.add(train_cmd);
  common(train_cmd);

  auto* eval = app.add_subcommand("evaluate", "score a saved model or cross-validate an algorithm");
  eval->add_option("--features", o.features, "feature CSV")->required();
  auto* model_opt = eval->add_option("--model", o.model, "saved model for a holdout evaluation");
  eval->add_option("--threshold", o.threshold, "score at or above which a review is fake")->capture_default_str();
  eval->add_option("--folds-out", o.folds_out, "per-fold metrics CSV (cross-validation)");
  o.m.add(eval);
  o.cv.add(eval, 30);
  for (const char* name : {"--algorithm", "--folds", "--repeats", "--preprocess-scope", "--folds-out"})
    model_opt->excludes(eval->get_option(name));
  common(eval);

  auto* tune = app.add_subcommand("tune", "grid search or recursive feature elimination");
  tune->add_option("--features", o.features, "feature CSV")->required();
  tune->add_option("--scoring", o.scoring, "precision, recall, f1, accuracy or auc")->capture_default_str();
  auto* rfecv_flag = tune->add_flag("--rfecv", o.rfecv, "run recursive feature elimination instead of a grid");
  auto* gn = tune->add_option("--grid-n-estimators", o.grid_n, "forest sizes to try")->capture_default_str();
  auto* gd = tune->add_option("--grid-max-depth", o.grid_depth, "depth limits to try (integer or none)")->capture_default_str();
  auto* gf = tune->add_option("--grid-max-features", o.grid_features, "max-features values to try")->capture_default_str();
  tune->add_option("--tolerance", o.tolerance, "RFECV: accepted score loss for a smaller set")->capture_default_str();
  rfecv_flag->excludes(gn)->excludes(gd)->excludes(gf);
  o.m.add(tune);
  o.cv.add(tune, 30);
  common(tune);

  auto* imp = app.add_subcommand("importance", "split-count feature importance of a saved tree or forest");
  imp->add_option("--model", o.model, "saved model")->required();
  common(imp);

  auto* sweep = app.add_subcommand("sweep", "evaluate classifiers across fake-review skews");
  sweep->add_option("--features", o.features, "labeled feature CSV; fakes and the regular pool")->required();
  sweep->add_option("--n-fake", o.n_fake, "fake samples kept at every skew")->capture_default_str();
  auto* min_skew = sweep->add_option("--min-skew", o.min_skew, "smallest skew in percent")->capture_default_str();
  auto* skews = sweep->add_option("--skews", o.skews, "explicit comma-separated skews in percent");
  skews->excludes(min_skew);
  sweep->add_option("--algorithms", o.algorithms, "comma-separated algorithms")->capture_default_str();
  o.m.add(sweep, false);
  o.cv.add(sweep, 3);
  common(sweep);

  auto* gen = app.add_subcommand("syngen", "generate a labeled synthetic corpus");
  auto* fr = gen->add_option("--fake-reviewers", o.fake_reviewers, "fake reviewers to simulate");
  auto* rr = gen->add_option("--regular-reviewers", o.regular_reviewers, "regular reviewers to simulate");
  auto* fv = gen->add_option("--fake-reviews", o.fake_reviews, "fake reviews (default 8000)");
  auto* rv = gen->add_option("--regular-reviews", o.regular_reviews, "regular reviews (default 8000)");
  for (auto* a : {fr, rr})
    for (auto* b : {fv, rv}) a->excludes(b);
  gen->add_option("--n-apps", o.n_apps, "apps in the synthetic store")->capture_default_str();
  gen->add_option("--params", o.params, "JSON overriding population parameters");
  gen->add_option("--apps-out", o.apps_out, "app metadata output (default <out>.apps.jsonl)");
  common(gen);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  run.command = sub->get_name();
  record_options(*sub, run.parameters);

  try {
    run.resolve_seed();
    if (run.command == "ingest") cmd_ingest(run, o);
    else if (run.command == "match") cmd_match(run, o);
    else if (run.command == "stats") cmd_stats(run, o);
    else if (run.command == "featurize") cmd_featurize(run, o);
    else if (run.command == "train") cmd_train(run, o);
    else if (run.command == "evaluate") cmd_evaluate(run, o);
    else if (run.command == "tune") cmd_tune(run, o);
    else if (run.command == "importance") cmd_importance(run, o);
    else if (run.command == "sweep") cmd_sweep(run, o);
    else if (run.command == "syngen") cmd_syngen(run, o);
    run.commit();
  } catch (const MissingInput& e) {
    print_error("missing_input", e.what());
    return kExitMissingInput;
  } catch (const ValidationError& e) {
    print_error("validation", e.what(), e.line());
    return kExitInvalid;
  } catch (const stats::DegenerateInput& e) {
    print_error("degenerate_input", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    print_error("invalid", e.what());
    return kExitInvalid;
  }
  return 0;
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace fakerev::cli
