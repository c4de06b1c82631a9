// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fakerev/charstats.hpp"
#include "fakerev/cli.hpp"
#include "fakerev/featurizer.hpp"
#include "fakerev/learner/metrics.hpp"
#include "fakerev/learner/model.hpp"
#include "fakerev/learner/tree.hpp"
#include "fakerev/learner/validation.hpp"
#include "fakerev/matcher.hpp"
#include "fakerev/sweeper.hpp"
#include "fakerev/syngen.hpp"
#include "fakerev/text.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace fakerev;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    if (out.pass) out.detail = "over the time limit";
    out.pass = false;
  }
  std::ostringstream line;
  line << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << " (" << secs << " s";
  if (limit_s > 0) line << ", limit " << limit_s << " s";
  line << ")";
  if (!out.detail.empty()) line << " - " << out.detail;
  std::cout << line.str() << std::endl;
  if (!out.pass) ++failures;
}

struct CategoryRow {
  const char* name;
  int rank_fake;
  int rank_official;
};

constexpr CategoryRow kCategoryRanks[] = {
    {"Books", 21, 19},         {"Business", 12, 3},       {"Catalogs", 23, 23},      {"Education", 3, 2},
    {"Entertainment", 4, 5},   {"Finance", 17, 14},       {"Food & Drink", 15, 9},   {"Games", 1, 1},
    {"Health & Fitness", 5, 8}, {"Lifestyle", 8, 4},      {"Medical", 20, 16},       {"Music", 11, 11},
    {"Navigation", 20, 20},    {"News", 24, 18},          {"Newsstand", 23, 25},     {"Photo & Video", 2, 12},
    {"Productivity", 10, 10},  {"Reference", 18, 15},     {"Shopping", 13, 22},      {"Social Networking", 6, 17},
    {"Sports", 9, 13},         {"Stickers", 25, 21},      {"Travel", 14, 7},         {"Utilities", 8, 6},
    {"Weather", 16, 24},
};

const CategoryRow& category(const std::string& name) {
  for (const auto& row : kCategoryRanks)
    if (name == row.name) return row;
  throw std::out_of_range(name);
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Outcome spearman_reproduction() {
  std::vector<double> fake, official;
  for (const auto& row : kCategoryRanks) {
    fake.push_back(row.rank_fake);
    official.push_back(row.rank_official);
  }
  const auto r = stats::spearman(fake, official);
  Outcome o;
  o.detail = "rho=" + fmt(r.statistic) + " p=" + fmt(r.p_value);
  o.require(std::abs(r.statistic - 0.74) <= 0.02, "rho outside 0.74 +- 0.02: " + o.detail);
  o.require(r.p_value < 1e-3, "p not below 1e-3: " + o.detail);
  return o;
}

Outcome rank_delta_reproduction() {
  Outcome o;
  const std::pair<const char*, int> expected[] = {
      {"Social Networking", 11}, {"Photo & Video", 10}, {"Business", 9}, {"Shopping", 9}};
  std::string got;
  for (const auto& [name, delta] : expected) {
    const auto& row = category(name);
    const int d = stats::rank_delta(row.rank_official, row.rank_fake);
    got += std::string(got.empty() ? "" : ", ") + name + "=" + std::to_string(d);
    o.require(d == delta, std::string(name) + " gave " + std::to_string(d));
  }
  if (o.pass) o.detail = got;
  return o;
}

Outcome skew_grid_reproduction() {
  const std::vector<double> expected{90, 80, 70, 60, 50, 40, 30, 20, 10, 9,   8,   7,   6,  5,
                                     4,  3,  2,  1,  0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
  Outcome o;
  o.require(skew_grid() == expected, "grid differs from the 27 expected skews");
  const auto n = n_regular_for(8000, 90.0);
  o.require(n == 889, "90% with 8000 fakes gave " + std::to_string(n));
  if (o.pass) o.detail = "27 skews, 889 regular at 90%";
  return o;
}

Outcome metric_oracles() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(2, 60);
  std::uniform_int_distribution<int> label(0, 1), coarse(0, 9);
  std::uniform_real_distribution<double> fine(0.0, 1.0);
  Outcome o;
  for (int set = 0; set < 1000; ++set) {
    const std::size_t n = size(rng);
    Labels y(n);
    std::vector<double> s(n);
    const bool ties = set % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::uint8_t>(label(rng));
      s[i] = ties ? coarse(rng) / 9.0 : fine(rng);
    }
    y[0] = 1;
    y[1] = 0;
    const double threshold = set % 3 == 0 ? 0.5 : fine(rng);

    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool pred = s[i] >= threshold;
      if (y[i] && pred) ++tp;
      if (!y[i] && pred) ++fp;
      if (y[i] && !pred) ++fn;
      if (!y[i] && !pred) ++tn;
    }
    const auto [cm, m] = evaluate(y, s, threshold);
    o.require(cm == ConfusionMatrix{tp, fp, fn, tn}, "confusion matrix differs");
    const auto div = [](std::size_t a, std::size_t b) -> std::optional<double> {
      if (b == 0) return std::nullopt;
      return static_cast<double>(a) / static_cast<double>(b);
    };
    const auto precision = div(tp, tp + fp), recall = div(tp, tp + fn), accuracy = div(tp + tn, n);
    std::optional<double> f1;
    if (precision && recall && *precision + *recall > 0) f1 = 2 * *precision * *recall / (*precision + *recall);
    o.require(m.precision == precision, "precision differs");
    o.require(m.recall == recall, "recall differs");
    o.require(m.accuracy == accuracy, "accuracy differs");
    o.require(m.f1 == f1, "f1 differs");
    o.require(std::abs(auc_roc(y, s) - oracle::auc_all_pairs(y, s)) <= 1e-12, "auc differs from all-pairs");
  }
  if (o.pass) o.detail = "1000 sets";
  return o;
}

Outcome tree_oracle() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> n_d(1, 20), d_d(1, 2);
  std::uniform_int_distribution<int> value(0, 5), label(0, 1), depth_d(0, 3), split_d(2, 4);
  Outcome o;
  std::size_t probes = 0;
  for (int set = 0; set < 200; ++set) {
    const std::size_t n = n_d(rng), d = d_d(rng);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    Labels y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : rows[i]) v = value(rng) * 0.7;
      y[i] = static_cast<std::uint8_t>(label(rng));
    }
    TreeParams p;
    if (const int dd = depth_d(rng)) p.max_depth = static_cast<std::size_t>(dd);
    p.min_samples_split = static_cast<std::size_t>(split_d(rng));
    const auto model = train_tree(testing::matrix(rows), y, p);
    const oracle::BruteTree brute(rows, y, p.max_depth, p.min_samples_split);
    for (double a = -0.35; a <= 4.0; a += 0.35)
      for (double b = -0.35; b <= (d == 2 ? 4.0 : -0.35); b += 0.35) {
        std::vector<double> x{a, b};
        x.resize(d);
        ++probes;
        o.require(model.score(x) == brute.predict(x), "prediction differs on dataset " + std::to_string(set));
      }
  }
  if (o.pass) o.detail = "200 datasets, " + std::to_string(probes) + " probes";
  return o;
}

Outcome statistical_oracles() {
  std::mt19937_64 rng(303);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 6), cell(1, 80);
  Outcome o;
  auto close = [&](double a, double b, const std::string& what) { o.require(std::abs(a - b) <= 1e-9, what); };
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a(2 + i % 13), b(2 + (i * 5) % 11);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = 0.4 + 1.3 * g(rng);
    const auto t = stats::two_sample_t(a, b);
    const auto to = oracle::pooled_t(a, b);
    close(t.statistic, to.t, "t statistic");
    close(t.p_value, to.p, "t p value");
    close(*t.effect_size, to.d, "cohen d");
    const auto ts = stats::two_sample_t(b, a);
    o.require(ts.statistic == -t.statistic && *ts.effect_size == -*t.effect_size && ts.p_value == t.p_value,
              "t swap property");

    const double c11 = cell(rng), c12 = cell(rng), c21 = cell(rng), c22 = cell(rng);
    const auto chi = stats::chi_square_2x2({{{c11, c12}, {c21, c22}}});
    const auto [x, px] = oracle::chi_square(c11, c12, c21, c22);
    close(chi.statistic, x, "chi-square statistic");
    close(chi.p_value, px, "chi-square p value");
    const auto chit = stats::chi_square_2x2({{{c11, c21}, {c12, c22}}});
    close(chit.statistic, chi.statistic, "chi-square transposition");
    close(chit.p_value, chi.p_value, "chi-square transposition p");

    std::vector<double> wa(1 + i % 9), wb(1 + (i * 3) % 10);
    for (auto& v : wa) v = small(rng);
    for (auto& v : wb) v = small(rng) + 1;
    const auto w = stats::wilcoxon_rank_sum(wa, wb);
    const auto wo = oracle::wilcoxon_exact(wa, wb);
    close(w.statistic, wo.w, "rank sum");
    close(w.p_value, wo.p, "exact rank-sum p");

    std::vector<double> la(12 + i % 15), lb(10 + i % 12);
    for (auto& v : la) v = std::round(3 * g(rng));
    for (auto& v : lb) v = std::round(3 * g(rng) + 1);
    const auto wl = stats::wilcoxon_rank_sum(la, lb);
    const auto wlo = oracle::wilcoxon_normal(la, lb);
    close(wl.statistic, wlo.w, "large rank sum");
    close(wl.p_value, wlo.p, "normal rank-sum p");

    std::vector<double> sx(8 + i % 10), sy(sx.size());
    for (std::size_t k = 0; k < sx.size(); ++k) {
      sx[k] = small(rng);
      sy[k] = sx[k] + g(rng);
    }
    sx[0] = -1;
    const auto sp = stats::spearman(sx, sy);
    std::vector<double> ex(sx.size()), cube(sy.size());
    std::transform(sx.begin(), sx.end(), ex.begin(), [](double v) { return std::exp(v); });
    std::transform(sy.begin(), sy.end(), cube.begin(), [](double v) { return v * v * v - 4; });
    const auto spm = stats::spearman(ex, cube);
    o.require(sp.statistic == spm.statistic && sp.p_value == spm.p_value, "spearman monotone invariance");
    close(sp.statistic, oracle::pearson(oracle::ranks(sx), oracle::ranks(sy)), "spearman rho");

    const int r1 = 1 + i % 25, r2 = 1 + (i * 7) % 25;
    o.require(stats::rank_delta(r1, r2) == stats::rank_delta(r2, r1), "rank delta symmetry");
  }

  const std::vector<std::string> vocab{"great", "game", "love", "fun", "bad", "crash", "update", "money", "ads"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), len(1, 10);
  for (int round = 0; round < 20; ++round) {
    std::vector<std::string> ca, cb;
    for (auto* c : {&ca, &cb})
      for (int k = 0; k < 30; ++k) {
        std::string t;
        for (std::size_t m = len(rng); m > 0; --m) t += vocab[word(rng)] + " ";
        c->push_back(t);
      }
    for (int n : {1, 2}) {
      const auto base = stats::ngram_rank_delta(ca, cb, n, 8);
      auto shuffled = ca;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const auto again = stats::ngram_rank_delta(shuffled, cb, n, 8);
      bool same = base.only_a == again.only_a && base.only_b == again.only_b &&
                  base.common.size() == again.common.size();
      for (std::size_t k = 0; same && k < base.common.size(); ++k)
        same = base.common[k].token == again.common[k].token && base.common[k].delta == again.common[k].delta;
      o.require(same, "n-gram order independence");
    }
  }
  if (o.pass) o.detail = "100 samples per test, invariances hold";
  return o;
}

Dataset synthetic_dataset(std::size_t n_fake, std::size_t n_regular, std::uint64_t seed) {
  syngen::SynConfig config;
  config.unit = syngen::CountUnit::reviews;
  config.n_fake = n_fake;
  config.n_regular = n_regular;
  config.seed = seed;
  const auto c = syngen::generate(config);
  return labeled_dataset(featurize(c.corpus, build_profiles(c.corpus, &c.apps)));
}

Outcome pipeline_plausibility() {
  const auto data = synthetic_dataset(8000, 8000, 2024);
  CVConfig cv;
  cv.folds = 10;
  cv.repeats = 3;
  cv.seed = 11;
  ForestParams fp;
  fp.n_estimators = 100;
  const auto rf = cross_validate(data.X, data.y, ModelSpec::random_forest(fp), cv);
  const auto dt = cross_validate(data.X, data.y, ModelSpec::decision_tree(), cv);
  const auto trained = fit_pipeline(ModelSpec::random_forest(fp).reseeded(11), data.X, data.y, cv.prep);
  const auto imp = feature_importance(trained.model).values;
  std::vector<std::size_t> order(imp.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return imp[a] > imp[b]; });
  std::size_t rank_reviewer = 0, rank_app = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == feature::reviewer_total) rank_reviewer = i + 1;
    if (order[i] == feature::app_total) rank_app = i + 1;
  }
  Outcome o;
  const double rf_auc = *rf.auc_roc.mean, dt_auc = *dt.auc_roc.mean;
  o.detail = "rf auc=" + fmt(rf_auc) + " dt auc=" + fmt(dt_auc) + " rank reviewer_total=" +
             std::to_string(rank_reviewer) + " app_total=" + std::to_string(rank_app);
  o.require(rf_auc >= 0.90, "rf auc below 0.90: " + o.detail);
  o.require(rf_auc >= dt_auc, "rf auc below dt auc: " + o.detail);
  o.require(std::min(rank_reviewer, rank_app) <= 3, "neither total in the top 3: " + o.detail);
  return o;
}

Outcome imbalance_trend() {
  const auto data = synthetic_dataset(800, 79'200, 2025);
  FeatureMatrix fakes(0, kFeatureCount), pool(0, kFeatureCount);
  for (std::size_t i = 0; i < data.X.rows(); ++i) (data.y[i] ? fakes : pool).append_row(data.X.row(i));
  SweepConfig config;
  config.skews = skews_from(1.0);
  config.algorithms = {ModelSpec::random_forest(), ModelSpec::decision_tree()};
  config.cv.folds = 10;
  config.cv.repeats = 3;
  config.seed = 12;
  const auto rows = run_sweep(fakes, pool, config);

  Outcome o;
  std::optional<double> recall50, recall1;
  double min_auc = 1.0;
  for (const auto& r : rows) {
    if (r.algorithm != "rf") continue;
    if (r.skew_percent == 50.0) recall50 = r.metrics.recall;
    if (r.skew_percent == 1.0) recall1 = r.metrics.recall;
    o.require(r.metrics.auc_roc.has_value(), "undefined auc");
    if (r.metrics.auc_roc) min_auc = std::min(min_auc, *r.metrics.auc_roc);
  }
  o.require(recall50 && recall1, "missing recall");
  if (!o.pass) return o;
  o.detail = "rf recall 50%=" + fmt(*recall50) + " 1%=" + fmt(*recall1) + " min auc=" + fmt(min_auc);
  o.require(*recall50 > *recall1, "recall did not decline: " + o.detail);
  o.require(min_auc > 0.9, "auc at or below 0.9: " + o.detail);
  return o;
}

Outcome matching_round_trip() {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> length(60, 110);
  std::vector<std::u32string> clean;
  std::vector<Review> reviews;
  while (reviews.size() < 500) {
    const std::string body = testing::random_text(rng, length(rng));
    const auto text = match_text("", body);
    bool far = true;
    for (const auto& other : clean) {
      const auto gap = other.size() > text.size() ? other.size() - text.size() : text.size() - other.size();
      if (gap <= 25 && oracle::levenshtein(text, other) <= 25) {
        far = false;
        break;
      }
    }
    if (!far) continue;
    clean.push_back(text);
    reviews.push_back(testing::review("r" + std::to_string(reviews.size()), "u", "a", 5, 0, "", body));
  }
  const ReviewCorpus corpus(reviews);

  std::vector<Candidate> near, distant;
  std::uniform_int_distribution<std::size_t> few(1, 10), many(11, 15);
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    std::string body;
    do body = testing::corrupt(reviews[i].body, few(rng), rng);
    while (match_text("", body) == clean[i]);
    near.push_back({reviews[i].review_id, "", body});
    // Keep only corruptions whose true distance is the number of edits made.
    for (;;) {
      const std::size_t k = many(rng);
      body = testing::corrupt(reviews[i].body, k, rng);
      if (oracle::levenshtein(match_text("", body), clean[i]) >= 11) break;
    }
    distant.push_back({reviews[i].review_id, "", body});
  }

  Outcome o;
  const auto found = match_reviews(near, corpus, 10);
  std::size_t recovered = 0;
  for (std::size_t i = 0; i < found.size(); ++i)
    if (found[i].method == MatchMethod::fuzzy && found[i].matched_review_id == near[i].id) ++recovered;
  o.require(recovered == near.size(), std::to_string(recovered) + "/500 recovered");
  const auto missed = match_reviews(distant, corpus, 10);
  std::size_t none = 0;
  for (const auto& r : missed) none += r.method == MatchMethod::none;
  o.require(none == distant.size(), std::to_string(none) + "/500 heavy corruptions unmatched");

  std::uniform_int_distribution<int> len(0, 25), ch(0, 4);
  auto random_string = [&] {
    std::u32string s;
    for (int k = len(rng); k > 0; --k) s.push_back(U'a' + static_cast<char32_t>(ch(rng)));
    return s;
  };
  const std::size_t cap = 60;
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_string(), b = random_string(), c = random_string();
    const auto ab = levenshtein_bounded(a, b, cap), ba = levenshtein_bounded(b, a, cap);
    const auto bc = levenshtein_bounded(b, c, cap), ac = levenshtein_bounded(a, c, cap);
    o.require(levenshtein_bounded(a, a, cap) == 0u, "identity");
    o.require(ab == ba, "symmetry");
    o.require(ab && bc && ac && *ac <= *ab + *bc, "triangle inequality");
    o.require(ab == oracle::levenshtein(a, b), "distance differs from the DP oracle");
  }
  if (o.pass) o.detail = "500/500 recovered, 500/500 heavy corruptions unmatched, 1000 triples";
  return o;
}

Outcome determinism() {
  testing::TempDir dir("determinism");
  auto path = [&](const std::string& name) { return (dir / name).string(); };
  auto tool = [](std::vector<std::string> args) {
    args.insert(args.begin(), "fakerev");
    return cli::run(args);
  };
  const std::string corpus = path("c.jsonl"), feats = path("f.csv"), model = path("m.json");
  testing::write_file(path("ranks.csv"), "category,rank_fake,rank_official\nA,1,2\nB,2,1\nC,3,3\nD,5,4\n");
  std::string cands;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i)
    cands += nlohmann::json{{"id", std::to_string(i)}, {"title", ""}, {"body", testing::random_text(rng, 40)}}.dump() + "\n";
  testing::write_file(path("cand.jsonl"), cands);

  const std::vector<std::vector<std::string>> commands = {
      {"syngen", "--seed", "7", "--fake-reviews", "400", "--regular-reviews", "1200", "--n-apps", "60", "--out", corpus},
      {"ingest", "--in", corpus, "--dedup", "--profiles", path("profiles.jsonl"), "--out", path("canon.jsonl")},
      {"match", "--candidates", path("cand.jsonl"), "--corpus", corpus, "--out", path("match.csv")},
      {"stats", "--in", corpus, "--category-ranks", path("ranks.csv"), "--out", path("stats.json")},
      {"featurize", "--in", corpus, "--apps", corpus + ".apps.jsonl", "--out", feats},
      {"train", "--features", feats, "--n-estimators", "30", "--out", model},
      {"evaluate", "--features", feats, "--model", model, "--out", path("holdout.json")},
      {"evaluate", "--features", feats, "--algorithm", "rf", "--n-estimators", "20", "--folds", "5", "--repeats", "2",
       "--out", path("cv.json")},
      {"tune", "--features", feats, "--grid-n-estimators", "10,20", "--grid-max-depth", "5,none", "--folds", "3",
       "--repeats", "1", "--out", path("grid.csv")},
      {"tune", "--features", feats, "--rfecv", "--n-estimators", "15", "--folds", "3", "--repeats", "1", "--out",
       path("rfecv.csv")},
      {"importance", "--model", model, "--out", path("imp.csv")},
      {"sweep", "--features", feats, "--n-fake", "100", "--skews", "50,20,10", "--n-estimators", "20", "--folds", "3",
       "--repeats", "1", "--out", path("sweep.csv")},
  };
  Outcome o;
  std::size_t compared = 0;
  for (const auto& base : commands) {
    auto first = base;
    first.insert(first.end(), {"--workers", "1"});
    if (tool(first) != 0) {
      o.require(false, base[0] + " failed");
      continue;
    }
    // Snapshot every output, then rerun the recorded command with another
    // worker count and compare bytes.
    const std::string out = base.back();
    const auto manifest = nlohmann::json::parse(testing::read_file(out + ".manifest.json"));
    std::vector<std::pair<std::string, std::string>> snapshot;
    for (const auto& item : manifest["outputs"]) {
      const auto p = item["path"].get<std::string>();
      snapshot.emplace_back(p, testing::read_file(p));
    }
    auto again = manifest["reproduce"].get<std::vector<std::string>>();
    again.erase(again.begin());
    for (std::size_t i = 0; i + 1 < again.size(); ++i)
      if (again[i] == "--workers") again[i + 1] = "4";
    if (tool(again) != 0) {
      o.require(false, base[0] + " rerun failed");
      continue;
    }
    for (const auto& [p, bytes] : snapshot) {
      ++compared;
      o.require(testing::read_file(p) == bytes, base[0] + " output " + fs::path(p).filename().string() + " differs");
    }
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands, " + std::to_string(compared) + " outputs identical";
  return o;
}

Outcome rfecv_sanity() {
  ForestParams fp;
  fp.n_estimators = 50;
  CVConfig cv;
  cv.folds = 5;
  cv.repeats = 1;
  std::size_t hits = 0;
  for (std::uint64_t run = 0; run < 20; ++run) {
    auto [X, y] = testing::blobs(300, 15, 3, 0.6, 1000 + run);
    cv.seed = run;
    const auto r = rfecv(X, y, ModelSpec::random_forest(fp), cv, Scoring::auc);
    hits += std::count_if(r.selected.begin(), r.selected.end(), [](std::size_t f) { return f < 3; }) == 3;
  }
  Outcome o;
  o.detail = std::to_string(hits) + "/20 runs kept all informative features";
  o.require(hits >= 19, o.detail);
  return o;
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(2);
  criterion(1, 1.0, spearman_reproduction);
  criterion(2, 1.0, rank_delta_reproduction);
  criterion(3, 1.0, skew_grid_reproduction);
  criterion(4, 10.0, metric_oracles);
  criterion(5, 30.0, tree_oracle);
  criterion(6, 30.0, statistical_oracles);
  criterion(7, 300.0, pipeline_plausibility);
  criterion(8, 600.0, imbalance_trend);
  criterion(9, 60.0, matching_round_trip);
  criterion(10, 0.0, determinism);
  criterion(11, 300.0, rfecv_sanity);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
