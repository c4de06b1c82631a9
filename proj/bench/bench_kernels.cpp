// Serial reference versus OpenMP kernels on synthetic data.
#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "fakerev/featurizer.hpp"
#include "fakerev/learner/forest.hpp"
#include "fakerev/learner/validation.hpp"
#include "fakerev/matcher.hpp"
#include "fakerev/syngen.hpp"

namespace {

using namespace fakerev;

const syngen::SynCorpus& corpus(std::size_t n_regular) {
  static std::map<std::size_t, syngen::SynCorpus> cache;
  auto it = cache.find(n_regular);
  if (it == cache.end()) {
    syngen::SynConfig config;
    config.unit = syngen::CountUnit::reviews;
    config.n_fake = 800;
    config.n_regular = n_regular;
    config.seed = 42;
    it = cache.emplace(n_regular, syngen::generate(config)).first;
  }
  return it->second;
}

const Dataset& dataset(std::size_t n_regular) {
  static std::map<std::size_t, Dataset> cache;
  auto it = cache.find(n_regular);
  if (it == cache.end()) {
    const auto& c = corpus(n_regular);
    auto table = featurize(c.corpus, build_profiles(c.corpus, &c.apps));
    auto data = labeled_dataset(table);
    data.X = normalize_rows(data.X);
    it = cache.emplace(n_regular, std::move(data)).first;
  }
  return it->second;
}

std::vector<Candidate> corrupted_candidates(const ReviewCorpus& c, std::size_t n) {
  std::mt19937_64 rng(9);
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < n && i < c.size(); ++i) {
    const auto& r = c.reviews()[i * (c.size() / n)];
    Candidate cand{"c" + std::to_string(i), r.title, r.body};
    for (int e = 0; e < 4 && !cand.body.empty(); ++e)
      cand.body[std::uniform_int_distribution<std::size_t>(0, cand.body.size() - 1)(rng)] = 'x';
    out.push_back(std::move(cand));
  }
  return out;
}

void BM_ForestSerial(benchmark::State& state) {
  const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
  ForestParams p;
  p.n_estimators = 20;
  for (auto _ : state) benchmark::DoNotOptimize(train_forest_serial(d.X, d.y, p));
}

void BM_ForestParallel(benchmark::State& state) {
  const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
  ForestParams p;
  p.n_estimators = 20;
  for (auto _ : state) benchmark::DoNotOptimize(train_forest(d.X, d.y, p, 0));
}

void BM_CrossValidateSerial(benchmark::State& state) {
  const auto& d = dataset(8000);
  CVConfig cv;
  cv.folds = 5;
  cv.repeats = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate_serial(d.X, d.y, ModelSpec::decision_tree(), cv));
}

void BM_CrossValidateParallel(benchmark::State& state) {
  const auto& d = dataset(8000);
  CVConfig cv;
  cv.folds = 5;
  cv.repeats = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate(d.X, d.y, ModelSpec::decision_tree(), cv));
}

void BM_MatchSerial(benchmark::State& state) {
  const auto& c = corpus(8000).corpus;
  const auto candidates = corrupted_candidates(c, 200);
  for (auto _ : state) benchmark::DoNotOptimize(match_reviews_serial(candidates, c, 10));
}

void BM_MatchParallel(benchmark::State& state) {
  const auto& c = corpus(8000).corpus;
  const auto candidates = corrupted_candidates(c, 200);
  for (auto _ : state) benchmark::DoNotOptimize(match_reviews(candidates, c, 10, 0));
}

}  // namespace

BENCHMARK(BM_ForestSerial)->Arg(8000)->Arg(79200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForestParallel)->Arg(8000)->Arg(79200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
