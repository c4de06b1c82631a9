#include "fakerev/syngen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fakerev/parallel.hpp"

namespace fakerev::syngen {

void PopulationParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("population parameters: " + what); };
  if (!(mean_reviews_per_reviewer >= 1.0)) fail("mean_reviews_per_reviewer must be at least 1");
  if (!(mean_frequency_days > 0.0)) fail("mean_frequency_days must be positive");
  if (!(mean_lifetime_days >= 0.0)) fail("mean_lifetime_days must be non-negative");
  double sum = 0.0;
  for (double p : rating_distribution) {
    if (!(p >= 0.0)) fail("rating fractions must be non-negative");
    sum += p;
  }
  if (!(sum > 0.0)) fail("rating fractions must not all be zero");
  if (!(length_median_chars > 0.0)) fail("length_median_chars must be positive");
  if (!(length_mean_chars >= length_median_chars))
    fail("length_mean_chars must be at least length_median_chars (log-normal lengths)");
  if (!(app_zipf_exponent >= 0.0)) fail("app_zipf_exponent must be non-negative");
  if (!(vote_probability >= 0.0 && vote_probability <= 1.0)) fail("vote_probability must lie in [0, 1]");
}

StarFractions PopulationParams::normalized_ratings() const {
  const double sum = std::accumulate(rating_distribution.begin(), rating_distribution.end(), 0.0);
  StarFractions out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rating_distribution[i] / sum;
  return out;
}

double PopulationParams::length_mu() const { return std::log(length_median_chars); }
double PopulationParams::length_sigma() const { return std::sqrt(2.0 * std::log(length_mean_chars / length_median_chars)); }

PopulationParams fake_defaults() {
  PopulationParams p;
  p.mean_reviews_per_reviewer = 29.9;
  p.mean_frequency_days = 78.8;
  p.mean_lifetime_days = 622.3;
  p.rating_distribution = {0.006, 0.01, 0.05, 0.23, 0.70};
  p.length_median_chars = 111.0;
  p.length_mean_chars = 121.3;
  p.app_zipf_exponent = 0.3;
  p.vote_probability = 0.015;
  return p;
}

PopulationParams regular_defaults() {
  PopulationParams p;
  p.mean_reviews_per_reviewer = 2.5;
  p.mean_frequency_days = 328.9;
  p.mean_lifetime_days = 331.3;
  p.rating_distribution = {0.10, 0.04, 0.06, 0.16, 0.65};
  p.length_median_chars = 63.0;
  p.length_mean_chars = 110.8;
  p.app_zipf_exponent = 1.0;
  p.vote_probability = 0.027;
  return p;
}

namespace {

constexpr std::int64_t kEpochStart = 1'230'768'000;  // 2009-01-01
constexpr double kWindowDays = 9.0 * 365.0;
constexpr double kDayS = 86'400.0;

// Store categories weighted by their app counts in the store at large.
constexpr std::pair<std::string_view, double> kCategories[] = {
    {"Books", 25069},         {"Business", 130825},   {"Catalogs", 10951},      {"Education", 131302},
    {"Entertainment", 79504}, {"Finance", 34684},     {"Food & Drink", 50944},  {"Games", 326864},
    {"Health & Fitness", 54410}, {"Lifestyle", 102183}, {"Medical", 30101},     {"Music", 43874},
    {"Navigation", 21559},    {"News", 26358},        {"Newsstand", 1021},      {"Photo & Video", 40034},
    {"Productivity", 44191},  {"Reference", 34465},   {"Shopping", 15253},      {"Social Networking", 27488},
    {"Sports", 37060},        {"Stickers", 20979},    {"Travel", 64846},        {"Utilities", 71680},
    {"Weather", 4446},
};

constexpr std::string_view kFakeWords[] = {
    "great", "the", "app", "love", "and", "this", "best", "is", "game", "amazing", "awesome", "it", "easy",
    "fun", "to", "recommend", "use", "so", "very", "highly", "perfect", "a", "excellent", "really", "helpful",
    "nice", "useful", "for", "must", "have", "works", "my", "good", "everyone", "download", "of", "simple",
    "design", "fantastic", "quality"};

constexpr std::string_view kRegularWords[] = {
    "the", "app", "i", "it", "to", "and", "but", "please", "update", "a", "good", "fix", "is", "not", "ads",
    "crash", "time", "game", "when", "phone", "after", "work", "does", "money", "would", "this", "like",
    "version", "new", "open", "great", "love", "can", "login", "bug", "free", "useless", "waste", "keeps",
    "support"};

std::string padded(std::size_t index, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, index);
  return buf;
}

std::string format_id(char prefix, std::size_t index, int width) { return prefix + padded(index, width); }

std::discrete_distribution<std::size_t> zipf(std::size_t n, double exponent) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -exponent);
  return {w.begin(), w.end()};
}

struct Population {
  const PopulationParams& params;
  Label label;
  char prefix;
  std::span<const std::string_view> words;
  std::discrete_distribution<std::size_t> word_dist;
  std::discrete_distribution<std::size_t> app_dist;
  std::discrete_distribution<int> rating_dist;
};

Population make_population(const PopulationParams& params, Label label, std::span<const std::string_view> words,
                           std::size_t n_apps) {
  const auto ratings = params.normalized_ratings();
  return {params,
          label,
          label == Label::fake ? 'F' : 'R',
          words,
          zipf(words.size(), 1.0),
          zipf(n_apps, params.app_zipf_exponent),
          std::discrete_distribution<int>(ratings.begin(), ratings.end())};
}

// Title and body of `length` scalar values in total.
std::pair<std::string, std::string> make_text(std::size_t length, Population& pop, std::mt19937_64& rng) {
  std::string s;
  while (s.size() < length + 1) {
    if (!s.empty()) s.push_back(' ');
    s += pop.words[pop.word_dist(rng)];
  }
  s.resize(length + 1);
  if (s.back() == ' ') s.back() = 's';

  const int title_words = std::uniform_int_distribution<int>(1, 3)(rng);
  std::size_t cut = std::string::npos;
  for (std::size_t i = 0, seen = 0; i < s.size(); ++i)
    if (s[i] == ' ' && ++seen == static_cast<std::size_t>(title_words)) {
      cut = i;
      break;
    }
  if (cut == std::string::npos) return {s.substr(0, length), ""};
  return {s.substr(0, cut), s.substr(cut + 1)};
}

std::int64_t draw_votes(double probability, std::mt19937_64& rng) {
  if (probability <= 0.0 || !std::bernoulli_distribution(probability)(rng)) return 0;
  return 1 + std::geometric_distribution<std::int64_t>(0.5)(rng);
}

struct ReviewerTask {
  std::size_t population;  // 0 fake, 1 regular
  std::size_t index;
  std::size_t count;
};

std::vector<Review> make_reviewer(const ReviewerTask& task, Population pop, std::uint64_t seed) {
  auto rng = derive_engine(seed, {1, task.population, task.index});
  const std::string reviewer_id = format_id(pop.prefix, task.index, 6);
  std::exponential_distribution<double> gap(1.0 / (pop.params.mean_frequency_days * kDayS));
  std::lognormal_distribution<double> length(pop.params.length_mu(), pop.params.length_sigma());

  double t = static_cast<double>(kEpochStart) + std::uniform_real_distribution<double>(0.0, kWindowDays * kDayS)(rng);
  std::vector<std::size_t> used;
  std::vector<Review> out;
  out.reserve(task.count);
  for (std::size_t k = 0; k < task.count; ++k) {
    if (k > 0) t += gap(rng);
    Review r;
    r.review_id = reviewer_id + "-" + padded(k, 4);
    r.reviewer_id = reviewer_id;
    r.timestamp = static_cast<std::int64_t>(std::floor(t));
    r.rating = pop.rating_dist(rng) + 1;
    const auto chars = static_cast<std::size_t>(std::max(1.0, std::round(length(rng))));
    std::tie(r.title, r.body) = make_text(chars, pop, rng);

    std::size_t app = pop.app_dist(rng);
    for (int attempt = 0; attempt < 32 && std::find(used.begin(), used.end(), app) != used.end(); ++attempt)
      app = pop.app_dist(rng);
    used.push_back(app);
    r.app_id = format_id('A', app + 1, 4);

    r.helpful_votes = draw_votes(pop.params.vote_probability, rng);
    r.unhelpful_votes = draw_votes(pop.params.vote_probability / 2.0, rng);
    r.label = pop.label;
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t draw_count(const PopulationParams& params, std::uint64_t seed, std::size_t population, std::size_t index) {
  auto rng = derive_engine(seed, {0, population, index});
  std::geometric_distribution<std::size_t> extra(1.0 / params.mean_reviews_per_reviewer);
  return 1 + extra(rng);
}

std::vector<ReviewerTask> plan(const SynConfig& config) {
  std::vector<ReviewerTask> tasks;
  const PopulationParams* params[2] = {&config.fake, &config.regular};
  const std::size_t targets[2] = {config.n_fake, config.n_regular};
  for (std::size_t p = 0; p < 2; ++p) {
    if (config.unit == CountUnit::reviewers) {
      for (std::size_t i = 0; i < targets[p]; ++i) tasks.push_back({p, i, draw_count(*params[p], config.seed, p, i)});
      continue;
    }
    std::size_t total = 0;
    for (std::size_t i = 0; total < targets[p]; ++i) {
      const std::size_t c = std::min(draw_count(*params[p], config.seed, p, i), targets[p] - total);
      tasks.push_back({p, i, c});
      total += c;
    }
  }
  return tasks;
}

std::map<std::string, AppMetadata> make_apps(std::size_t n_apps, std::uint64_t seed) {
  auto rng = derive_engine(seed, {2});
  std::vector<double> weights;
  for (const auto& c : kCategories) weights.push_back(c.second);
  std::discrete_distribution<std::size_t> category(weights.begin(), weights.end());
  constexpr std::int64_t kPrices[] = {99, 199, 299, 499, 999};
  std::uniform_int_distribution<std::size_t> price(0, std::size(kPrices) - 1);
  std::bernoulli_distribution paid(0.2);

  std::map<std::string, AppMetadata> out;
  for (std::size_t a = 1; a <= n_apps; ++a) {
    AppMetadata m;
    m.app_id = format_id('A', a, 4);
    m.category = std::string(kCategories[category(rng)].first);
    m.price_cents = paid(rng) ? kPrices[price(rng)] : 0;
    out.emplace(m.app_id, std::move(m));
  }
  return out;
}

}  // namespace

SynCorpus generate(const SynConfig& config, int workers) {
  config.fake.validate();
  config.regular.validate();
  if (config.n_apps < 1) throw std::invalid_argument("syngen: n_apps must be at least 1");
  if (config.n_fake + config.n_regular == 0) throw std::invalid_argument("syngen: nothing to generate");

  const auto tasks = plan(config);
  const Population fake = make_population(config.fake, Label::fake, kFakeWords, config.n_apps);
  const Population regular = make_population(config.regular, Label::regular, kRegularWords, config.n_apps);

  std::vector<std::vector<Review>> parts(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    parts[i] = make_reviewer(tasks[i], tasks[i].population == 0 ? fake : regular, config.seed);
  });

  std::vector<Review> reviews;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(reviews));
  return {ReviewCorpus(std::move(reviews)), make_apps(config.n_apps, config.seed)};
}

SynCorpus generate(const PopulationParams& fake, const PopulationParams& regular, std::size_t n_fake_reviewers,
                   std::size_t n_regular_reviewers, std::size_t n_apps, std::uint64_t seed) {
  SynConfig config{fake, regular, n_fake_reviewers, n_regular_reviewers, CountUnit::reviewers, n_apps, seed};
  return generate(config);
}

namespace {

nlohmann::ordered_json population_json(const PopulationParams& p) {
  nlohmann::ordered_json j;
  j["mean_reviews_per_reviewer"] = p.mean_reviews_per_reviewer;
  j["mean_frequency_days"] = p.mean_frequency_days;
  j["mean_lifetime_days"] = p.mean_lifetime_days;
  j["rating_distribution"] = p.rating_distribution;
  j["rating_distribution_normalized"] = p.normalized_ratings();
  j["length_median_chars"] = p.length_median_chars;
  j["length_mean_chars"] = p.length_mean_chars;
  j["length_lognormal_mu"] = p.length_mu();
  j["length_lognormal_sigma"] = p.length_sigma();
  j["app_zipf_exponent"] = p.app_zipf_exponent;
  j["vote_probability"] = p.vote_probability;
  return j;
}

}  // namespace

std::string params_json(const SynConfig& config) {
  nlohmann::ordered_json j;
  j["seed"] = config.seed;
  j["count_unit"] = config.unit == CountUnit::reviewers ? "reviewers" : "reviews";
  j["n_fake"] = config.n_fake;
  j["n_regular"] = config.n_regular;
  j["n_apps"] = config.n_apps;
  j["fake"] = population_json(config.fake);
  j["regular"] = population_json(config.regular);
  return j.dump(2);
}

}  // namespace fakerev::syngen
