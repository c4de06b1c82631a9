#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fakerev/charstats.hpp"
#include "oracles.hpp"

using namespace fakerev::stats;

namespace {

std::vector<double> sample(std::mt19937_64& rng, std::size_t n, double mu, double sd) {
  std::normal_distribution<double> g(mu, sd);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<double> integers(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("average ranks") {
  const std::vector<double> v{10, 20, 20, 5};
  CHECK(average_ranks(v) == std::vector<double>{2, 3.5, 3.5, 1});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto x = integers(rng, 15, 0, 5);
    CHECK(average_ranks(x) == oracle::ranks(x));
  }
}

TEST_CASE("spearman extremes and errors") {
  const std::vector<double> a{1, 2, 3, 4, 5}, rev{5, 4, 3, 2, 1}, flat{2, 2, 2, 2, 2};
  CHECK(spearman(a, a).statistic == doctest::Approx(1.0));
  CHECK(spearman(a, rev).statistic == doctest::Approx(-1.0));
  CHECK(spearman(a, a).p_value == 0.0);
  CHECK_THROWS_AS(spearman(a, flat), DegenerateInput);
  CHECK_THROWS_AS(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("spearman matches pearson on ranks and the t series") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 5 + i % 20;
    auto x = integers(rng, n, 0, 8);
    auto y = sample(rng, n, 0, 1);
    for (std::size_t k = 0; k < n; ++k) y[k] += 0.3 * x[k];
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) continue;
    const auto res = spearman(x, y);
    const double rho = oracle::pearson(oracle::ranks(x), oracle::ranks(y));
    CHECK(res.statistic == doctest::Approx(rho).epsilon(1e-12));
    const double t = rho * std::sqrt((n - 2.0) / (1.0 - rho * rho));
    CHECK(std::abs(res.p_value - oracle::t_two_sided_p(t, static_cast<int>(n) - 2)) <= 1e-9);
  }
}

TEST_CASE("spearman is invariant under monotone transforms") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto x = sample(rng, 12, 0, 1);
    const auto y = sample(rng, 12, 0, 1);
    std::vector<double> ex(x.size()), cube(y.size());
    std::transform(x.begin(), x.end(), ex.begin(), [](double v) { return std::exp(v); });
    std::transform(y.begin(), y.end(), cube.begin(), [](double v) { return v * v * v + 2.0; });
    const auto base = spearman(x, y), moved = spearman(ex, cube);
    CHECK(base.statistic == moved.statistic);
    CHECK(base.p_value == moved.p_value);
  }
}

TEST_CASE("rank delta") {
  CHECK(rank_delta(17, 6) == 11);
  CHECK(rank_delta(12, 2) == 10);
  CHECK(rank_delta(4, 4) == 0);
  for (int a = 1; a < 30; ++a)
    for (int b = 1; b < 30; b += 3) CHECK(rank_delta(a, b) == rank_delta(b, a));
  CHECK_THROWS_AS(rank_delta(0, 3), std::invalid_argument);
}

TEST_CASE("two-sample t examples") {
  const std::vector<double> a{1, 2, 3}, b{2, 3, 4};
  const auto r = two_sample_t(a, b);
  CHECK(*r.effect_size == doctest::Approx(-1.0));
  const auto same = two_sample_t(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(*same.effect_size == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0));
  CHECK_THROWS_AS(two_sample_t(std::vector<double>{1, 1}, std::vector<double>{1, 1}), DegenerateInput);
}

TEST_CASE("two-sample t matches the textbook oracle and is antisymmetric") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto a = sample(rng, 2 + i % 15, 0.0, 1.0);
    const auto b = sample(rng, 3 + i % 11, 0.5, 1.5);
    const auto r = two_sample_t(a, b);
    const auto o = oracle::pooled_t(a, b);
    CHECK(std::abs(r.statistic - o.t) <= 1e-9);
    CHECK(std::abs(r.p_value - o.p) <= 1e-9);
    CHECK(std::abs(*r.effect_size - o.d) <= 1e-9);
    const auto s = two_sample_t(b, a);
    CHECK(s.statistic == -r.statistic);
    CHECK(*s.effect_size == -*r.effect_size);
    CHECK(s.p_value == r.p_value);
  }
}

TEST_CASE("wilcoxon examples") {
  const auto r = wilcoxon_rank_sum(std::vector<double>{1, 2}, std::vector<double>{3, 4});
  CHECK(r.statistic == 3.0);
  CHECK(r.p_value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const std::vector<double> a{1, 4, 2, 8, 5, 7};
  const auto same = wilcoxon_rank_sum(a, a);
  CHECK(same.p_value == doctest::Approx(1.0));
  CHECK(std::abs(*same.effect_size) < 1e-12);
}

TEST_CASE("wilcoxon exact p matches subset enumeration") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const std::size_t na = 1 + i % 8, nb = 2 + (i * 7) % 9;
    const auto a = integers(rng, na, 0, 6);
    const auto b = integers(rng, nb, 1, 8);
    const auto r = wilcoxon_rank_sum(a, b);
    const auto o = oracle::wilcoxon_exact(a, b);
    CHECK(std::abs(r.statistic - o.w) <= 1e-9);
    CHECK(std::abs(r.p_value - o.p) <= 1e-9);
  }
}

TEST_CASE("wilcoxon normal approximation above the exact limit") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 60; ++i) {
    const auto a = integers(rng, 11 + i % 20, 0, 30);
    const auto b = integers(rng, 12 + i % 13, 3, 33);
    const auto r = wilcoxon_rank_sum(a, b);
    double z = 0.0;
    const auto o = oracle::wilcoxon_normal(a, b, &z);
    CHECK(std::abs(r.statistic - o.w) <= 1e-9);
    CHECK(std::abs(r.p_value - o.p) <= 1e-9);
    CHECK(std::abs(*r.effect_size - z / std::sqrt(static_cast<double>(a.size() + b.size()))) <= 1e-9);
  }
}

TEST_CASE("chi-square examples") {
  const auto indep = chi_square_2x2({{{25, 25}, {25, 25}}});
  CHECK(indep.statistic == 0.0);
  CHECK(indep.p_value == 1.0);
  CHECK(chi_square_2x2({{{10, 20}, {20, 10}}}).statistic == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(chi_square_2x2({{{0, 0}, {3, 4}}}), DegenerateInput);
  CHECK_THROWS_AS(chi_square_2x2({{{-1, 2}, {3, 4}}}), std::invalid_argument);
}

TEST_CASE("chi-square matches the cross-product oracle and ignores transposition") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> cell(1, 60);
  for (int i = 0; i < 100; ++i) {
    const double a = cell(rng), b = cell(rng), c = cell(rng), d = cell(rng);
    const auto r = chi_square_2x2({{{a, b}, {c, d}}});
    const auto [x, p] = oracle::chi_square(a, b, c, d);
    CHECK(std::abs(r.statistic - x) <= 1e-9 * std::max(1.0, x));
    CHECK(std::abs(r.p_value - p) <= 1e-9);
    const auto t = chi_square_2x2({{{a, c}, {b, d}}});
    CHECK(std::abs(t.statistic - r.statistic) <= 1e-12 * std::max(1.0, x));
    CHECK(std::abs(t.p_value - r.p_value) <= 1e-12);
  }
}

TEST_CASE("tokenizer") {
  CHECK(tokenize("Don't STOP, believing!!") == std::vector<std::string>{"don't", "stop", "believing"});
  CHECK(tokenize("The app is great") == std::vector<std::string>{"app", "great"});
  CHECK(tokenize("  ...  ") .empty());
  CHECK(tokenize("\xC3\x89T\xC3\x89 caf\xC3\xA9") == std::vector<std::string>{"\xC3\xA9t\xC3\xA9", "caf\xC3\xA9"});
}

TEST_CASE("stopword list is sorted and searchable") {
  const auto words = stopwords();
  CHECK(std::is_sorted(words.begin(), words.end()));
  CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
  CHECK(is_stopword("the"));
  CHECK_FALSE(is_stopword("great"));
}

TEST_CASE("ngram rank delta examples") {
  const std::vector<std::string> a{"good good bad"}, b{"bad bad good"};
  const auto cmp = ngram_rank_delta(a, b, 1);
  REQUIRE(cmp.common.size() == 2);
  CHECK(cmp.common[0].token == "good");
  CHECK(cmp.common[0].rank_a == 1);
  CHECK(cmp.common[0].rank_b == 2);
  CHECK(cmp.common[0].delta == -1);

  const std::vector<std::string> c{"fast app works well", "love this game"};
  const auto same = ngram_rank_delta(c, c, 2);
  CHECK(same.only_a.empty());
  CHECK(same.only_b.empty());
  for (const auto& row : same.common) CHECK(row.delta == 0);
  CHECK_THROWS_AS(ranked_ngrams(c, 3), std::invalid_argument);
}

TEST_CASE("ngram ranking matches a brute-force counter") {
  const std::vector<std::string> vocab{"great", "game", "love", "fun", "bad", "crash", "the", "and", "update",
                                       "money", "ads", "it", "best", "ever", "slow"};
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), len(1, 12);
  auto corpus = [&] {
    std::vector<std::string> texts;
    std::vector<std::vector<std::string>> docs;
    for (int i = 0; i < 50; ++i) {
      std::string t;
      std::vector<std::string> kept;
      for (std::size_t k = len(rng); k > 0; --k) {
        const auto& w = vocab[word(rng)];
        t += (t.empty() ? "" : " ") + w;
        if (w != "the" && w != "and" && w != "it") kept.push_back(w);
      }
      texts.push_back(t);
      docs.push_back(kept);
    }
    return std::pair{texts, docs};
  };
  for (int round = 0; round < 10; ++round) {
    const auto [ta, da] = corpus();
    const auto [tb, db] = corpus();
    for (int n : {1, 2}) {
      CHECK(ranked_ngrams(ta, n) == oracle::ngram_ranking(da, n));
      const std::size_t k = 5 + static_cast<std::size_t>(round);
      auto ra = oracle::ngram_ranking(da, n), rb = oracle::ngram_ranking(db, n);
      ra.resize(std::min(ra.size(), k));
      rb.resize(std::min(rb.size(), k));
      const auto cmp = ngram_rank_delta(ta, tb, n, k);
      std::size_t common = 0;
      for (std::size_t i = 0; i < ra.size(); ++i) {
        auto it = std::find_if(rb.begin(), rb.end(), [&](const auto& p) { return p.first == ra[i].first; });
        if (it == rb.end()) continue;
        REQUIRE(common < cmp.common.size());
        const auto& row = cmp.common[common++];
        CHECK(row.token == ra[i].first);
        CHECK(row.rank_a == static_cast<int>(i + 1));
        CHECK(row.rank_b == static_cast<int>(it - rb.begin() + 1));
        CHECK(row.delta == row.rank_a - row.rank_b);
      }
      CHECK(common == cmp.common.size());
      CHECK(cmp.only_a.size() == ra.size() - common);
      CHECK(cmp.only_b.size() == rb.size() - common);

      auto shuffled_a = ta;
      std::shuffle(shuffled_a.begin(), shuffled_a.end(), rng);
      const auto again = ngram_rank_delta(shuffled_a, tb, n, k);
      CHECK(again.only_a == cmp.only_a);
      CHECK(again.only_b == cmp.only_b);
      REQUIRE(again.common.size() == cmp.common.size());
      for (std::size_t i = 0; i < cmp.common.size(); ++i) CHECK(again.common[i].token == cmp.common[i].token);
    }
  }
}
