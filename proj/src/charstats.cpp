#include "fakerev/charstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace fakerev::stats {

namespace {

double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sum_sq_dev(std::span<const double> xs, double m) {
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s;
}

double t_two_sided(double t, double df) {
  if (std::isinf(t)) return 0.0;
  boost::math::students_t dist(df);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0, 1.0);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

TestResult spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman: samples differ in length");
  if (xs.size() < 3) throw std::invalid_argument("spearman: need at least 3 pairs");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double mx = mean(rx), my = mean(ry);
  double sxy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) sxy += (rx[i] - mx) * (ry[i] - my);
  const double sxx = sum_sq_dev(rx, mx), syy = sum_sq_dev(ry, my);
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("spearman: correlation undefined for a constant sequence");

  TestResult out;
  out.statistic = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double n = static_cast<double>(xs.size());
  const double rho2 = out.statistic * out.statistic;
  out.p_value = rho2 >= 1.0 ? 0.0 : t_two_sided(out.statistic * std::sqrt((n - 2.0) / (1.0 - rho2)), n - 2.0);
  return out;
}

int rank_delta(int rank_official, int rank_fake) {
  if (rank_official < 1 || rank_fake < 1) throw std::invalid_argument("rank_delta: ranks start at 1");
  return std::abs(rank_official - rank_fake);
}

TestResult two_sample_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("two_sample_t: each sample needs at least 2 values");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double pooled_var = (sum_sq_dev(a, ma) + sum_sq_dev(b, mb)) / (na + nb - 2.0);
  if (!(pooled_var > 0.0)) throw DegenerateInput("two_sample_t: zero pooled variance");

  TestResult out;
  out.statistic = (ma - mb) / std::sqrt(pooled_var * (1.0 / na + 1.0 / nb));
  out.p_value = t_two_sided(out.statistic, na + nb - 2.0);
  out.effect_size = (ma - mb) / std::sqrt(pooled_var);
  return out;
}

TestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("wilcoxon_rank_sum: empty sample");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = average_ranks(pooled);
  const std::size_t na = a.size(), n = pooled.size();

  const double w = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(na), 0.0);
  const double nad = static_cast<double>(na), nbd = static_cast<double>(b.size()), nd = static_cast<double>(n);
  const double mu = nad * (nd + 1.0) / 2.0;

  std::map<double, std::size_t> tie_sizes;
  for (double v : pooled) ++tie_sizes[v];
  double tie_term = 0.0;
  for (const auto& [v, t] : tie_sizes) {
    const double td = static_cast<double>(t);
    tie_term += td * td * td - td;
  }
  const double var = n > 1 ? nad * nbd / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0))) : 0.0;

  double z = 0.0;
  const double diff = w - mu;
  if (var > 0.0 && std::fabs(diff) > 0.5) z = (diff - std::copysign(0.5, diff)) / std::sqrt(var);

  TestResult out;
  out.statistic = w;
  out.effect_size = z / std::sqrt(nd);

  if (n <= kWilcoxonExactLimit) {
    // Doubled average ranks are integers; count subsets of size na by sum.
    std::vector<std::size_t> doubled(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<std::size_t>(std::lround(2.0 * ranks[i]));
      total += doubled[i];
    }
    std::vector<std::vector<double>> ways(na + 1, std::vector<double>(total + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = std::min(i + 1, na); k-- > 0;)
        for (std::size_t s = total - doubled[i] + 1; s-- > 0;)
          if (ways[k][s] != 0.0) ways[k + 1][s + doubled[i]] += ways[k][s];

    const auto two_mu = static_cast<long long>(na * (n + 1));
    const long long observed = std::llabs(std::lround(2.0 * w) - two_mu);
    double extreme = 0.0, all = 0.0;
    for (std::size_t s = 0; s <= total; ++s) {
      all += ways[na][s];
      if (std::llabs(static_cast<long long>(s) - two_mu) >= observed) extreme += ways[na][s];
    }
    out.p_value = std::clamp(extreme / all, 0.0, 1.0);
  } else {
    boost::math::normal standard;
    out.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(standard, std::fabs(z))), 0.0, 1.0);
  }
  return out;
}

TestResult chi_square_2x2(const std::array<std::array<double, 2>, 2>& table) {
  std::array<double, 2> rows{}, cols{};
  double total = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      if (table[i][j] < 0.0) throw std::invalid_argument("chi_square_2x2: negative count");
      rows[i] += table[i][j];
      cols[j] += table[i][j];
      total += table[i][j];
    }
  if (rows[0] == 0.0 || rows[1] == 0.0 || cols[0] == 0.0 || cols[1] == 0.0)
    throw DegenerateInput("chi_square_2x2: zero marginal");
  double chi2 = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double expected = rows[i] * cols[j] / total;
      chi2 += (table[i][j] - expected) * (table[i][j] - expected) / expected;
    }
  TestResult out;
  out.statistic = chi2;
  out.p_value = chi2 == 0.0 ? 1.0 : std::clamp(boost::math::gamma_q(0.5, chi2 / 2.0), 0.0, 1.0);
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  s.toLower();
  icu::UnicodeString cleaned;
  for (std::int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      cleaned.append(static_cast<UChar32>(' '));
    } else if (c == '\'' || c == 0x2019) {
      cleaned.append(static_cast<UChar32>('\''));
    } else if (!u_ispunct(c)) {
      cleaned.append(c);
    }
  }
  std::string utf8;
  cleaned.toUTF8String(utf8);

  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    std::size_t start = utf8.find_first_not_of(' ', pos);
    if (start == std::string::npos) break;
    std::size_t end = utf8.find(' ', start);
    if (end == std::string::npos) end = utf8.size();
    std::string_view word(utf8.data() + start, end - start);
    while (!word.empty() && word.front() == '\'') word.remove_prefix(1);
    while (!word.empty() && word.back() == '\'') word.remove_suffix(1);
    if (!word.empty() && !is_stopword(word)) tokens.emplace_back(word);
    pos = end;
  }
  return tokens;
}

std::vector<std::pair<std::string, std::size_t>> ranked_ngrams(const std::vector<std::string>& texts, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("ranked_ngrams: n must be 1 or 2");
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    const auto tokens = tokenize(t);
    if (n == 1) {
      for (const auto& tok : tokens) ++counts[tok];
    } else {
      for (std::size_t i = 0; i + 1 < tokens.size(); ++i) ++counts[tokens[i] + " " + tokens[i + 1]];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  return ranked;
}

NgramComparison ngram_rank_delta(const std::vector<std::string>& corpus_a, const std::vector<std::string>& corpus_b,
                                 int n, std::size_t top_k) {
  if (corpus_a.empty() || corpus_b.empty()) throw std::invalid_argument("ngram_rank_delta: empty corpus");
  auto top = [&](const std::vector<std::string>& corpus) {
    auto ranked = ranked_ngrams(corpus, n);
    if (ranked.size() > top_k) ranked.resize(top_k);
    return ranked;
  };
  const auto top_a = top(corpus_a);
  const auto top_b = top(corpus_b);
  std::unordered_map<std::string, int> rank_b;
  for (std::size_t i = 0; i < top_b.size(); ++i) rank_b.emplace(top_b[i].first, static_cast<int>(i + 1));

  NgramComparison out;
  std::set<std::string> in_a;
  for (std::size_t i = 0; i < top_a.size(); ++i) {
    const auto& tok = top_a[i].first;
    in_a.insert(tok);
    if (auto it = rank_b.find(tok); it != rank_b.end()) {
      const int ra = static_cast<int>(i + 1);
      out.common.push_back({tok, ra, it->second, ra - it->second});
    } else {
      out.only_a.push_back(tok);
    }
  }
  for (const auto& [tok, count] : top_b)
    if (!in_a.contains(tok)) out.only_b.push_back(tok);
  return out;
}

}  // namespace fakerev::stats
