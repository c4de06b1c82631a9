#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fakerev::stats {

/// A statistic that cannot be computed for the given sample (constant input,
/// zero variance, empty margin).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> effect_size;
};

struct CategoryRank {
  std::string category;
  int rank_fake = 1;
  int rank_official = 1;
};

struct RankDeltaRow {
  std::string token;
  int rank_a = 0;
  int rank_b = 0;
  int delta = 0;  // rank_a - rank_b
};

/// 1-based ranks, ties receive the average of the positions they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho with a two-tailed p from the t approximation on n-2 df.
TestResult spearman(std::span<const double> xs, std::span<const double> ys);

int rank_delta(int rank_official, int rank_fake);

/// Pooled-variance Student t test; effect size is Cohen's d.
TestResult two_sample_t(std::span<const double> a, std::span<const double> b);

/// Rank-sum W of `a`. For n_a + n_b <= kWilcoxonExactLimit the p value is
/// exact (rank-sum distribution by dynamic programming); above it the
/// continuity-corrected normal approximation is used. Effect size is
/// r = z / sqrt(n_a + n_b).
TestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);
inline constexpr std::size_t kWilcoxonExactLimit = 20;

/// Pearson chi-square on a 2x2 table, 1 df, no continuity correction.
TestResult chi_square_2x2(const std::array<std::array<double, 2>, 2>& table);

struct NgramComparison {
  std::vector<RankDeltaRow> common;  // ordered by rank_a
  std::vector<std::string> only_a;   // by rank within a
  std::vector<std::string> only_b;
};

/// Punctuation removal (apostrophes kept), lowercasing, whitespace
/// tokenization and stopword removal.
std::vector<std::string> tokenize(std::string_view text);

/// n-gram counts ranked by descending count, ties lexicographic.
std::vector<std::pair<std::string, std::size_t>> ranked_ngrams(const std::vector<std::string>& texts, int n);

NgramComparison ngram_rank_delta(const std::vector<std::string>& corpus_a, const std::vector<std::string>& corpus_b,
                                 int n, std::size_t top_k = 100);

/// The embedded English stopword list, in lexicographic order.
std::span<const std::string_view> stopwords();
bool is_stopword(std::string_view word);

}  // namespace fakerev::stats
