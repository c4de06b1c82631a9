#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fakerev/corpus.hpp"
#include "fakerev/matrix.hpp"

namespace fakerev {

inline constexpr std::size_t kFeatureCount = 15;

/// Nine years of 365 days, used for reviewers with a single review.
inline constexpr double kDefaultStoreLifetimeS = 9.0 * 365.0 * 86'400.0;

/// Column positions in canonical order.
namespace feature {
inline constexpr std::size_t reviewer_total = 0;
inline constexpr std::size_t reviewer_star = 1;  // 1..5 stars at 1..5
inline constexpr std::size_t reviewer_frequency = 6;
inline constexpr std::size_t account_usage = 7;
inline constexpr std::size_t app_total = 8;
inline constexpr std::size_t app_star = 9;  // 1..5 stars at 9..13
inline constexpr std::size_t review_length = 14;
}  // namespace feature

std::span<const std::string_view> feature_names();

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  std::optional<Label> label;
};

/// Throws ValidationError when the profiles do not belong to the review.
FeatureVector extract_features(const Review& review, const ReviewerProfile& reviewer, const AppProfile& app,
                               double store_lifetime_s = kDefaultStoreLifetimeS);

struct FeatureTable {
  std::vector<std::string> review_ids;
  FeatureMatrix features;
  std::vector<std::optional<Label>> labels;
};

/// One row per review in canonical order. Parallel across reviews.
FeatureTable featurize(const ReviewCorpus& corpus, const Profiles& profiles,
                       double store_lifetime_s = kDefaultStoreLifetimeS, int workers = 0);

struct Dataset {
  FeatureMatrix X;
  Labels y;  // 1 = fake
};

/// Labeled rows only.
Dataset labeled_dataset(const FeatureTable& table);

void write_features_csv(std::ostream& out, const FeatureTable& table);
/// Reads the 15 feature columns and the label column (empty = unlabeled).
FeatureTable read_features_csv(const std::filesystem::path& path);

/// Divides each non-zero row by its Euclidean norm.
FeatureMatrix normalize_rows(FeatureMatrix matrix);

struct ScalerState {
  std::vector<double> mean;
  std::vector<double> sd;  // population sd; 0 for a constant column
  std::string fitted_on;

  /// (x - mean) / sd per column, a zero sd acting as 1.
  FeatureMatrix transform(const FeatureMatrix& matrix) const;
};

ScalerState fit_scaler(const FeatureMatrix& fit_matrix);

/// Fits on `fit_matrix` only and transforms `apply_matrix`.
std::pair<ScalerState, FeatureMatrix> standardize(const FeatureMatrix& fit_matrix, const FeatureMatrix& apply_matrix);

/// FNV-1a over the shape and bytes of a matrix, as hex.
std::string fingerprint(const FeatureMatrix& matrix);

}  // namespace fakerev
