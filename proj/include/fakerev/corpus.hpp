#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fakerev {

enum class Label : std::uint8_t { regular = 0, fake = 1 };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

/// Raised when input data breaks a documented invariant. `line` is 1-based
/// and zero when the error is not tied to an input line.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Review {
  std::string review_id;
  std::string app_id;
  std::string reviewer_id;
  std::string title;
  std::string body;
  int rating = 1;
  std::int64_t timestamp = 0;
  std::int64_t helpful_votes = 0;
  std::int64_t unhelpful_votes = 0;
  std::optional<Label> label;
};

/// Throws ValidationError when a review breaks a field invariant.
void validate(const Review& review);

using StarFractions = std::array<double, 5>;

struct ReviewerProfile {
  std::string reviewer_id;
  std::size_t total_reviews = 0;
  StarFractions per_star_fraction{};
  std::int64_t first_ts = 0;
  std::int64_t last_ts = 0;
  std::int64_t account_lifetime_s = 0;
  std::optional<double> review_frequency_s;  // mean gap; absent for a single review
};

struct AppProfile {
  std::string app_id;
  std::size_t total_reviews = 0;
  StarFractions per_star_fraction{};
  std::optional<std::string> category;
  std::optional<std::int64_t> price_cents;
};

struct AppMetadata {
  std::string app_id;
  std::optional<std::string> category;
  std::optional<std::int64_t> price_cents;
};

/// Immutable set of reviews in canonical (review_id) order with reviewer and
/// app indexes that partition it.
class ReviewCorpus {
 public:
  ReviewCorpus() = default;

  /// Sorts by review_id; throws ValidationError on a duplicate id or an
  /// invalid review.
  explicit ReviewCorpus(std::vector<Review> reviews);

  const std::vector<Review>& reviews() const noexcept { return reviews_; }
  std::size_t size() const noexcept { return reviews_.size(); }
  bool empty() const noexcept { return reviews_.empty(); }

  const std::map<std::string, std::vector<std::string>>& reviewer_index() const noexcept { return by_reviewer_; }
  const std::map<std::string, std::vector<std::string>>& app_index() const noexcept { return by_app_; }

  const Review* find(std::string_view review_id) const;

 private:
  std::vector<Review> reviews_;
  std::map<std::string, std::vector<std::string>> by_reviewer_;
  std::map<std::string, std::vector<std::string>> by_app_;
};

struct LoadResult {
  ReviewCorpus corpus;
  std::size_t skipped = 0;  // malformed records dropped in lenient mode
  std::size_t records = 0;  // non-blank lines seen
};

/// Parses one JSON review record. Throws ValidationError (without a line).
Review parse_review(std::string_view json_line);
std::string format_review(const Review& review);

/// Newline-delimited JSON reviews. In strict mode the first malformed record
/// rejects the file; otherwise it is skipped and counted. Duplicate ids are
/// always fatal.
LoadResult load_reviews(const std::filesystem::path& path, bool strict);
LoadResult read_reviews(std::istream& in, bool strict);
void write_reviews(std::ostream& out, const ReviewCorpus& corpus);

std::map<std::string, AppMetadata> load_app_metadata(const std::filesystem::path& path);
void write_app_metadata(std::ostream& out, const std::map<std::string, AppMetadata>& apps);

struct Profiles {
  std::map<std::string, ReviewerProfile> reviewers;
  std::map<std::string, AppProfile> apps;
};

Profiles build_profiles(const ReviewCorpus& corpus, const std::map<std::string, AppMetadata>* metadata = nullptr);

}  // namespace fakerev
