#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fakerev/corpus.hpp"

namespace fakerev {

/// Exact Levenshtein distance when it does not exceed `cap`, otherwise empty.
/// Runs a diagonal band of width 2*cap+1 and abandons once every cell in a
/// row exceeds the cap.
std::optional<std::size_t> levenshtein_bounded(std::u32string_view a, std::u32string_view b, std::size_t cap);
std::optional<std::size_t> levenshtein_bounded(std::string_view a_utf8, std::string_view b_utf8, std::size_t cap);

struct DedupResult {
  ReviewCorpus corpus;
  std::size_t removed_count = 0;
};

/// Removes every member of each group of reviews sharing a normalized
/// (title, body) pair.
DedupResult dedup(const ReviewCorpus& corpus);

enum class MatchMethod { exact, fuzzy, ambiguous, none };
std::string_view to_string(MatchMethod method);

struct Candidate {
  std::string id;
  std::string title;
  std::string body;
};

struct MatchResult {
  std::string candidate_id;
  std::optional<std::string> matched_review_id;
  std::size_t distance = 0;
  MatchMethod method = MatchMethod::none;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Read-only search structure over a corpus: normalized "title\nbody" texts
/// bucketed by code-point length.
class MatchIndex {
 public:
  explicit MatchIndex(const ReviewCorpus& corpus);

  MatchResult match(const Candidate& candidate, std::size_t cap) const;
  std::size_t size() const noexcept { return texts_.size(); }

 private:
  struct Entry {
    std::u32string text;
    std::string review_id;
  };
  std::vector<Entry> texts_;               // sorted by (length, review_id)
  std::vector<std::size_t> length_start_;  // first entry with length >= L
};

/// Candidates are matched in parallel; results keep candidate order.
std::vector<MatchResult> match_reviews(const std::vector<Candidate>& candidates, const ReviewCorpus& corpus,
                                       std::size_t cap = 10, int workers = 0);

/// Single-threaded reference for match_reviews.
std::vector<MatchResult> match_reviews_serial(const std::vector<Candidate>& candidates, const ReviewCorpus& corpus,
                                              std::size_t cap = 10);

/// The concatenated text both sides of a match are compared on.
std::u32string match_text(std::string_view title, std::string_view body);

std::vector<Candidate> load_candidates(const std::filesystem::path& path);
void write_match_csv(std::ostream& out, const std::vector<MatchResult>& results);

}  // namespace fakerev
