// Small builders shared by the unit tests.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fakerev/corpus.hpp"
#include "fakerev/matrix.hpp"

namespace testing {

inline fakerev::Review review(std::string id, std::string reviewer, std::string app, int rating, std::int64_t ts,
                              std::string title = "t", std::string body = "b") {
  fakerev::Review r;
  r.review_id = std::move(id);
  r.reviewer_id = std::move(reviewer);
  r.app_id = std::move(app);
  r.rating = rating;
  r.timestamp = ts;
  r.title = std::move(title);
  r.body = std::move(body);
  return r;
}

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("fakerev-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline fakerev::FeatureMatrix matrix(const std::vector<std::vector<double>>& rows) {
  fakerev::FeatureMatrix m(0, rows.empty() ? 0 : rows[0].size());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

/// Gaussian blobs: the first `informative` columns are shifted by +-shift
/// between classes, the rest are pure noise. Classes alternate.
inline std::pair<fakerev::FeatureMatrix, fakerev::Labels> blobs(std::size_t n, std::size_t d, std::size_t informative,
                                                                double shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  fakerev::FeatureMatrix X(n, d);
  fakerev::Labels y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<std::uint8_t>(i % 2);
    for (std::size_t j = 0; j < d; ++j) X(i, j) = noise(rng) + (j < informative ? (y[i] ? shift : -shift) : 0.0);
  }
  return {X, y};
}

/// Random lowercase words separated by single spaces, exactly `length`
/// code points long.
inline std::string random_text(std::mt19937_64& rng, std::size_t length) {
  std::uniform_int_distribution<int> letter('a', 'z');
  std::uniform_int_distribution<int> word_len(2, 9);
  std::string out;
  int left_in_word = word_len(rng);
  while (out.size() < length) {
    if (left_in_word == 0 && out.size() + 1 < length) {
      out += ' ';
      left_in_word = word_len(rng);
    } else {
      out += static_cast<char>(letter(rng));
      if (left_in_word > 0) --left_in_word;
    }
  }
  return out;
}

/// Applies `edits` random single-letter substitutions, insertions and
/// deletions. Spaces are never touched.
inline std::string corrupt(std::string s, std::size_t edits, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter('a', 'z');
  std::uniform_int_distribution<int> op(0, 2);
  for (std::size_t e = 0; e < edits;) {
    const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
    if (s[pos] == ' ') continue;
    switch (op(rng)) {
      case 0: {
        char c;
        do c = static_cast<char>(letter(rng));
        while (c == s[pos]);
        s[pos] = c;
        break;
      }
      case 1: s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<char>(letter(rng))); break;
      default:
        if (s.size() < 3 || (pos > 0 && s[pos - 1] == ' ' && pos + 1 < s.size() && s[pos + 1] == ' ')) continue;
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    ++e;
  }
  return s;
}

}  // namespace testing
