#include "fakerev/matcher.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "fakerev/csv.hpp"
#include "fakerev/parallel.hpp"
#include "fakerev/text.hpp"

namespace fakerev {

std::optional<std::size_t> levenshtein_bounded(std::u32string_view a, std::u32string_view b, std::size_t cap) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if ((n > m ? n - m : m - n) > cap) return std::nullopt;
  if (n == 0) return m;
  if (m == 0) return n;

  const std::size_t big = cap + 1;
  std::vector<std::size_t> prev(m + 1, big), cur(m + 1, big);
  for (std::size_t j = 0; j <= std::min(m, cap); ++j) prev[j] = j;

  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > cap ? i - cap : 0;
    const std::size_t hi = std::min(m, i + cap);
    std::size_t start = lo;
    std::size_t row_min = big;
    if (lo == 0) {
      cur[0] = i;
      row_min = i;
      start = 1;
    } else {
      cur[lo - 1] = big;
    }
    const char32_t ai = a[i - 1];
    for (std::size_t j = start; j <= hi; ++j) {
      std::size_t v = prev[j - 1] + (ai == b[j - 1] ? 0 : 1);
      v = std::min({v, prev[j] + 1, cur[j - 1] + 1, big});
      cur[j] = v;
      row_min = std::min(row_min, v);
    }
    if (hi + 1 <= m) cur[hi + 1] = big;
    if (row_min > cap) return std::nullopt;
    std::swap(prev, cur);
  }
  return prev[m] <= cap ? std::optional<std::size_t>(prev[m]) : std::nullopt;
}

std::optional<std::size_t> levenshtein_bounded(std::string_view a, std::string_view b, std::size_t cap) {
  return levenshtein_bounded(text::to_u32(a), text::to_u32(b), cap);
}

DedupResult dedup(const ReviewCorpus& corpus) {
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  std::vector<std::pair<std::string, std::string>> keys;
  keys.reserve(corpus.size());
  for (const auto& r : corpus.reviews()) {
    keys.emplace_back(text::normalize(r.title), text::normalize(r.body));
    ++counts[keys.back()];
  }
  std::vector<Review> kept;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (counts[keys[i]] == 1) kept.push_back(corpus.reviews()[i]);
  DedupResult out;
  out.removed_count = corpus.size() - kept.size();
  out.corpus = ReviewCorpus(std::move(kept));
  return out;
}

std::string_view to_string(MatchMethod method) {
  switch (method) {
    case MatchMethod::exact: return "exact";
    case MatchMethod::fuzzy: return "fuzzy";
    case MatchMethod::ambiguous: return "ambiguous";
    case MatchMethod::none: return "none";
  }
  return "none";
}

std::u32string match_text(std::string_view title, std::string_view body) {
  return text::to_u32(text::normalize(title) + "\n" + text::normalize(body));
}

MatchIndex::MatchIndex(const ReviewCorpus& corpus) {
  texts_.reserve(corpus.size());
  for (const auto& r : corpus.reviews()) texts_.push_back({match_text(r.title, r.body), r.review_id});
  std::stable_sort(texts_.begin(), texts_.end(),
                   [](const Entry& x, const Entry& y) { return x.text.size() < y.text.size(); });
  const std::size_t max_len = texts_.empty() ? 0 : texts_.back().text.size();
  // length_start_[L] is the first entry of length >= L.
  length_start_.resize(max_len + 2);
  std::size_t i = 0;
  for (std::size_t len = 0; len < length_start_.size(); ++len) {
    while (i < texts_.size() && texts_[i].text.size() < len) ++i;
    length_start_[len] = i;
  }
}

MatchResult MatchIndex::match(const Candidate& candidate, std::size_t cap) const {
  MatchResult result;
  result.candidate_id = candidate.id;
  const std::u32string query = match_text(candidate.title, candidate.body);
  const std::size_t len = query.size();

  auto bucket = [this](std::size_t l) -> std::pair<std::size_t, std::size_t> {
    if (l + 1 >= length_start_.size()) return {texts_.size(), texts_.size()};
    return {length_start_[l], length_start_[l + 1]};
  };

  std::size_t best = cap;
  std::vector<const Entry*> ties;
  auto scan = [&](std::size_t l) {
    auto [begin, end] = bucket(l);
    for (std::size_t i = begin; i < end; ++i) {
      auto d = texts_[i].text == query ? std::optional<std::size_t>(0)
                                       : levenshtein_bounded(query, texts_[i].text, best);
      if (!d) continue;
      if (*d < best || ties.empty()) {
        best = *d;
        ties.assign(1, &texts_[i]);
      } else if (*d == best) {
        ties.push_back(&texts_[i]);
      }
    }
  };

  // Scan lengths by increasing distance from the query length so the bound
  // tightens early. An exact match can only come from the same length.
  scan(len);
  for (std::size_t off = 1; off <= cap; ++off) {
    if (!ties.empty() && off > best) break;
    if (off <= len) scan(len - off);
    scan(len + off);
  }

  if (ties.empty()) return result;
  result.distance = best;
  if (ties.size() > 1) {
    result.method = MatchMethod::ambiguous;
    return result;
  }
  result.method = best == 0 ? MatchMethod::exact : MatchMethod::fuzzy;
  result.matched_review_id = ties.front()->review_id;
  return result;
}

std::vector<MatchResult> match_reviews(const std::vector<Candidate>& candidates, const ReviewCorpus& corpus,
                                       std::size_t cap, int workers) {
  const MatchIndex index(corpus);
  std::vector<MatchResult> results(candidates.size());
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_workers(workers))
  for (std::ptrdiff_t i = 0; i < n; ++i) results[static_cast<std::size_t>(i)] = index.match(candidates[static_cast<std::size_t>(i)], cap);
  return results;
}

std::vector<MatchResult> match_reviews_serial(const std::vector<Candidate>& candidates, const ReviewCorpus& corpus,
                                              std::size_t cap) {
  const MatchIndex index(corpus);
  std::vector<MatchResult> results;
  results.reserve(candidates.size());
  for (const auto& c : candidates) results.push_back(index.match(c, cap));
  return results;
}

std::vector<Candidate> load_candidates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open candidate file " + path.string());
  std::vector<Candidate> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) throw ValidationError("candidate record is not a JSON object", line_no);
    for (const char* key : {"id", "title", "body"})
      if (!obj.contains(key) || !obj[key].is_string())
        throw ValidationError(std::string("candidate field '") + key + "' missing or not a string", line_no);
    out.push_back({obj["id"].get<std::string>(), obj["title"].get<std::string>(), obj["body"].get<std::string>()});
  }
  return out;
}

void write_match_csv(std::ostream& out, const std::vector<MatchResult>& results) {
  out << "candidate_id,matched_review_id,distance,method\n";
  for (const auto& r : results) {
    out << csv::field(r.candidate_id) << ',' << csv::field(r.matched_review_id.value_or("")) << ',';
    if (r.method != MatchMethod::none) out << r.distance;
    out << ',' << to_string(r.method) << '\n';
  }
}

}  // namespace fakerev
