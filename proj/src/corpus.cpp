#include "fakerev/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

namespace fakerev {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Label label) { return label == Label::fake ? "fake" : "regular"; }

std::optional<Label> parse_label(std::string_view text) {
  if (text == "fake") return Label::fake;
  if (text == "regular") return Label::regular;
  return std::nullopt;
}

ValidationError::ValidationError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

void validate(const Review& r) {
  if (r.review_id.empty()) throw ValidationError("empty review_id");
  if (r.rating < 1 || r.rating > 5)
    throw ValidationError("review " + r.review_id + ": rating " + std::to_string(r.rating) + " outside 1..5");
  if (r.timestamp < 0) throw ValidationError("review " + r.review_id + ": negative timestamp");
  if (r.helpful_votes < 0 || r.unhelpful_votes < 0) throw ValidationError("review " + r.review_id + ": negative votes");
}

ReviewCorpus::ReviewCorpus(std::vector<Review> reviews) : reviews_(std::move(reviews)) {
  std::sort(reviews_.begin(), reviews_.end(),
            [](const Review& a, const Review& b) { return a.review_id < b.review_id; });
  for (std::size_t i = 0; i < reviews_.size(); ++i) {
    validate(reviews_[i]);
    if (i > 0 && reviews_[i].review_id == reviews_[i - 1].review_id)
      throw ValidationError("duplicate review_id " + reviews_[i].review_id);
    by_reviewer_[reviews_[i].reviewer_id].push_back(reviews_[i].review_id);
    by_app_[reviews_[i].app_id].push_back(reviews_[i].review_id);
  }
}

const Review* ReviewCorpus::find(std::string_view review_id) const {
  auto it = std::lower_bound(reviews_.begin(), reviews_.end(), review_id,
                             [](const Review& r, std::string_view id) { return r.review_id < id; });
  return it != reviews_.end() && it->review_id == review_id ? &*it : nullptr;
}

namespace {

const std::set<std::string, std::less<>> kReviewFields = {
    "review_id", "app_id", "reviewer_id", "title", "body", "rating",
    "timestamp", "helpful_votes", "unhelpful_votes", "label"};

template <typename T>
T required(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("missing field '") + key + "'");
  if constexpr (std::is_same_v<T, std::string>) {
    if (!it->is_string()) throw ValidationError(std::string("field '") + key + "' must be a string");
  } else {
    if (!it->is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  }
  return it->get<T>();
}

}  // namespace

Review parse_review(std::string_view line) {
  json obj = json::parse(line.begin(), line.end(), nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) throw ValidationError("record is not a JSON object");
  for (const auto& item : obj.items())
    if (!kReviewFields.contains(item.key())) throw ValidationError("unknown field '" + item.key() + "'");

  Review r;
  r.review_id = required<std::string>(obj, "review_id");
  r.app_id = required<std::string>(obj, "app_id");
  r.reviewer_id = required<std::string>(obj, "reviewer_id");
  r.title = required<std::string>(obj, "title");
  r.body = required<std::string>(obj, "body");
  r.rating = static_cast<int>(required<std::int64_t>(obj, "rating"));
  r.timestamp = required<std::int64_t>(obj, "timestamp");
  r.helpful_votes = required<std::int64_t>(obj, "helpful_votes");
  r.unhelpful_votes = required<std::int64_t>(obj, "unhelpful_votes");
  if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw ValidationError("field 'label' must be a string");
    auto label = parse_label(it->get<std::string>());
    if (!label) throw ValidationError("label must be \"fake\" or \"regular\"");
    r.label = label;
  }
  validate(r);
  return r;
}

std::string format_review(const Review& r) {
  ordered_json obj;
  obj["review_id"] = r.review_id;
  obj["app_id"] = r.app_id;
  obj["reviewer_id"] = r.reviewer_id;
  obj["title"] = r.title;
  obj["body"] = r.body;
  obj["rating"] = r.rating;
  obj["timestamp"] = r.timestamp;
  obj["helpful_votes"] = r.helpful_votes;
  obj["unhelpful_votes"] = r.unhelpful_votes;
  if (r.label) obj["label"] = std::string(to_string(*r.label));
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

LoadResult read_reviews(std::istream& in, bool strict) {
  LoadResult result;
  std::vector<Review> reviews;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++result.records;
    try {
      reviews.push_back(parse_review(line));
    } catch (const ValidationError& e) {
      if (strict) throw ValidationError(e.what(), line_no);
      ++result.skipped;
    }
  }
  result.corpus = ReviewCorpus(std::move(reviews));
  return result;
}

LoadResult load_reviews(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open review file " + path.string());
  return read_reviews(in, strict);
}

void write_reviews(std::ostream& out, const ReviewCorpus& corpus) {
  for (const auto& r : corpus.reviews()) out << format_review(r) << '\n';
}

std::map<std::string, AppMetadata> load_app_metadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open app metadata file " + path.string());
  std::map<std::string, AppMetadata> apps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("app_id") || !obj["app_id"].is_string())
      throw ValidationError("app metadata record needs a string app_id", line_no);
    AppMetadata meta;
    meta.app_id = obj["app_id"].get<std::string>();
    if (auto it = obj.find("category"); it != obj.end() && it->is_string()) meta.category = it->get<std::string>();
    if (auto it = obj.find("price_cents"); it != obj.end() && !it->is_null()) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
        throw ValidationError("price_cents must be a non-negative integer", line_no);
      meta.price_cents = it->get<std::int64_t>();
    }
    if (!apps.emplace(meta.app_id, meta).second) throw ValidationError("duplicate app_id " + meta.app_id, line_no);
  }
  return apps;
}

void write_app_metadata(std::ostream& out, const std::map<std::string, AppMetadata>& apps) {
  for (const auto& [id, meta] : apps) {
    ordered_json obj;
    obj["app_id"] = id;
    obj["category"] = meta.category ? json(*meta.category) : json(nullptr);
    obj["price_cents"] = meta.price_cents ? json(*meta.price_cents) : json(nullptr);
    out << obj.dump() << '\n';
  }
}

namespace {

StarFractions fractions(const std::array<std::size_t, 5>& counts, std::size_t total) {
  StarFractions f{};
  for (std::size_t s = 0; s < 5; ++s) f[s] = static_cast<double>(counts[s]) / static_cast<double>(total);
  return f;
}

}  // namespace

Profiles build_profiles(const ReviewCorpus& corpus, const std::map<std::string, AppMetadata>* metadata) {
  Profiles out;
  for (const auto& [reviewer_id, ids] : corpus.reviewer_index()) {
    std::array<std::size_t, 5> counts{};
    std::vector<std::int64_t> times;
    times.reserve(ids.size());
    for (const auto& id : ids) {
      const Review* r = corpus.find(id);
      ++counts[static_cast<std::size_t>(r->rating - 1)];
      times.push_back(r->timestamp);
    }
    auto [lo, hi] = std::minmax_element(times.begin(), times.end());
    ReviewerProfile p;
    p.reviewer_id = reviewer_id;
    p.total_reviews = ids.size();
    p.per_star_fraction = fractions(counts, ids.size());
    p.first_ts = *lo;
    p.last_ts = *hi;
    p.account_lifetime_s = *hi - *lo;
    if (ids.size() >= 2)
      p.review_frequency_s = static_cast<double>(p.account_lifetime_s) / static_cast<double>(ids.size() - 1);
    out.reviewers.emplace(reviewer_id, std::move(p));
  }
  for (const auto& [app_id, ids] : corpus.app_index()) {
    std::array<std::size_t, 5> counts{};
    for (const auto& id : ids) ++counts[static_cast<std::size_t>(corpus.find(id)->rating - 1)];
    AppProfile p;
    p.app_id = app_id;
    p.total_reviews = ids.size();
    p.per_star_fraction = fractions(counts, ids.size());
    if (metadata) {
      if (auto it = metadata->find(app_id); it != metadata->end()) {
        p.category = it->second.category;
        p.price_cents = it->second.price_cents;
      }
    }
    out.apps.emplace(app_id, std::move(p));
  }
  return out;
}

}  // namespace fakerev
