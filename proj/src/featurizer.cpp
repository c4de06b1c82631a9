#include "fakerev/featurizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fakerev/csv.hpp"
#include "fakerev/parallel.hpp"
#include "fakerev/text.hpp"

namespace fakerev {

namespace {

constexpr std::string_view kNames[kFeatureCount] = {
    "reviewer_total",     "reviewer_star1_frac", "reviewer_star2_frac", "reviewer_star3_frac",
    "reviewer_star4_frac", "reviewer_star5_frac", "reviewer_frequency_s", "account_usage_s",
    "app_total",          "app_star1_frac",      "app_star2_frac",      "app_star3_frac",
    "app_star4_frac",     "app_star5_frac",      "review_length_chars",
};

}  // namespace

std::span<const std::string_view> feature_names() { return kNames; }

FeatureVector extract_features(const Review& review, const ReviewerProfile& reviewer, const AppProfile& app,
                               double store_lifetime_s) {
  if (reviewer.reviewer_id != review.reviewer_id)
    throw ValidationError("review " + review.review_id + ": reviewer profile " + reviewer.reviewer_id + " does not match");
  if (app.app_id != review.app_id)
    throw ValidationError("review " + review.review_id + ": app profile " + app.app_id + " does not match");

  FeatureVector fv;
  auto& v = fv.values;
  v[feature::reviewer_total] = static_cast<double>(reviewer.total_reviews);
  for (std::size_t s = 0; s < 5; ++s) v[feature::reviewer_star + s] = reviewer.per_star_fraction[s];
  v[feature::reviewer_frequency] = reviewer.review_frequency_s.value_or(store_lifetime_s);
  v[feature::account_usage] = static_cast<double>(reviewer.account_lifetime_s);
  v[feature::app_total] = static_cast<double>(app.total_reviews);
  for (std::size_t s = 0; s < 5; ++s) v[feature::app_star + s] = app.per_star_fraction[s];
  v[feature::review_length] = static_cast<double>(text::scalar_count(review.title) + text::scalar_count(review.body));
  fv.label = review.label;
  return fv;
}

FeatureTable featurize(const ReviewCorpus& corpus, const Profiles& profiles, double store_lifetime_s, int workers) {
  const auto& reviews = corpus.reviews();
  FeatureTable table;
  table.features = FeatureMatrix(reviews.size(), kFeatureCount);
  table.labels.resize(reviews.size());
  table.review_ids.resize(reviews.size());
  parallel_for(reviews.size(), workers, [&](std::size_t idx) {
    const Review& r = reviews[idx];
    const auto fv = extract_features(r, profiles.reviewers.at(r.reviewer_id), profiles.apps.at(r.app_id), store_lifetime_s);
    std::ranges::copy(fv.values, table.features.row(idx).begin());
    table.labels[idx] = fv.label;
    table.review_ids[idx] = r.review_id;
  });
  return table;
}

Dataset labeled_dataset(const FeatureTable& table) {
  Dataset ds;
  ds.X = FeatureMatrix(0, table.features.cols());
  for (std::size_t i = 0; i < table.features.rows(); ++i) {
    if (!table.labels[i]) continue;
    ds.X.append_row(table.features.row(i));
    ds.y.push_back(*table.labels[i] == Label::fake ? 1 : 0);
  }
  return ds;
}

void write_features_csv(std::ostream& out, const FeatureTable& table) {
  for (auto name : kNames) out << name << ',';
  out << "label\n";
  for (std::size_t i = 0; i < table.features.rows(); ++i) {
    for (double v : table.features.row(i)) out << csv::number(v) << ',';
    if (table.labels[i]) out << to_string(*table.labels[i]);
    out << '\n';
  }
}

FeatureTable read_features_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("feature file is empty");
  const auto header = csv::split(line);
  if (header.size() != kFeatureCount + 1) throw ValidationError("feature header must have 16 columns", 1);
  for (std::size_t j = 0; j < kFeatureCount; ++j)
    if (header[j] != kNames[j]) throw ValidationError("unexpected feature column '" + header[j] + "'", 1);

  FeatureTable table;
  table.features = FeatureMatrix(0, kFeatureCount);
  std::size_t line_no = 1;
  std::array<double, kFeatureCount> row{};
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split(line);
    if (fields.size() != kFeatureCount + 1) throw ValidationError("expected 16 fields", line_no);
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      const auto& f = fields[j];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row[j]);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(row[j]))
        throw ValidationError("bad number '" + f + "' in column " + std::string(kNames[j]), line_no);
    }
    table.features.append_row(row);
    if (fields.back().empty()) {
      table.labels.emplace_back();
    } else {
      auto label = parse_label(fields.back());
      if (!label) throw ValidationError("bad label '" + fields.back() + "'", line_no);
      table.labels.push_back(label);
    }
    table.review_ids.push_back(std::to_string(line_no - 1));
  }
  return table;
}

FeatureMatrix normalize_rows(FeatureMatrix matrix) {
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    auto row = matrix.row(r);
    double sq = 0.0;
    for (double v : row) sq += v * v;
    if (sq == 0.0) continue;
    const double norm = std::sqrt(sq);
    for (double& v : row) v /= norm;
  }
  return matrix;
}

ScalerState fit_scaler(const FeatureMatrix& fit) {
  if (fit.rows() < 2) throw std::invalid_argument("fit_scaler: need at least 2 rows");
  const std::size_t d = fit.cols();
  ScalerState s;
  s.mean.assign(d, 0.0);
  s.sd.assign(d, 0.0);
  for (std::size_t r = 0; r < fit.rows(); ++r)
    for (std::size_t c = 0; c < d; ++c) s.mean[c] += fit(r, c);
  for (auto& m : s.mean) m /= static_cast<double>(fit.rows());
  for (std::size_t r = 0; r < fit.rows(); ++r)
    for (std::size_t c = 0; c < d; ++c) s.sd[c] += (fit(r, c) - s.mean[c]) * (fit(r, c) - s.mean[c]);
  for (auto& v : s.sd) v = std::sqrt(v / static_cast<double>(fit.rows()));
  s.fitted_on = fingerprint(fit);
  return s;
}

FeatureMatrix ScalerState::transform(const FeatureMatrix& matrix) const {
  if (matrix.cols() != mean.size()) throw std::invalid_argument("ScalerState::transform: width mismatch");
  FeatureMatrix out = matrix;
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = (out(r, c) - mean[c]) / (sd[c] > 0.0 ? sd[c] : 1.0);
  return out;
}

std::pair<ScalerState, FeatureMatrix> standardize(const FeatureMatrix& fit_matrix, const FeatureMatrix& apply_matrix) {
  ScalerState s = fit_scaler(fit_matrix);
  FeatureMatrix applied = s.transform(apply_matrix);
  return {std::move(s), std::move(applied)};
}

std::string fingerprint(const FeatureMatrix& matrix) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ull;
    }
  };
  const std::uint64_t shape[2] = {matrix.rows(), matrix.cols()};
  mix(shape, sizeof shape);
  mix(matrix.data().data(), matrix.data().size() * sizeof(double));
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace fakerev
