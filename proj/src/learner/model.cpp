#include "fakerev/learner/model.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fakerev {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::gnb: return "gnb";
    case Algorithm::tree: return "dt";
    case Algorithm::forest: return "rf";
  }
  return "rf";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "gnb" || text == "nb") return Algorithm::gnb;
  if (text == "dt" || text == "tree") return Algorithm::tree;
  if (text == "rf" || text == "forest") return Algorithm::forest;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "' (expected gnb, dt or rf)");
}

ModelSpec ModelSpec::reseeded(std::uint64_t seed) const {
  ModelSpec s = *this;
  s.tree.seed = seed;
  s.forest.seed = seed;
  return s;
}

Model train(const ModelSpec& spec, const FeatureMatrix& X, std::span<const std::uint8_t> y, int workers) {
  switch (spec.algorithm) {
    case Algorithm::gnb: return train_gnb(X, y);
    case Algorithm::tree: return train_tree(X, y, spec.tree);
    case Algorithm::forest: return train_forest(X, y, spec.forest, workers);
  }
  throw std::invalid_argument("train: unknown algorithm");
}

std::vector<double> predict_score(const Model& model, const FeatureMatrix& X) {
  if (X.cols() != n_features(model)) throw std::invalid_argument("predict_score: feature dimension mismatch");
  std::vector<double> scores(X.rows());
  std::visit([&](const auto& m) {
    for (std::size_t i = 0; i < X.rows(); ++i) scores[i] = m.score(X.row(i));
  }, model);
  return scores;
}

std::size_t n_features(const Model& model) {
  return std::visit([](const auto& m) { return m.n_features(); }, model);
}

namespace {

Importance from_counts(const std::vector<std::size_t>& counts) {
  Importance imp;
  imp.values.assign(counts.size(), 0.0);
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return imp;
  for (std::size_t j = 0; j < counts.size(); ++j)
    imp.values[j] = static_cast<double>(counts[j]) / static_cast<double>(total);
  imp.defined = true;
  return imp;
}

}  // namespace

Importance feature_importance(const TreeModel& model) { return from_counts(model.split_counts()); }

Importance feature_importance(const ForestModel& model) {
  std::vector<std::size_t> counts(model.n_features(), 0);
  for (const auto& t : model.trees()) {
    const auto c = t.split_counts();
    for (std::size_t j = 0; j < c.size(); ++j) counts[j] += c[j];
  }
  return from_counts(counts);
}

Importance feature_importance(const Model& model) {
  if (const auto* t = std::get_if<TreeModel>(&model)) return feature_importance(*t);
  if (const auto* f = std::get_if<ForestModel>(&model)) return feature_importance(*f);
  throw std::invalid_argument("feature_importance: naive Bayes models have no feature importances");
}

FeatureMatrix apply_preprocessing(const FeatureMatrix& X, const Preprocessing& prep, const ScalerState* scaler) {
  FeatureMatrix out = prep.normalize_rows ? normalize_rows(X) : X;
  if (prep.standardize && scaler) out = scaler->transform(out);
  return out;
}

TrainedModel fit_pipeline(const ModelSpec& spec, const FeatureMatrix& X, std::span<const std::uint8_t> y,
                          const Preprocessing& prep, int workers) {
  TrainedModel out;
  out.preprocessing = prep;
  FeatureMatrix train_x = prep.normalize_rows ? normalize_rows(X) : X;
  if (prep.standardize) {
    out.scaler = fit_scaler(train_x);
    train_x = out.scaler->transform(train_x);
  }
  out.model = train(spec, train_x, y, workers);
  return out;
}

std::vector<double> predict_score(const TrainedModel& trained, const FeatureMatrix& X) {
  return predict_score(trained.model, apply_preprocessing(X, trained.preprocessing, trained.scaler ? &*trained.scaler : nullptr));
}

namespace {

ordered_json tree_json(const TreeModel& t) {
  ordered_json j;
  j["n_features"] = t.n_features();
  json nodes = json::array();
  for (const auto& n : t.nodes()) nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.score}));
  j["nodes"] = std::move(nodes);
  return j;
}

TreeModel tree_from(const json& j) {
  const auto d = j.at("n_features").get<std::size_t>();
  std::vector<TreeNode> nodes;
  for (const auto& a : j.at("nodes")) {
    TreeNode n{a.at(0).get<std::int32_t>(), a.at(1).get<double>(), a.at(2).get<std::int32_t>(),
               a.at(3).get<std::int32_t>(), a.at(4).get<double>()};
    nodes.push_back(n);
  }
  const auto count = static_cast<std::int32_t>(nodes.size());
  if (count == 0) throw std::invalid_argument("model: empty tree");
  for (const auto& n : nodes)
    if (n.feature >= 0 && (static_cast<std::size_t>(n.feature) >= d || n.left <= 0 || n.right <= 0 ||
                           n.left >= count || n.right >= count))
      throw std::invalid_argument("model: malformed tree node");
  return TreeModel(std::move(nodes), d);
}

}  // namespace

std::string serialize(const TrainedModel& trained) {
  ordered_json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelFormatVersion;
  ordered_json prep;
  prep["normalize_rows"] = trained.preprocessing.normalize_rows;
  prep["standardize"] = trained.preprocessing.standardize;
  doc["preprocessing"] = prep;
  if (trained.scaler) {
    ordered_json s;
    s["mean"] = trained.scaler->mean;
    s["sd"] = trained.scaler->sd;
    s["fitted_on"] = trained.scaler->fitted_on;
    doc["scaler"] = s;
  } else {
    doc["scaler"] = nullptr;
  }
  doc["feature_names"] = trained.feature_names;

  std::visit([&doc](const auto& m) {
    using T = std::decay_t<decltype(m)>;
    if constexpr (std::is_same_v<T, NBModel>) {
      doc["algorithm"] = "gnb";
      ordered_json j;
      j["log_prior"] = m.log_prior;
      j["mean"] = m.mean;
      j["var"] = m.var;
      doc["model"] = j;
    } else if constexpr (std::is_same_v<T, TreeModel>) {
      doc["algorithm"] = "dt";
      doc["model"] = tree_json(m);
    } else {
      doc["algorithm"] = "rf";
      ordered_json trees = ordered_json::array();
      for (const auto& t : m.trees()) trees.push_back(tree_json(t));
      ordered_json j;
      j["trees"] = std::move(trees);
      doc["model"] = j;
    }
  }, trained.model);
  return doc.dump(1);
}

TrainedModel deserialize(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw std::invalid_argument("model: not a JSON document");
  if (doc.value("format", "") != kModelFormat) throw std::invalid_argument("model: missing format tag");
  if (doc.value("version", -1) != kModelFormatVersion)
    throw std::invalid_argument("model: unsupported version " + doc.value("version", json(-1)).dump());
  try {
    TrainedModel out;
    out.preprocessing.normalize_rows = doc.at("preprocessing").at("normalize_rows").get<bool>();
    out.preprocessing.standardize = doc.at("preprocessing").at("standardize").get<bool>();
    if (!doc.at("scaler").is_null()) {
      ScalerState s;
      s.mean = doc["scaler"].at("mean").get<std::vector<double>>();
      s.sd = doc["scaler"].at("sd").get<std::vector<double>>();
      s.fitted_on = doc["scaler"].at("fitted_on").get<std::string>();
      out.scaler = std::move(s);
    }
    out.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    const auto algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
    const auto& m = doc.at("model");
    switch (algorithm) {
      case Algorithm::gnb: {
        NBModel nb;
        nb.log_prior = m.at("log_prior").get<std::array<double, 2>>();
        nb.mean = m.at("mean").get<std::array<std::vector<double>, 2>>();
        nb.var = m.at("var").get<std::array<std::vector<double>, 2>>();
        out.model = std::move(nb);
        break;
      }
      case Algorithm::tree: out.model = tree_from(m); break;
      case Algorithm::forest: {
        std::vector<TreeModel> trees;
        for (const auto& t : m.at("trees")) trees.push_back(tree_from(t));
        if (trees.empty()) throw std::invalid_argument("model: forest without trees");
        out.model = ForestModel(std::move(trees));
        break;
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const TrainedModel& trained) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file " + path.string());
  out << serialize(trained) << '\n';
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

}  // namespace fakerev
