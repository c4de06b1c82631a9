#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "fakerev/corpus.hpp"

namespace fakerev::syngen {

struct PopulationParams {
  double mean_reviews_per_reviewer = 1.0;
  double mean_frequency_days = 1.0;
  double mean_lifetime_days = 0.0;  // recorded only; lifetime follows from the gap draws
  StarFractions rating_distribution{0.2, 0.2, 0.2, 0.2, 0.2};  // index i holds i+1 stars
  double length_median_chars = 50.0;
  double length_mean_chars = 50.0;
  double app_zipf_exponent = 1.0;  // app preference ~ rank^-s
  double vote_probability = 0.0;   // chance that a review carries helpful votes

  /// Throws std::invalid_argument on a parameter outside its domain.
  void validate() const;
  /// Rating distribution scaled to sum 1.
  StarFractions normalized_ratings() const;
  /// Log-normal location and scale: mu = ln(median), sigma^2 = 2 ln(mean/median).
  double length_mu() const;
  double length_sigma() const;
};

PopulationParams fake_defaults();
PopulationParams regular_defaults();

/// Whether the per-population counts are reviewers or reviews. In review
/// mode reviewers are added until the total is reached and the last one is
/// truncated.
enum class CountUnit { reviewers, reviews };

struct SynConfig {
  PopulationParams fake = fake_defaults();
  PopulationParams regular = regular_defaults();
  std::size_t n_fake = 0;
  std::size_t n_regular = 0;
  CountUnit unit = CountUnit::reviewers;
  std::size_t n_apps = 500;
  std::uint64_t seed = 0;
};

struct SynCorpus {
  ReviewCorpus corpus;
  std::map<std::string, AppMetadata> apps;
};

/// Each reviewer draws from engines derived from (seed, population, index),
/// so the corpus is the same for any worker count.
SynCorpus generate(const SynConfig& config, int workers = 0);

SynCorpus generate(const PopulationParams& fake, const PopulationParams& regular, std::size_t n_fake_reviewers,
                   std::size_t n_regular_reviewers, std::size_t n_apps, std::uint64_t seed);

/// The configuration as a JSON document, for the sidecar file.
std::string params_json(const SynConfig& config);

}  // namespace fakerev::syngen
