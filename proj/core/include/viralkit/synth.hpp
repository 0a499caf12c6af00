// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viralkit/corpus.hpp"
#include "viralkit/rng.hpp"

namespace viralkit {

/// Label rule planted in synthetic corpora:
///   is_viral = (retweets / max(followers, 1) > ratio_threshold) XOR Bernoulli(label_noise)
struct ViralRule {
  double ratio_threshold = 2.16;
  double label_noise = 0.0;
};

/// Class-conditional content propensities. Defaults are the published
/// viral / non-viral shares of each content feature.
struct TextModel {
  double media_viral = 0.621;
  double media_nonviral = 0.217;
  double hashtag_viral = 0.0585;
  double hashtag_nonviral = 0.0303;
  double mention_viral = 0.4276;
  double mention_nonviral = 0.4112;
  double verified_viral = 0.0546;
  double verified_nonviral = 0.0724;
  /// Fraction of tweets given a clear sentiment.
  double sentiment_rate = 0.8;
  /// Among tweets with sentiment, fraction that are positive.
  double positive_viral = 0.252;
  double positive_nonviral = 0.40;
  double length_mean_viral = 88.3;
  double length_mean_nonviral = 64.9;
  double length_sd = 20.0;
  double non_english_rate = 0.05;
};

struct SynthConfig {
  std::size_t n_authors = 1000;
  std::size_t tweets_min = 1;
  std::size_t tweets_max = 10;
  /// Followers ~ floor(LogNormal(follower_mu, follower_sigma)).
  double follower_mu = 7.0;
  double follower_sigma = 1.5;
  /// Followings ~ floor(LogNormal(following_mu, following_sigma)).
  double following_mu = 6.0;
  double following_sigma = 1.0;
  /// Retweets ~ round(max(followers, 1) * LogNormal(log_ratio_mu, log_ratio_sigma)).
  double log_ratio_mu = std::log(2.16) - 1.5;
  double log_ratio_sigma = 1.0;
  ViralRule viral_rule;
  TextModel text;
  /// Tweets are spread uniformly over this many UTC days from start_time.
  std::size_t days = 2;
  std::int64_t start_time = 1664582400;  // 2022-10-01T00:00:00Z
  std::uint64_t seed = 42;
};

/// Throws ValidationError on a degenerate configuration.
void validate(const SynthConfig& cfg);

/// Sets one `key=value` option. Keys are the SynthConfig field names, with
/// rule and text-model fields unprefixed (e.g. `ratio_threshold`, `media_viral`).
void apply_synth_setting(SynthConfig& cfg, std::string_view key, std::string_view value);

/// Parses a key=value document ('#' starts a comment) on top of `base`.
SynthConfig parse_synth_config(std::string_view document, SynthConfig base = {});

/// Expected viral fraction under the planted rule, ignoring the rounding of
/// retweet counts: q (1 - noise) + (1 - q) noise with
/// q = P(LogNormal(log_ratio_mu, log_ratio_sigma) > ratio_threshold).
double implied_viral_rate(const SynthConfig& cfg);

struct SynthContent {
  std::string text;
  bool has_media = false;
};

/// Text and media flags for tweets with the given labels. Within each class,
/// every boolean feature is assigned to exactly round(share * class size)
/// tweets, chosen uniformly at random.
std::vector<SynthContent> synthesize_content(const std::vector<bool>& labels, const TextModel& model, Rng& rng);

struct SynthCorpus {
  TweetTable tweets;
  AuthorTable authors;
};

/// Deterministic in cfg (including seed).
SynthCorpus generate(const SynthConfig& cfg);

}  // namespace viralkit
