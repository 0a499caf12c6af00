// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "viralkit/corpus.hpp"

namespace viralkit {

/// The virality scores compared by the evaluation module. A tweet is called
/// viral by a metric when its score reaches a chosen threshold.
enum class MetricKind {
  RtThreshold,
  RtOverMedianRt,
  RtOverAvgRt,
  RtPercentile,
  RtOverFollowers,
  LogRtOverFollowers,
  InfluenceScore,
};

inline constexpr std::array<MetricKind, 7> kAllMetrics = {
    MetricKind::RtThreshold,     MetricKind::RtOverMedianRt,     MetricKind::RtOverAvgRt,
    MetricKind::RtPercentile,    MetricKind::RtOverFollowers,    MetricKind::LogRtOverFollowers,
    MetricKind::InfluenceScore,
};

/// What a metric needs beyond the tweet itself.
enum class DataTier { TweetOnly, Timeline, Profile };

/// Stable names used on the command line and in report files.
std::string_view metric_name(MetricKind kind);
/// Inverse of metric_name; throws ValidationError for unknown names.
MetricKind parse_metric(std::string_view name);

DataTier data_required(MetricKind kind);
std::string_view tier_name(DataTier tier);

struct MetricConfig {
  double influence_a = 10.0;
  /// Score of log_rt_over_followers for zero retweets; below any finite log ratio.
  double log_zero_sentinel = -1e18;
};

/// Floor applied to avg_rt before dividing.
inline constexpr double kAvgRtFloor = 1e-9;

/// Raw score of one tweet. Timeline-tier kinds need `author.timeline_stats`
/// (ConfigError otherwise). Zero follower counts are treated as one follower.
double score(MetricKind kind, const TweetRecord& tweet, const AuthorProfile& author,
             const MetricConfig& cfg = {});

/// ln(r / max(w, 1)), or cfg.log_zero_sentinel when r == 0.
double log_rt_over_followers(std::int64_t retweets, std::int64_t followers,
                             const MetricConfig& cfg = {});

/// Influence score of a tweet:
///   g d (A r + f) / (w r (A d + h)),  g = r + f,  h = w - d
/// with r retweets, f favorites, w followers, d followings. Returns 0 where
/// the ratio is undefined or negative-denominator: r == 0, w == 0, A d + h <= 0.
double influence_score(std::int64_t retweets, std::int64_t favorites, std::int64_t followers,
                       std::int64_t followings, double a);

/// Fraction of `sorted_rts` strictly below x. Throws ValidationError if empty.
double percentile_rank(std::int64_t x, std::span<const std::int64_t> sorted_rts);

}  // namespace viralkit
