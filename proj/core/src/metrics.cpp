// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include "viralkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace viralkit {

std::string_view metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::RtThreshold: return "rt_threshold";
    case MetricKind::RtOverMedianRt: return "rt_over_median";
    case MetricKind::RtOverAvgRt: return "rt_over_avg";
    case MetricKind::RtPercentile: return "rt_percentile";
    case MetricKind::RtOverFollowers: return "rt_over_followers";
    case MetricKind::LogRtOverFollowers: return "log_rt_over_followers";
    case MetricKind::InfluenceScore: return "influence_score";
  }
  return "unknown";
}

MetricKind parse_metric(std::string_view name) {
  for (MetricKind k : kAllMetrics) {
    if (metric_name(k) == name) return k;
  }
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

DataTier data_required(MetricKind kind) {
  switch (kind) {
    case MetricKind::RtThreshold:
      return DataTier::TweetOnly;
    case MetricKind::RtOverMedianRt:
    case MetricKind::RtOverAvgRt:
    case MetricKind::RtPercentile:
      return DataTier::Timeline;
    case MetricKind::RtOverFollowers:
    case MetricKind::LogRtOverFollowers:
    case MetricKind::InfluenceScore:
      return DataTier::Profile;
  }
  return DataTier::Profile;
}

std::string_view tier_name(DataTier tier) {
  switch (tier) {
    case DataTier::TweetOnly: return "tweet_only";
    case DataTier::Timeline: return "timeline";
    case DataTier::Profile: return "profile";
  }
  return "unknown";
}

double log_rt_over_followers(std::int64_t r, std::int64_t w, const MetricConfig& cfg) {
  if (r <= 0) return cfg.log_zero_sentinel;
  return std::log(static_cast<double>(r) / static_cast<double>(std::max<std::int64_t>(w, 1)));
}

double influence_score(std::int64_t r, std::int64_t f, std::int64_t w, std::int64_t d, double a) {
  if (r == 0 || w == 0) return 0.0;
  const double rr = static_cast<double>(r);
  const double ff = static_cast<double>(f);
  const double ww = static_cast<double>(w);
  const double dd = static_cast<double>(d);
  const double g = rr + ff;
  const double h = ww - dd;
  const double damp = a * dd + h;
  if (damp <= 0.0) return 0.0;
  return (g * dd * (a * rr + ff)) / (ww * rr * damp);
}

double percentile_rank(std::int64_t x, std::span<const std::int64_t> sorted_rts) {
  if (sorted_rts.empty()) throw ValidationError("percentile_rank of an empty timeline");
  const auto below = std::lower_bound(sorted_rts.begin(), sorted_rts.end(), x) - sorted_rts.begin();
  return static_cast<double>(below) / static_cast<double>(sorted_rts.size());
}

namespace {

const TimelineStats& require_timeline(MetricKind kind, const AuthorProfile& author) {
  if (!author.timeline_stats) {
    throw ConfigError("metric " + std::string(metric_name(kind)) + " needs timeline stats for author '" +
                      author.id + "'");
  }
  return *author.timeline_stats;
}

}  // namespace

double score(MetricKind kind, const TweetRecord& tweet, const AuthorProfile& author,
             const MetricConfig& cfg) {
  if (!(cfg.influence_a > 0.0)) throw ValidationError("influence_a must be positive");
  const std::int64_t r = tweet.retweet_count;
  const auto rd = static_cast<double>(r);
  switch (kind) {
    case MetricKind::RtThreshold:
      return rd;
    case MetricKind::RtOverMedianRt:
      return rd / require_timeline(kind, author).median_nonzero_rt;
    case MetricKind::RtOverAvgRt:
      return rd / std::max(require_timeline(kind, author).avg_rt, kAvgRtFloor);
    case MetricKind::RtPercentile:
      return percentile_rank(r, require_timeline(kind, author).sorted_rts);
    case MetricKind::RtOverFollowers:
      return rd / static_cast<double>(std::max<std::int64_t>(author.followers_count, 1));
    case MetricKind::LogRtOverFollowers:
      return log_rt_over_followers(r, author.followers_count, cfg);
    case MetricKind::InfluenceScore:
      return influence_score(r, tweet.favorite_count, author.followers_count, author.followings_count,
                             cfg.influence_a);
  }
  throw ValidationError("unknown metric kind");
}

}  // namespace viralkit
