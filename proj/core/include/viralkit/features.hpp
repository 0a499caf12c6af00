// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "viralkit/corpus.hpp"

namespace viralkit {

/// Content-side features of one tweet. No engagement counts.
struct FeatureVector {
  bool has_media = false;
  bool has_hashtags = false;
  bool has_mentions = false;
  bool from_verified = false;
  bool positive_sentiment = false;
  bool negative_sentiment = false;
  std::size_t length_chars = 0;  // unicode scalar values

  bool operator==(const FeatureVector&) const = default;
};

enum class Polarity { Positive, Negative, None };

std::string_view polarity_name(Polarity p);
Polarity parse_polarity(std::string_view name);

struct SentimentResult {
  Polarity polarity = Polarity::None;
  double confidence = 0.0;

  bool operator==(const SentimentResult&) const = default;
};

/// A polarity is assigned only when the provider is more confident than this.
inline constexpr double kSentimentConfidenceThreshold = 0.7;

/// Applies the confidence rule to a raw provider output.
SentimentResult assign_sentiment(Polarity raw, double confidence);

/// Built-in lexicon scorer. With P positive and N negative lexicon tokens,
/// confidence = |P - N| / max(P + N, 1) and the majority polarity is kept
/// only above the confidence threshold.
SentimentResult stub_sentiment(std::string_view text);

using SentimentProvider = std::function<SentimentResult(const TweetRecord&)>;

SentimentProvider stub_sentiment_provider();

/// Sentiment file: one {"tweet_id", "polarity", "confidence"} object per line
/// with polarity in {positive, negative, none}. Raw confidences are stored;
/// the threshold rule is applied on load.
std::unordered_map<std::string, SentimentResult> load_sentiment(const std::filesystem::path& path);

/// Provider backed by a loaded sentiment file. Unknown tweet ids raise ReferenceError.
SentimentProvider file_sentiment_provider(std::unordered_map<std::string, SentimentResult> table);

struct Entities {
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::size_t url_count = 0;

  bool operator==(const Entities&) const = default;
};

/// Scans short text for entities. Word characters are ASCII letters, digits
/// and '_'.
///  - url: "http://" or "https://" at start of text or after a non-word
///    character; it runs to the next whitespace and hides any '#'/'@' inside.
///  - hashtag: '#' at start or after a non-word character, then a maximal run
///    of word characters containing at least one non-digit.
///  - mention: '@' at start or after a non-word character, then a maximal run
///    of 1 to 15 word characters.
Entities parse_entities(std::string_view text);

/// Number of unicode scalar values in UTF-8 text.
std::size_t utf8_length(std::string_view text);

FeatureVector extract(const TweetRecord& tweet, const AuthorProfile& author, const SentimentResult& sentiment);

/// Per-class summary of one feature.
struct FeatureStat {
  std::string feature;
  double viral = 0.0;     // share, or mean for length
  double nonviral = 0.0;
  double diff = 0.0;      // |viral - nonviral|
  double p_value = 1.0;
  bool significant = false;
};

inline constexpr double kSignificanceLevel = 0.05;

/// Rows in fixed order: media, hashtags, verified, positive_sentiment,
/// negative_sentiment, mentions, length. Boolean rows use a pooled z test,
/// length uses Welch's t test. Sentiment shares are taken over tweets with
/// an assigned polarity only.
std::vector<FeatureStat> feature_table(const TweetTable& tweets, const AuthorTable& authors,
                                       const SentimentProvider& provider);

/// feature,viral,nonviral,diff,p_value,significant
std::string format_feature_csv(const std::vector<FeatureStat>& stats);

}  // namespace viralkit
