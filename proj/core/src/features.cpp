// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include "viralkit/features.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "viralkit/stats.hpp"

namespace viralkit {

namespace {

bool is_word(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && (std::isalnum(u) || c == '_');
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

constexpr std::size_t kMaxMentionLength = 15;

// Lexicons for the stub scorer. Tokens are lowercased ASCII letter runs.
constexpr std::array<std::string_view, 32> kPositiveWords = {
    "love",    "loved",   "loving",  "great",  "good",     "happy",     "amazing", "awesome",
    "best",    "excellent", "wonderful", "beautiful", "win",  "winning", "glad",    "perfect",
    "nice",    "fantastic", "brilliant", "proud", "thanks",   "thank",     "enjoy",   "fun",
    "incredible", "congrats", "congratulations", "cute", "hope", "favorite", "like",  "yay"};
constexpr std::array<std::string_view, 32> kNegativeWords = {
    "bad",      "hate",     "hated",  "terrible", "awful",   "worst",   "sad",      "angry",
    "horrible", "disgusting", "wrong", "fail",    "failed",  "lose",    "lost",     "pathetic",
    "stupid",   "ugly",     "broken", "scary",    "afraid",  "shame",   "disaster", "crisis",
    "dead",     "death",    "kill",   "killed",   "war",     "attack",  "sick",     "never"};

bool in_lexicon(std::string_view word, std::span<const std::string_view> lexicon) {
  return std::find(lexicon.begin(), lexicon.end(), word) != lexicon.end();
}

bool url_starts_at(std::string_view text, std::size_t i) {
  if (i > 0 && is_word(text[i - 1])) return false;
  const auto rest = text.substr(i);
  return rest.starts_with("http://") || rest.starts_with("https://");
}

}  // namespace

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::None: return "none";
  }
  return "none";
}

Polarity parse_polarity(std::string_view name) {
  if (name == "positive") return Polarity::Positive;
  if (name == "negative") return Polarity::Negative;
  if (name == "none") return Polarity::None;
  throw ValidationError("unknown polarity '" + std::string(name) + "'");
}

SentimentResult assign_sentiment(Polarity raw, double confidence) {
  if (!(confidence >= 0.0 && confidence <= 1.0)) throw ValidationError("confidence must lie in [0, 1]");
  if (confidence > kSentimentConfidenceThreshold) return {raw, confidence};
  return {Polarity::None, confidence};
}

SentimentResult stub_sentiment(std::string_view text) {
  int pos = 0;
  int neg = 0;
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    if (in_lexicon(token, kPositiveWords)) ++pos;
    if (in_lexicon(token, kNegativeWords)) ++neg;
    token.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalpha(u)) {
      token += static_cast<char>(std::tolower(u));
    } else {
      flush();
    }
  }
  flush();

  const double confidence = static_cast<double>(std::abs(pos - neg)) / std::max(pos + neg, 1);
  const Polarity raw = pos > neg ? Polarity::Positive : neg > pos ? Polarity::Negative : Polarity::None;
  return assign_sentiment(raw, confidence);
}

SentimentProvider stub_sentiment_provider() {
  return [](const TweetRecord& t) { return stub_sentiment(t.text); };
}

std::unordered_map<std::string, SentimentResult> load_sentiment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::unordered_map<std::string, SentimentResult> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      const auto id = doc.at("tweet_id").get<std::string>();
      const auto polarity = parse_polarity(doc.at("polarity").get<std::string>());
      const auto confidence = doc.at("confidence").get<double>();
      if (!out.emplace(id, assign_sentiment(polarity, confidence)).second) {
        throw ValidationError("duplicate tweet_id '" + id + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid sentiment record: ") + e.what(), line_no);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

SentimentProvider file_sentiment_provider(std::unordered_map<std::string, SentimentResult> table) {
  return [table = std::move(table)](const TweetRecord& t) {
    const auto it = table.find(t.id);
    if (it == table.end()) throw ReferenceError("no sentiment for tweet '" + t.id + "'");
    return it->second;
  };
}

Entities parse_entities(std::string_view text) {
  Entities out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if ((text[i] == 'h') && url_starts_at(text, i)) {
      ++out.url_count;
      while (i < n && !is_space(text[i])) ++i;
      continue;
    }
    const char c = text[i];
    if ((c == '#' || c == '@') && (i == 0 || !is_word(text[i - 1]))) {
      std::size_t j = i + 1;
      while (j < n && is_word(text[j])) ++j;
      const auto run = text.substr(i + 1, j - i - 1);
      if (c == '#') {
        const bool has_non_digit =
            std::any_of(run.begin(), run.end(), [](char ch) { return !std::isdigit(static_cast<unsigned char>(ch)); });
        if (has_non_digit) out.hashtags.emplace_back(run);
      } else if (!run.empty() && run.size() <= kMaxMentionLength) {
        out.mentions.emplace_back(run);
      }
      i = j;
      continue;
    }
    ++i;
  }
  return out;
}

std::size_t utf8_length(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(
      text.begin(), text.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

FeatureVector extract(const TweetRecord& tweet, const AuthorProfile& author, const SentimentResult& sentiment) {
  const Entities e = parse_entities(tweet.text);
  FeatureVector f;
  f.has_media = tweet.has_media;
  f.has_hashtags = !e.hashtags.empty();
  f.has_mentions = !e.mentions.empty();
  f.from_verified = author.verified;
  f.positive_sentiment = sentiment.polarity == Polarity::Positive;
  f.negative_sentiment = sentiment.polarity == Polarity::Negative;
  f.length_chars = utf8_length(tweet.text);
  return f;
}

std::vector<FeatureStat> feature_table(const TweetTable& tweets, const AuthorTable& authors,
                                       const SentimentProvider& provider) {
  struct ClassTally {
    std::int64_t n = 0;
    std::int64_t media = 0, hashtags = 0, verified = 0, mentions = 0;
    std::int64_t assigned = 0, positive = 0, negative = 0;
    std::vector<double> lengths;
  };
  ClassTally viral;
  ClassTally nonviral;
  for (const auto& t : tweets) {
    const auto* author = authors.find(t.author_id);
    if (!author) throw ReferenceError("tweet '" + t.id + "' has unknown author '" + t.author_id + "'");
    const FeatureVector f = extract(t, *author, provider(t));
    ClassTally& c = t.is_viral ? viral : nonviral;
    ++c.n;
    c.media += f.has_media;
    c.hashtags += f.has_hashtags;
    c.verified += f.from_verified;
    c.mentions += f.has_mentions;
    c.positive += f.positive_sentiment;
    c.negative += f.negative_sentiment;
    c.assigned += f.positive_sentiment || f.negative_sentiment;
    c.lengths.push_back(static_cast<double>(f.length_chars));
  }
  if (viral.n == 0 || nonviral.n == 0) throw ValidationError("feature_table needs both classes");

  std::vector<FeatureStat> rows;
  const auto share_row = [&](const char* name, std::int64_t xv, std::int64_t nv, std::int64_t xn, std::int64_t nn) {
    FeatureStat s;
    s.feature = name;
    s.viral = nv ? static_cast<double>(xv) / static_cast<double>(nv) : 0.0;
    s.nonviral = nn ? static_cast<double>(xn) / static_cast<double>(nn) : 0.0;
    s.diff = std::fabs(s.viral - s.nonviral);
    // A class with no assigned sentiment leaves nothing to compare.
    s.p_value = (nv && nn) ? two_prop_z(xv, nv, xn, nn).p_value : 1.0;
    s.significant = s.p_value < kSignificanceLevel;
    rows.push_back(std::move(s));
  };
  share_row("media", viral.media, viral.n, nonviral.media, nonviral.n);
  share_row("hashtags", viral.hashtags, viral.n, nonviral.hashtags, nonviral.n);
  share_row("verified", viral.verified, viral.n, nonviral.verified, nonviral.n);
  share_row("positive_sentiment", viral.positive, viral.assigned, nonviral.positive, nonviral.assigned);
  share_row("negative_sentiment", viral.negative, viral.assigned, nonviral.negative, nonviral.assigned);
  share_row("mentions", viral.mentions, viral.n, nonviral.mentions, nonviral.n);

  FeatureStat len;
  len.feature = "length";
  const auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  len.viral = mean(viral.lengths);
  len.nonviral = mean(nonviral.lengths);
  len.diff = std::fabs(len.viral - len.nonviral);
  const auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (viral.lengths.size() < 2 || nonviral.lengths.size() < 2) {
    len.p_value = 1.0;
  } else if (constant(viral.lengths) && constant(nonviral.lengths)) {
    // Zero variance on both sides: any difference in the constants is infinitely significant.
    len.p_value = len.diff > 0.0 ? 0.0 : 1.0;
  } else {
    len.p_value = welch_t(viral.lengths, nonviral.lengths).p_value;
  }
  len.significant = len.p_value < kSignificanceLevel;
  rows.push_back(std::move(len));
  return rows;
}

std::string format_feature_csv(const std::vector<FeatureStat>& stats) {
  std::string out = "feature,viral,nonviral,diff,p_value,significant\n";
  for (const auto& s : stats) {
    out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6g},{}\n", s.feature, s.viral, s.nonviral, s.diff, s.p_value,
                       s.significant ? "true" : "false");
  }
  return out;
}

}  // namespace viralkit
