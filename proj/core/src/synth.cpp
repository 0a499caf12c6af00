// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include "viralkit/synth.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <map>

#include "viralkit/stats.hpp"

namespace viralkit {

namespace {

// Neutral vocabulary: no '#', '@', or sentiment-lexicon words.
constexpr std::array<std::string_view, 48> kFiller = {
    "the",    "today",  "people", "just",   "city",    "new",     "time",    "this",    "what",   "about",
    "from",   "news",   "game",   "video",  "week",    "here",    "with",    "they",    "after",  "world",
    "year",   "still",  "going",  "back",   "team",    "night",   "first",   "post",    "thread", "story",
    "update", "watch",  "live",   "morning", "school", "friends", "music",   "photo",   "look",   "think",
    "make",   "know",   "really", "right",  "now",     "work",    "home",    "check"};
constexpr std::array<std::string_view, 5> kPositive = {"love", "great", "happy", "amazing", "best"};
constexpr std::array<std::string_view, 5> kNegative = {"hate", "terrible", "awful", "worst", "sad"};
constexpr std::array<std::string_view, 8> kTopics = {"news", "breaking", "nba", "music",
                                                     "tech", "football", "election", "movies"};
constexpr std::array<std::string_view, 6> kHandles = {"alice", "bob", "newsdesk", "carol", "dave", "eve"};
constexpr std::array<std::string_view, 4> kOtherLangs = {"es", "fr", "de", "pt"};
constexpr std::string_view kAlnum = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr std::int64_t kMaxCount = 1'000'000'000'000;
constexpr std::int64_t kMaxTweetLength = 280;

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& words, Rng& rng) {
  return words[rng.below(N)];
}

// Exactly round(share * |indices|) of `indices` chosen uniformly, marked in `flags`.
void assign_quota(std::vector<bool>& flags, std::vector<std::size_t> indices, double share, Rng& rng) {
  rng.shuffle(std::span(indices));
  const auto k = static_cast<std::size_t>(std::llround(share * static_cast<double>(indices.size())));
  for (std::size_t i = 0; i < k && i < indices.size(); ++i) flags[indices[i]] = true;
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(name) + " must lie in [0, 1]");
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ValidationError("invalid number for '" + std::string(key) + "': '" + std::string(value) + "'");
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ValidationError("invalid integer for '" + std::string(key) + "': '" + std::string(value) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void validate(const SynthConfig& cfg) {
  if (cfg.n_authors == 0) throw ValidationError("n_authors must be positive");
  if (cfg.tweets_min == 0 || cfg.tweets_min > cfg.tweets_max) {
    throw ValidationError("tweets per author must satisfy 1 <= tweets_min <= tweets_max");
  }
  if (!(cfg.follower_sigma > 0.0) || !(cfg.following_sigma > 0.0) || !(cfg.log_ratio_sigma > 0.0)) {
    throw ValidationError("log-normal sigmas must be positive");
  }
  if (!(cfg.viral_rule.ratio_threshold > 0.0)) throw ValidationError("ratio_threshold must be positive");
  if (!(cfg.viral_rule.label_noise >= 0.0 && cfg.viral_rule.label_noise < 0.5)) {
    throw ValidationError("label_noise must lie in [0, 0.5)");
  }
  if (cfg.days == 0) throw ValidationError("days must be positive");
  const auto& t = cfg.text;
  check_unit(t.media_viral, "media_viral");
  check_unit(t.media_nonviral, "media_nonviral");
  check_unit(t.hashtag_viral, "hashtag_viral");
  check_unit(t.hashtag_nonviral, "hashtag_nonviral");
  check_unit(t.mention_viral, "mention_viral");
  check_unit(t.mention_nonviral, "mention_nonviral");
  check_unit(t.verified_viral, "verified_viral");
  check_unit(t.verified_nonviral, "verified_nonviral");
  check_unit(t.sentiment_rate, "sentiment_rate");
  check_unit(t.positive_viral, "positive_viral");
  check_unit(t.positive_nonviral, "positive_nonviral");
  check_unit(t.non_english_rate, "non_english_rate");
  if (!(t.length_sd >= 0.0)) throw ValidationError("length_sd must be non-negative");
}

void apply_synth_setting(SynthConfig& cfg, std::string_view key, std::string_view value) {
  using Setter = std::function<void(SynthConfig&, std::string_view)>;
  const auto dbl = [](double SynthConfig::*field) {
    return Setter([field](SynthConfig& c, std::string_view v) { c.*field = parse_double("", v); });
  };
  const auto txt = [](double TextModel::*field) {
    return Setter([field](SynthConfig& c, std::string_view v) { c.text.*field = parse_double("", v); });
  };
  const auto size = [](std::size_t SynthConfig::*field) {
    return Setter([field](SynthConfig& c, std::string_view v) { c.*field = parse_int<std::size_t>("", v); });
  };
  static const std::map<std::string_view, Setter> setters = {
      {"n_authors", size(&SynthConfig::n_authors)},
      {"tweets_min", size(&SynthConfig::tweets_min)},
      {"tweets_max", size(&SynthConfig::tweets_max)},
      {"days", size(&SynthConfig::days)},
      {"follower_mu", dbl(&SynthConfig::follower_mu)},
      {"follower_sigma", dbl(&SynthConfig::follower_sigma)},
      {"following_mu", dbl(&SynthConfig::following_mu)},
      {"following_sigma", dbl(&SynthConfig::following_sigma)},
      {"log_ratio_mu", dbl(&SynthConfig::log_ratio_mu)},
      {"log_ratio_sigma", dbl(&SynthConfig::log_ratio_sigma)},
      {"ratio_threshold", [](SynthConfig& c, std::string_view v) { c.viral_rule.ratio_threshold = parse_double("", v); }},
      {"label_noise", [](SynthConfig& c, std::string_view v) { c.viral_rule.label_noise = parse_double("", v); }},
      {"start_time", [](SynthConfig& c, std::string_view v) { c.start_time = parse_int<std::int64_t>("", v); }},
      {"seed", [](SynthConfig& c, std::string_view v) { c.seed = parse_int<std::uint64_t>("", v); }},
      {"media_viral", txt(&TextModel::media_viral)},
      {"media_nonviral", txt(&TextModel::media_nonviral)},
      {"hashtag_viral", txt(&TextModel::hashtag_viral)},
      {"hashtag_nonviral", txt(&TextModel::hashtag_nonviral)},
      {"mention_viral", txt(&TextModel::mention_viral)},
      {"mention_nonviral", txt(&TextModel::mention_nonviral)},
      {"verified_viral", txt(&TextModel::verified_viral)},
      {"verified_nonviral", txt(&TextModel::verified_nonviral)},
      {"sentiment_rate", txt(&TextModel::sentiment_rate)},
      {"positive_viral", txt(&TextModel::positive_viral)},
      {"positive_nonviral", txt(&TextModel::positive_nonviral)},
      {"length_mean_viral", txt(&TextModel::length_mean_viral)},
      {"length_mean_nonviral", txt(&TextModel::length_mean_nonviral)},
      {"length_sd", txt(&TextModel::length_sd)},
      {"non_english_rate", txt(&TextModel::non_english_rate)},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ValidationError("unknown synth setting '" + std::string(key) + "'");
  try {
    it->second(cfg, value);
  } catch (const ValidationError&) {
    throw ValidationError("invalid value for '" + std::string(key) + "': '" + std::string(value) + "'");
  }
}

SynthConfig parse_synth_config(std::string_view document, SynthConfig base) {
  std::size_t line_no = 0;
  while (!document.empty()) {
    ++line_no;
    const auto nl = document.find('\n');
    std::string_view line = document.substr(0, nl);
    document = nl == std::string_view::npos ? std::string_view{} : document.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    try {
      apply_synth_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return base;
}

double implied_viral_rate(const SynthConfig& cfg) {
  const double z = (std::log(cfg.viral_rule.ratio_threshold) - cfg.log_ratio_mu) / cfg.log_ratio_sigma;
  const double q = normal_sf(z);
  const double e = cfg.viral_rule.label_noise;
  return q * (1.0 - e) + (1.0 - q) * e;
}

std::vector<SynthContent> synthesize_content(const std::vector<bool>& labels, const TextModel& m, Rng& rng) {
  const std::size_t n = labels.size();
  std::vector<bool> media(n), hashtag(n), mention(n), assigned(n), positive(n);
  for (const bool cls : {true, false}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] == cls) idx.push_back(i);
    }
    assign_quota(media, idx, cls ? m.media_viral : m.media_nonviral, rng);
    assign_quota(hashtag, idx, cls ? m.hashtag_viral : m.hashtag_nonviral, rng);
    assign_quota(mention, idx, cls ? m.mention_viral : m.mention_nonviral, rng);
    assign_quota(assigned, idx, m.sentiment_rate, rng);
    std::vector<std::size_t> with_sentiment;
    for (std::size_t i : idx) {
      if (assigned[i]) with_sentiment.push_back(i);
    }
    assign_quota(positive, with_sentiment, cls ? m.positive_viral : m.positive_nonviral, rng);
  }

  std::vector<SynthContent> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = labels[i] ? m.length_mean_viral : m.length_mean_nonviral;
    const auto target = std::clamp<std::int64_t>(std::llround(rng.normal(mean, m.length_sd)), 10, kMaxTweetLength);

    std::vector<std::string> body;
    if (assigned[i]) {
      const std::size_t count = 1 + rng.below(2);
      for (std::size_t k = 0; k < count; ++k) {
        body.emplace_back(positive[i] ? pick(kPositive, rng) : pick(kNegative, rng));
      }
    }
    std::string head;
    if (mention[i]) head = "@" + std::string(pick(kHandles, rng)) + std::to_string(rng.below(10000));
    std::string tail;
    if (hashtag[i]) tail = "#" + std::string(pick(kTopics, rng));
    std::string url;
    if (media[i]) {
      url = "https://t.co/";
      for (int k = 0; k < 10; ++k) url += kAlnum[rng.below(kAlnum.size())];
    }

    const auto joined_length = [&] {
      std::int64_t len = 0;
      std::size_t parts = 0;
      for (const auto* s : {&head, &tail, &url}) {
        if (!s->empty()) len += static_cast<std::int64_t>(s->size()), ++parts;
      }
      for (const auto& w : body) len += static_cast<std::int64_t>(w.size()), ++parts;
      return len + static_cast<std::int64_t>(parts ? parts - 1 : 0);
    };
    std::int64_t len = joined_length();
    while (len < target) {
      const auto w = pick(kFiller, rng);
      const std::int64_t extra = static_cast<std::int64_t>(w.size()) + (len > 0 ? 1 : 0);
      if (len + extra > kMaxTweetLength) break;
      body.insert(body.begin() + static_cast<std::ptrdiff_t>(rng.below(body.size() + 1)), std::string(w));
      len += extra;
    }

    std::string text = head;
    for (const auto& w : body) {
      if (!text.empty()) text += ' ';
      text += w;
    }
    for (const auto* s : {&tail, &url}) {
      if (s->empty()) continue;
      if (!text.empty()) text += ' ';
      text += *s;
    }
    out[i] = {std::move(text), static_cast<bool>(media[i])};
  }
  return out;
}

SynthCorpus generate(const SynthConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  const auto& rule = cfg.viral_rule;

  std::vector<AuthorProfile> authors(cfg.n_authors);
  for (std::size_t a = 0; a < cfg.n_authors; ++a) {
    authors[a].id = "u" + std::to_string(a);
    authors[a].followers_count =
        std::min<std::int64_t>(kMaxCount, static_cast<std::int64_t>(rng.lognormal(cfg.follower_mu, cfg.follower_sigma)));
    authors[a].followings_count = std::min<std::int64_t>(
        kMaxCount, static_cast<std::int64_t>(rng.lognormal(cfg.following_mu, cfg.following_sigma)));
  }

  std::vector<TweetRecord> tweets;
  std::vector<std::size_t> tweet_author;
  const auto span_seconds = static_cast<std::uint64_t>(cfg.days) * 86400;
  for (std::size_t a = 0; a < cfg.n_authors; ++a) {
    const auto w = authors[a].followers_count;
    const auto w_eff = static_cast<double>(std::max<std::int64_t>(w, 1));
    const auto k = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(cfg.tweets_min), static_cast<std::int64_t>(cfg.tweets_max)));
    for (std::size_t j = 0; j < k; ++j) {
      TweetRecord t;
      t.id = "t" + std::to_string(tweets.size());
      t.author_id = authors[a].id;
      t.created_at = cfg.start_time + static_cast<std::int64_t>(rng.below(span_seconds));
      const double ratio = rng.lognormal(cfg.log_ratio_mu, cfg.log_ratio_sigma);
      t.retweet_count = std::min<std::int64_t>(kMaxCount, std::llround(w_eff * ratio));
      const double fav_mult = rng.lognormal(std::log(3.0), 0.5);
      t.favorite_count = std::min<std::int64_t>(kMaxCount, std::llround(static_cast<double>(t.retweet_count) * fav_mult));
      const bool above = static_cast<double>(t.retweet_count) / w_eff > rule.ratio_threshold;
      const bool flip = rng.bernoulli(rule.label_noise);
      t.is_viral = above != flip;
      const bool foreign = rng.bernoulli(cfg.text.non_english_rate);
      const auto other = pick(kOtherLangs, rng);
      t.lang = foreign ? std::string(other) : "en";
      tweets.push_back(std::move(t));
      tweet_author.push_back(a);
    }
  }

  std::vector<bool> labels(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) labels[i] = tweets[i].is_viral;
  auto content = synthesize_content(labels, cfg.text, rng);
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    tweets[i].text = std::move(content[i].text);
    tweets[i].has_media = content[i].has_media;
  }

  // Verification is an author trait; mix the class rates by the author's viral share.
  std::vector<std::size_t> n_viral(cfg.n_authors, 0), n_total(cfg.n_authors, 0);
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    ++n_total[tweet_author[i]];
    n_viral[tweet_author[i]] += tweets[i].is_viral ? 1 : 0;
  }
  for (std::size_t a = 0; a < cfg.n_authors; ++a) {
    const double frac = static_cast<double>(n_viral[a]) / static_cast<double>(n_total[a]);
    authors[a].verified =
        rng.bernoulli(frac * cfg.text.verified_viral + (1.0 - frac) * cfg.text.verified_nonviral);
  }

  return {TweetTable(std::move(tweets)), AuthorTable(std::move(authors))};
}

}  // namespace viralkit
