// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include "viralkit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "viralkit/rng.hpp"

namespace viralkit {

using nlohmann::json;

namespace {

const std::initializer_list<const char*> kTweetFields = {
    "id", "author_id", "created_at", "text", "lang",
    "retweet_count", "favorite_count", "has_media", "is_viral"};
const std::initializer_list<const char*> kAuthorFields = {
    "id", "followers_count", "followings_count", "verified"};

json parse_object(const std::string& line, std::size_t line_no,
                  std::initializer_list<const char*> fields) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!doc.is_object()) throw ParseError("record is not an object", line_no);
  for (const char* f : fields) {
    if (!doc.contains(f)) throw ParseError(std::string("missing field '") + f + "'", line_no);
  }
  if (doc.size() != fields.size()) {
    for (const auto& [key, _] : doc.items()) {
      if (std::none_of(fields.begin(), fields.end(), [&](const char* f) { return key == f; })) {
        throw ParseError("unexpected field '" + key + "'", line_no);
      }
    }
  }
  return doc;
}

std::string get_string(const json& doc, const char* key, std::size_t line_no) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", line_no);
  return v.get<std::string>();
}

std::int64_t get_int(const json& doc, const char* key, std::size_t line_no) {
  const auto& v = doc.at(key);
  if (v.is_number_integer()) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ParseError(std::string("field '") + key + "' out of range", line_no);
    }
    return v.get<std::int64_t>();
  }
  throw ParseError(std::string("field '") + key + "' must be an integer", line_no);
}

bool get_bool(const json& doc, const char* key, std::size_t line_no) {
  const auto& v = doc.at(key);
  if (!v.is_boolean()) throw ParseError(std::string("field '") + key + "' must be a boolean", line_no);
  return v.get<bool>();
}

template <typename Record, typename ParseLine>
IndexedTable<Record> parse_lines(std::istream& in, ParseLine parse_line) {
  std::vector<Record> records;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Record r = parse_line(line, line_no);
    try {
      validate(r);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
    }
    if (!seen.insert(r.id).second) {
      throw ValidationError("duplicate id '" + r.id + "' (line " + std::to_string(line_no) + ")");
    }
    records.push_back(std::move(r));
  }
  if (in.bad()) throw IoError("read failure");
  return IndexedTable<Record>(std::move(records));
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

void validate(const TweetRecord& t) {
  if (t.id.empty()) throw ValidationError("tweet id is empty");
  if (t.retweet_count < 0) throw ValidationError("tweet '" + t.id + "' has negative retweet_count");
  if (t.favorite_count < 0) throw ValidationError("tweet '" + t.id + "' has negative favorite_count");
}

void validate(const AuthorProfile& a) {
  if (a.id.empty()) throw ValidationError("author id is empty");
  if (a.followers_count < 0) throw ValidationError("author '" + a.id + "' has negative followers_count");
  if (a.followings_count < 0) throw ValidationError("author '" + a.id + "' has negative followings_count");
}

TweetTable parse_tweets(std::istream& in) {
  return parse_lines<TweetRecord>(in, [](const std::string& line, std::size_t n) {
    const json doc = parse_object(line, n, kTweetFields);
    TweetRecord t;
    t.id = get_string(doc, "id", n);
    t.author_id = get_string(doc, "author_id", n);
    t.created_at = get_int(doc, "created_at", n);
    t.text = get_string(doc, "text", n);
    t.lang = get_string(doc, "lang", n);
    t.retweet_count = get_int(doc, "retweet_count", n);
    t.favorite_count = get_int(doc, "favorite_count", n);
    t.has_media = get_bool(doc, "has_media", n);
    t.is_viral = get_bool(doc, "is_viral", n);
    return t;
  });
}

AuthorTable parse_authors(std::istream& in) {
  return parse_lines<AuthorProfile>(in, [](const std::string& line, std::size_t n) {
    const json doc = parse_object(line, n, kAuthorFields);
    AuthorProfile a;
    a.id = get_string(doc, "id", n);
    a.followers_count = get_int(doc, "followers_count", n);
    a.followings_count = get_int(doc, "followings_count", n);
    a.verified = get_bool(doc, "verified", n);
    return a;
  });
}

TweetTable load_tweets(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_tweets(in);
}

AuthorTable load_authors(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_authors(in);
}

std::string format_tweets(const TweetTable& tweets) {
  std::string out;
  for (const auto& t : tweets) {
    // ordered_json keeps the documented field order on disk.
    nlohmann::ordered_json doc;
    doc["id"] = t.id;
    doc["author_id"] = t.author_id;
    doc["created_at"] = t.created_at;
    doc["text"] = t.text;
    doc["lang"] = t.lang;
    doc["retweet_count"] = t.retweet_count;
    doc["favorite_count"] = t.favorite_count;
    doc["has_media"] = t.has_media;
    doc["is_viral"] = t.is_viral;
    out += doc.dump();
    out += '\n';
  }
  return out;
}

std::string format_authors(const AuthorTable& authors) {
  std::string out;
  for (const auto& a : authors) {
    nlohmann::ordered_json doc;
    doc["id"] = a.id;
    doc["followers_count"] = a.followers_count;
    doc["followings_count"] = a.followings_count;
    doc["verified"] = a.verified;
    out += doc.dump();
    out += '\n';
  }
  return out;
}

DatasetSplit parse_split(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid split document: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("seed") || !doc.contains("train") || !doc.contains("test")) {
    throw ParseError("split document needs seed, train and test", 0);
  }
  DatasetSplit split;
  try {
    split.seed = doc.at("seed").get<std::uint64_t>();
    split.train = doc.at("train").get<std::vector<std::string>>();
    split.test = doc.at("test").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid split document: ") + e.what(), 0);
  }
  std::set<std::string> train_ids(split.train.begin(), split.train.end());
  for (const auto& id : split.test) {
    if (train_ids.contains(id)) throw ValidationError("id '" + id + "' is in both train and test");
  }
  return split;
}

DatasetSplit load_split(const std::filesystem::path& path) { return parse_split(read_file(path)); }

std::string format_split(const DatasetSplit& split) {
  nlohmann::ordered_json doc;
  doc["seed"] = split.seed;
  doc["train"] = split.train;
  doc["test"] = split.test;
  return doc.dump(1) + "\n";
}

TimelineStats compute_timeline_stats(std::vector<std::int64_t> rts) {
  if (rts.empty()) throw ValidationError("timeline is empty");
  std::sort(rts.begin(), rts.end());
  TimelineStats stats;
  stats.n_tweets = rts.size();
  const std::int64_t total = std::accumulate(rts.begin(), rts.end(), std::int64_t{0});
  stats.avg_rt = static_cast<double>(total) / static_cast<double>(rts.size());

  const auto first_nonzero = std::upper_bound(rts.begin(), rts.end(), std::int64_t{0});
  const auto n = static_cast<std::size_t>(rts.end() - first_nonzero);
  if (n == 0) {
    stats.median_nonzero_rt = 1.0;
  } else {
    const auto mid = first_nonzero + static_cast<std::ptrdiff_t>(n / 2);
    stats.median_nonzero_rt = n % 2 ? static_cast<double>(*mid)
                                    : (static_cast<double>(*(mid - 1)) + static_cast<double>(*mid)) / 2.0;
  }
  stats.sorted_rts = std::move(rts);
  return stats;
}

void check_references(const TweetTable& tweets, const AuthorTable& authors) {
  std::vector<std::string> missing;
  for (const auto& t : tweets) {
    if (!authors.contains(t.author_id)) missing.push_back(t.id);
  }
  if (missing.empty()) return;
  std::string msg = "unknown author for tweets:";
  constexpr std::size_t kMaxListed = 20;
  for (std::size_t i = 0; i < missing.size() && i < kMaxListed; ++i) msg += " " + missing[i];
  if (missing.size() > kMaxListed) msg += " ... (" + std::to_string(missing.size()) + " total)";
  throw ReferenceError(msg);
}

AuthorTable attach_timeline_stats(const TweetTable& tweets, const AuthorTable& authors) {
  check_references(tweets, authors);
  std::unordered_map<std::string, std::vector<std::int64_t>> timelines;
  for (const auto& t : tweets) timelines[t.author_id].push_back(t.retweet_count);

  std::vector<AuthorProfile> out(authors.begin(), authors.end());
  for (auto& a : out) {
    const auto it = timelines.find(a.id);
    if (it != timelines.end()) a.timeline_stats = compute_timeline_stats(std::move(it->second));
  }
  return AuthorTable(std::move(out));
}

std::int64_t utc_day(std::int64_t epoch_seconds) {
  constexpr std::int64_t kDay = 86400;
  std::int64_t d = epoch_seconds / kDay;
  if (epoch_seconds % kDay < 0) --d;
  return d;
}

TweetTable filter_detection_pool(const TweetTable& tweets) {
  std::set<std::pair<std::string, std::int64_t>> viral_days;
  for (const auto& t : tweets) {
    if (t.is_viral && t.lang == "en") viral_days.emplace(t.author_id, utc_day(t.created_at));
  }
  std::vector<TweetRecord> kept;
  for (const auto& t : tweets) {
    if (t.lang != "en") continue;
    if (t.is_viral || viral_days.contains({t.author_id, utc_day(t.created_at)})) kept.push_back(t);
  }
  return TweetTable(std::move(kept));
}

DatasetSplit balance_split(const TweetTable& pool, std::uint64_t seed, double test_frac) {
  if (!(test_frac > 0.0 && test_frac < 1.0)) {
    throw ValidationError("test_frac must lie in (0, 1)");
  }
  std::vector<std::string> viral;
  std::vector<std::string> nonviral;
  for (const auto& t : pool) (t.is_viral ? viral : nonviral).push_back(t.id);
  if (viral.empty()) throw CapacityError("pool has no viral tweets");
  if (nonviral.size() < viral.size()) {
    throw CapacityError("pool has " + std::to_string(nonviral.size()) +
                        " non-viral tweets, need at least " + std::to_string(viral.size()));
  }

  Rng rng(seed);
  rng.shuffle(std::span(nonviral));
  nonviral.resize(viral.size());
  rng.shuffle(std::span(viral));

  // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
  const auto v = viral.size();
  const auto n_test = static_cast<std::size_t>(std::floor(test_frac * static_cast<double>(v) + 1e-9));

  DatasetSplit split;
  split.seed = seed;
  for (const auto* cls : {&viral, &nonviral}) {
    split.test.insert(split.test.end(), cls->begin(), cls->begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train.insert(split.train.end(), cls->begin() + static_cast<std::ptrdiff_t>(n_test), cls->end());
  }
  return split;
}

std::vector<const TweetRecord*> resolve_ids(const TweetTable& tweets,
                                            const std::vector<std::string>& ids) {
  std::vector<const TweetRecord*> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const auto* t = tweets.find(id);
    if (!t) throw ReferenceError("split refers to unknown tweet '" + id + "'");
    out.push_back(t);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("cannot write '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace viralkit
