// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "viralkit/error.hpp"

namespace viralkit {

/// One post with its engagement counts and ground-truth label.
struct TweetRecord {
  std::string id;
  std::string author_id;
  std::int64_t created_at = 0;  // UTC, seconds since epoch
  std::string text;
  std::string lang;
  std::int64_t retweet_count = 0;
  std::int64_t favorite_count = 0;
  bool has_media = false;
  bool is_viral = false;

  bool operator==(const TweetRecord&) const = default;
};

/// Per-author aggregates over the author's tweets in a table.
struct TimelineStats {
  double median_nonzero_rt = 1.0;  // median over retweet_count > 0; 1 when none
  double avg_rt = 0.0;             // mean over all tweets, zeros included
  std::vector<std::int64_t> sorted_rts;
  std::size_t n_tweets = 0;

  bool operator==(const TimelineStats&) const = default;
};

struct AuthorProfile {
  std::string id;
  std::int64_t followers_count = 0;
  std::int64_t followings_count = 0;
  bool verified = false;
  std::optional<TimelineStats> timeline_stats;

  bool operator==(const AuthorProfile&) const = default;
};

void validate(const TweetRecord& tweet);
void validate(const AuthorProfile& author);

/// Immutable id-indexed table. Construction validates every record and
/// rejects duplicate ids.
template <typename Record>
class IndexedTable {
 public:
  IndexedTable() = default;
  explicit IndexedTable(std::vector<Record> records) : records_(std::move(records)) {
    index_.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) {
      validate(records_[i]);
      if (!index_.emplace(records_[i].id, i).second) {
        throw ValidationError("duplicate id '" + records_[i].id + "'");
      }
    }
  }

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  auto begin() const noexcept { return records_.begin(); }
  auto end() const noexcept { return records_.end(); }
  const Record& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<Record>& records() const noexcept { return records_; }

  const Record* find(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &records_[it->second];
  }
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  bool operator==(const IndexedTable& other) const { return records_ == other.records_; }

 private:
  std::vector<Record> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

using TweetTable = IndexedTable<TweetRecord>;
using AuthorTable = IndexedTable<AuthorProfile>;

/// Balanced train/test partition of tweet ids.
struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::uint64_t seed = 0;

  bool operator==(const DatasetSplit&) const = default;
};

// Line-delimited JSON ingestion. Blank lines are skipped; any other line must
// be one object with exactly the documented fields.
TweetTable parse_tweets(std::istream& in);
AuthorTable parse_authors(std::istream& in);
TweetTable load_tweets(const std::filesystem::path& path);
AuthorTable load_authors(const std::filesystem::path& path);

std::string format_tweets(const TweetTable& tweets);
std::string format_authors(const AuthorTable& authors);

DatasetSplit parse_split(std::string_view document);
DatasetSplit load_split(const std::filesystem::path& path);
std::string format_split(const DatasetSplit& split);

/// Median of the nonzero values (1 when all are zero), mean of all values.
TimelineStats compute_timeline_stats(std::vector<std::int64_t> retweet_counts);

/// Returns a copy of `authors` where every author referenced by at least one
/// tweet carries TimelineStats over its tweets. Throws ReferenceError listing
/// the tweet ids whose author is unknown.
AuthorTable attach_timeline_stats(const TweetTable& tweets, const AuthorTable& authors);

/// Throws ReferenceError unless every tweet's author resolves.
void check_references(const TweetTable& tweets, const AuthorTable& authors);

/// UTC calendar day index of a timestamp.
std::int64_t utc_day(std::int64_t epoch_seconds);

/// English tweets that are viral, or non-viral but posted by an author on a
/// UTC day on which that author also has a viral English tweet.
TweetTable filter_detection_pool(const TweetTable& tweets);

/// Keeps all V viral tweets, samples V non-viral tweets without replacement,
/// and sends floor(test_frac * V) of each class to test.
DatasetSplit balance_split(const TweetTable& pool, std::uint64_t seed, double test_frac);

/// Resolves split ids against a table; throws ReferenceError for unknown ids.
std::vector<const TweetRecord*> resolve_ids(const TweetTable& tweets,
                                            const std::vector<std::string>& ids);

/// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace viralkit
