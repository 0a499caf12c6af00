// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "test_support.hpp"
#include "viralkit/corpus.hpp"
#include "viralkit/error.hpp"

namespace viralkit {
namespace {

using testing::make_author;
using testing::make_tweet;
using testing::TempDir;

std::string tweet_json(std::string_view id, std::int64_t rt = 3) {
  return std::string(R"({"id":")") + std::string(id) +
         R"(","author_id":"u1","created_at":1664582400,"text":"hi","lang":"en","retweet_count":)" +
         std::to_string(rt) + R"(,"favorite_count":0,"has_media":false,"is_viral":false})";
}

TweetTable parse_tweet_text(const std::string& s) {
  std::istringstream in(s);
  return parse_tweets(in);
}

AuthorTable parse_author_text(const std::string& s) {
  std::istringstream in(s);
  return parse_authors(in);
}

TEST(LoadTweets, ThreeValidLines) {
  const auto t = parse_tweet_text(tweet_json("a") + "\n" + tweet_json("b") + "\n" + tweet_json("c") + "\n");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[1].id, "b");
  EXPECT_EQ(t.find("c")->retweet_count, 3);
}

TEST(LoadTweets, DuplicateIdRejected) {
  EXPECT_THROW(parse_tweet_text(tweet_json("t1") + "\n" + tweet_json("t1") + "\n"), ValidationError);
}

TEST(LoadTweets, NegativeRetweetsRejected) {
  EXPECT_THROW(parse_tweet_text(tweet_json("t1", -1)), ValidationError);
}

TEST(LoadTweets, MalformedLineNamesLine) {
  try {
    parse_tweet_text(tweet_json("a") + "\n{not json\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadTweets, MissingAndUnknownFieldsRejected) {
  EXPECT_THROW(parse_tweet_text(R"({"id":"a"})"), ParseError);
  std::string extra = tweet_json("a");
  extra.insert(extra.size() - 1, R"(,"color":"red")");
  EXPECT_THROW(parse_tweet_text(extra), ParseError);
  std::string wrong_type = tweet_json("a");
  wrong_type.replace(wrong_type.find("\"retweet_count\":3"), 17, R"("retweet_count":"3")");
  EXPECT_THROW(parse_tweet_text(wrong_type), ParseError);
}

TEST(LoadTweets, BlankLinesSkipped) {
  EXPECT_EQ(parse_tweet_text("\n" + tweet_json("a") + "\n\n  \n").size(), 1u);
}

TEST(LoadTweets, MissingFileIsIoError) {
  EXPECT_THROW(load_tweets("/nonexistent/viralkit/tweets.jsonl"), IoError);
}

TEST(LoadTweets, RoundTripThroughFile) {
  TempDir dir;
  std::vector<TweetRecord> recs = {make_tweet("t1", "u1", 5, true), make_tweet("t2", "u2", 0, false)};
  recs[0].text = "caf\xc3\xa9 \"quoted\" #tag";
  recs[1].has_media = true;
  const TweetTable table(recs);
  write_file_atomic(dir.file("t.jsonl"), format_tweets(table));
  EXPECT_EQ(load_tweets(dir.file("t.jsonl")), table);
}

TEST(LoadAuthors, TwoValidLines) {
  const auto a = parse_author_text(R"({"id":"u1","followers_count":10,"followings_count":2,"verified":true})"
                                   "\n"
                                   R"({"id":"u2","followers_count":0,"followings_count":0,"verified":false})");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.find("u1")->verified);
  EXPECT_FALSE(a.find("u1")->timeline_stats.has_value());
}

TEST(LoadAuthors, NegativeFollowersRejected) {
  EXPECT_THROW(parse_author_text(R"({"id":"u1","followers_count":-5,"followings_count":2,"verified":true})"),
               ValidationError);
}

TEST(LoadAuthors, EmptyFileIsEmptyTable) {
  TempDir dir;
  write_file_atomic(dir.file("a.jsonl"), "");
  EXPECT_TRUE(load_authors(dir.file("a.jsonl")).empty());
}

TEST(LoadAuthors, RoundTrip) {
  const AuthorTable table({make_author("u1", 10, 3, true), make_author("u2", 0, 0)});
  EXPECT_EQ(parse_author_text(format_authors(table)), table);
}

TEST(TimelineStats, MedianOverNonzero) {
  const auto s = compute_timeline_stats({0, 0, 1, 3, 5});
  EXPECT_DOUBLE_EQ(s.median_nonzero_rt, 3.0);
  EXPECT_DOUBLE_EQ(s.avg_rt, 1.8);
  EXPECT_EQ(s.n_tweets, 5u);
}

TEST(TimelineStats, AllZeroFallsBackToOne) {
  const auto s = compute_timeline_stats({0, 0, 0});
  EXPECT_DOUBLE_EQ(s.median_nonzero_rt, 1.0);
  EXPECT_DOUBLE_EQ(s.avg_rt, 0.0);
}

TEST(TimelineStats, SingleTweet) {
  const auto s = compute_timeline_stats({4});
  EXPECT_DOUBLE_EQ(s.median_nonzero_rt, 4.0);
  EXPECT_DOUBLE_EQ(s.avg_rt, 4.0);
  EXPECT_EQ(s.sorted_rts, std::vector<std::int64_t>{4});
}

TEST(TimelineStats, EvenCountAveragesMiddlePair) {
  EXPECT_DOUBLE_EQ(compute_timeline_stats({7, 1, 0, 4}).median_nonzero_rt, 4.0);
  EXPECT_DOUBLE_EQ(compute_timeline_stats({2, 6, 1, 9}).median_nonzero_rt, 4.0);
}

TEST(TimelineStats, EmptyRejected) { EXPECT_THROW(compute_timeline_stats({}), ValidationError); }

TEST(TimelineStats, SortedAscendingProperty) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> v(1 + gen() % 30);
    for (auto& x : v) x = static_cast<std::int64_t>(gen() % 20);
    const auto s = compute_timeline_stats(v);
    EXPECT_TRUE(std::is_sorted(s.sorted_rts.begin(), s.sorted_rts.end()));
    EXPECT_GE(s.median_nonzero_rt, 1.0);
    EXPECT_GE(s.avg_rt, 0.0);
  }
}

TEST(AttachTimelineStats, GroupsByAuthor) {
  const TweetTable tweets({make_tweet("a", "u1", 0, false), make_tweet("b", "u1", 3, false),
                           make_tweet("c", "u2", 7, true)});
  const AuthorTable authors({make_author("u1", 10), make_author("u2", 20), make_author("u3", 5)});
  const auto out = attach_timeline_stats(tweets, authors);
  EXPECT_DOUBLE_EQ(out.find("u1")->timeline_stats->avg_rt, 1.5);
  EXPECT_DOUBLE_EQ(out.find("u1")->timeline_stats->median_nonzero_rt, 3.0);
  EXPECT_EQ(out.find("u2")->timeline_stats->sorted_rts, std::vector<std::int64_t>{7});
  EXPECT_FALSE(out.find("u3")->timeline_stats.has_value());
}

TEST(AttachTimelineStats, UnknownAuthorListsTweet) {
  const TweetTable tweets({make_tweet("orphan", "ghost", 1, false)});
  const AuthorTable authors({make_author("u1", 10)});
  try {
    attach_timeline_stats(tweets, authors);
    FAIL() << "expected ReferenceError";
  } catch (const ReferenceError& e) {
    EXPECT_NE(std::string(e.what()).find("orphan"), std::string::npos);
  }
}

TEST(UtcDay, FloorsNegativeTimes) {
  EXPECT_EQ(utc_day(0), 0);
  EXPECT_EQ(utc_day(86399), 0);
  EXPECT_EQ(utc_day(86400), 1);
  EXPECT_EQ(utc_day(-1), -1);
}

TEST(DetectionPool, SameAuthorSameDay) {
  const std::int64_t day = 1664582400;
  const TweetTable tweets({make_tweet("v", "u1", 100, true, day + 10), make_tweet("n1", "u1", 1, false, day + 500),
                           make_tweet("n2", "u1", 1, false, day + 86400 + 5)});
  const auto pool = filter_detection_pool(tweets);
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool[0].id, "v");
  EXPECT_EQ(pool[1].id, "n1");
}

TEST(DetectionPool, NonEnglishExcluded) {
  const TweetTable tweets({make_tweet("v", "u1", 100, true, 0, "fr"), make_tweet("n", "u1", 1, false, 0)});
  EXPECT_TRUE(filter_detection_pool(tweets).empty());
}

TEST(DetectionPool, NoViralsGivesEmptyPool) {
  const TweetTable tweets({make_tweet("a", "u1", 1, false), make_tweet("b", "u2", 1, false)});
  EXPECT_TRUE(filter_detection_pool(tweets).empty());
}

TEST(DetectionPool, OtherAuthorsExcluded) {
  const TweetTable tweets({make_tweet("v", "u1", 100, true), make_tweet("n", "u2", 1, false)});
  EXPECT_EQ(filter_detection_pool(tweets).size(), 1u);
}

TweetTable class_table(std::size_t n_viral, std::size_t n_nonviral) {
  std::vector<TweetRecord> recs;
  for (std::size_t i = 0; i < n_viral; ++i) recs.push_back(make_tweet("v" + std::to_string(i), "u", 100, true));
  for (std::size_t i = 0; i < n_nonviral; ++i) recs.push_back(make_tweet("n" + std::to_string(i), "u", 1, false));
  return TweetTable(std::move(recs));
}

TEST(BalanceSplit, PublishedSizes) {
  const auto split = balance_split(class_table(787, 15904), 42, 0.2);
  EXPECT_EQ(split.train.size(), 1260u);
  EXPECT_EQ(split.test.size(), 314u);
  EXPECT_EQ(split.seed, 42u);
}

TEST(BalanceSplit, DeterministicForSeed) {
  const auto pool = class_table(50, 300);
  EXPECT_EQ(balance_split(pool, 9, 0.2), balance_split(pool, 9, 0.2));
  EXPECT_NE(balance_split(pool, 9, 0.2), balance_split(pool, 10, 0.2));
}

TEST(BalanceSplit, TooFewNonViralIsCapacityError) {
  EXPECT_THROW(balance_split(class_table(10, 5), 1, 0.2), CapacityError);
  EXPECT_THROW(balance_split(class_table(0, 5), 1, 0.2), CapacityError);
}

TEST(BalanceSplit, BadFractionRejected) {
  EXPECT_THROW(balance_split(class_table(10, 10), 1, 0.0), ValidationError);
  EXPECT_THROW(balance_split(class_table(10, 10), 1, 1.0), ValidationError);
}

TEST(BalanceSplit, PropertyBalancedAndDisjoint) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t v = 1 + gen() % 60;
    const std::size_t n = v + gen() % 100;
    const double frac = 0.05 + 0.9 * static_cast<double>(gen() % 1000) / 1000.0;
    const auto pool = class_table(v, n);
    const auto split = balance_split(pool, gen(), frac);
    const auto count_viral = [&](const std::vector<std::string>& ids) {
      std::size_t c = 0;
      for (const auto& id : ids) c += pool.find(id)->is_viral ? 1 : 0;
      return c;
    };
    EXPECT_EQ(count_viral(split.train) * 2, split.train.size());
    EXPECT_EQ(count_viral(split.test) * 2, split.test.size());
    EXPECT_EQ(split.train.size() + split.test.size(), 2 * v);
    std::set<std::string> all(split.train.begin(), split.train.end());
    for (const auto& id : split.test) EXPECT_TRUE(all.insert(id).second);
  }
}

TEST(SplitFile, RoundTripAndOverlapRejected) {
  DatasetSplit s{{"a", "b"}, {"c"}, 7};
  EXPECT_EQ(parse_split(format_split(s)), s);
  EXPECT_THROW(parse_split(R"({"seed":1,"train":["a"],"test":["a"]})"), ValidationError);
  EXPECT_THROW(parse_split(R"({"train":["a"]})"), ParseError);
}

TEST(ResolveIds, UnknownIdIsReferenceError) {
  const TweetTable tweets({make_tweet("a", "u1", 1, false)});
  EXPECT_EQ(resolve_ids(tweets, {"a"}).front()->id, "a");
  EXPECT_THROW(resolve_ids(tweets, {"zzz"}), ReferenceError);
}

TEST(WriteFileAtomic, ReplacesContents) {
  TempDir dir;
  write_file_atomic(dir.file("x"), "first");
  write_file_atomic(dir.file("x"), "second");
  EXPECT_EQ(read_file(dir.file("x")), "second");
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()), std::filesystem::directory_iterator()), 1);
}

}  // namespace
}  // namespace viralkit
