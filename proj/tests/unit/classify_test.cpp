// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "viralkit/classify.hpp"
#include "viralkit/error.hpp"

namespace viralkit {
namespace {

using testing::make_author;
using testing::make_tweet;

std::vector<DesignRow> rows_1d() { return {{"a", {-1.0}, 0}, {"b", {1.0}, 1}}; }

LinearModel model_with(std::vector<double> w, double b, double l2 = 0.0) {
  LinearModel m;
  m.feature_config = {w.size(), false};
  m.weights = std::move(w);
  m.bias = b;
  m.train_meta.l2 = l2;
  return m;
}

TEST(Assemble, Dimensions) {
  const std::vector<double> emb(8, 0.1);
  EXPECT_EQ(assemble({}, emb, true).size(), 15u);
  EXPECT_EQ(assemble({}, emb, false).size(), 8u);
  FeatureVector f;
  f.length_chars = 140;
  f.has_media = true;
  const auto x = assemble(f, {}, true);
  ASSERT_EQ(x.size(), 7u);
  EXPECT_DOUBLE_EQ(x.back(), 0.5);
  EXPECT_DOUBLE_EQ(x.front(), 1.0);
  EXPECT_THROW(assemble(f, {}, false), ValidationError);
}

TEST(PredictProb, ClosedForms) {
  EXPECT_DOUBLE_EQ(predict_prob(model_with({0, 0}, 0), std::vector<double>{3, -4}), 0.5);
  EXPECT_NEAR(predict_prob(model_with({1}, 0), std::vector<double>{std::log(3.0)}), 0.75, 1e-15);
  EXPECT_THROW(predict_prob(model_with({1}, 0), std::vector<double>{1, 2}), ValidationError);
  EXPECT_NEAR(predict_prob(model_with({1}, 0), std::vector<double>{-800}), 0.0, 1e-300);
  EXPECT_EQ(predict_prob(model_with({1}, 0), std::vector<double>{800}), 1.0);
}

TEST(Grad, SingleRowBias) {
  const std::vector<DesignRow> rows = {{"a", {0.0}, 1}};
  const auto g = grad(model_with({0}, 0), rows);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g[1], -0.5);
  EXPECT_THROW(grad(model_with({0, 0}, 0), rows), ValidationError);
}

TEST(Grad, MatchesFiniteDifferences) {
  std::mt19937_64 gen(73);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + gen() % 20;
    const std::size_t n = 1 + gen() % 30;
    std::vector<double> w(dim);
    for (auto& v : w) v = normal(gen);
    auto m = model_with(w, normal(gen), (gen() % 2) ? 0.1 : 0.0);
    std::vector<DesignRow> rows(n);
    for (auto& r : rows) {
      r.x.resize(dim);
      for (auto& v : r.x) v = normal(gen);
      r.y = static_cast<int>(gen() % 2);
    }
    const auto g = grad(m, rows);
    constexpr double h = 1e-5;
    for (std::size_t i = 0; i <= dim; ++i) {
      double& p = i < dim ? m.weights[i] : m.bias;
      const double saved = p;
      p = saved + h;
      const double up = loss(m, rows);
      p = saved - h;
      const double down = loss(m, rows);
      p = saved;
      const double numeric = (up - down) / (2 * h);
      EXPECT_LE(std::fabs(numeric - g[i]), 1e-4 * std::max(1.0, std::fabs(numeric))) << "coordinate " << i;
    }
  }
}

TEST(Train, SeparableOneDimensional) {
  const auto rows = rows_1d();
  const auto result = train_logreg(rows, TrainMeta{});
  for (const auto& r : rows) EXPECT_EQ(predict_prob(result.model, r.x) >= 0.5, r.y == 1);
  EXPECT_EQ(result.loss_trace.size(), 500u);
  EXPECT_NEAR(result.loss_trace.front(), std::log(2.0), 1e-15);
}

TEST(Train, LossTraceNonIncreasing) {
  std::mt19937_64 gen(79);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<DesignRow> rows(200);
  for (auto& r : rows) {
    r.y = static_cast<int>(gen() % 2);
    r.x = {normal(gen) + r.y, normal(gen)};
  }
  TrainMeta hyper;
  hyper.learning_rate = 0.1;
  const auto result = train_logreg(rows, hyper);
  for (std::size_t i = 1; i < result.loss_trace.size(); ++i) {
    EXPECT_LE(result.loss_trace[i], result.loss_trace[i - 1] + 1e-15);
  }
}

TEST(Train, ZeroEpochsIsZeroModel) {
  TrainMeta hyper;
  hyper.epochs = 0;
  const auto result = train_logreg(rows_1d(), hyper);
  EXPECT_EQ(result.model.weights, std::vector<double>{0.0});
  EXPECT_EQ(result.model.bias, 0.0);
  EXPECT_EQ(predict_prob(result.model, std::vector<double>{5.0}), 0.5);
}

TEST(Train, Deterministic) {
  const auto rows = rows_1d();
  EXPECT_EQ(train_logreg(rows, TrainMeta{}).model, train_logreg(rows, TrainMeta{}).model);
}

TEST(Train, ConvergesWithL2) {
  TrainMeta hyper;
  hyper.l2 = 0.1;
  hyper.epochs = 5000;
  const auto rows = rows_1d();
  const auto m = train_logreg(rows, hyper).model;
  const auto g = grad(m, rows);
  EXPECT_LT(std::hypot(g[0], g[1]), 1e-6);
}

TEST(Train, InputErrors) {
  const std::vector<DesignRow> one_class = {{"a", {1.0}, 1}, {"b", {2.0}, 1}};
  EXPECT_THROW(train_logreg(one_class, TrainMeta{}), ValidationError);
  const std::vector<DesignRow> ragged = {{"a", {1.0}, 1}, {"b", {2.0, 1.0}, 0}};
  EXPECT_THROW(train_logreg(ragged, TrainMeta{}), ValidationError);
  EXPECT_THROW(train_logreg(rows_1d(), TrainMeta{}, FeatureConfig{3, false}), ValidationError);
}

TEST(Train, DivergenceNamesEpoch) {
  const std::vector<DesignRow> rows = {{"a", {-1e200}, 0}, {"b", {1e200}, 1}};
  try {
    train_logreg(rows, TrainMeta{});
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("epoch"), std::string::npos);
  }
}

TEST(EvalClassifier, Arithmetic) {
  std::vector<Prediction> p;
  for (int i = 0; i < 3; ++i) p.push_back({0.9, 1});
  p.push_back({0.8, 0});
  for (int i = 0; i < 2; ++i) p.push_back({0.1, 1});
  for (int i = 0; i < 4; ++i) p.push_back({0.2, 0});
  const auto r = eval_classifier(p);
  EXPECT_EQ(r.confusion, (Confusion{3, 1, 2, 4}));
  EXPECT_DOUBLE_EQ(r.precision, 0.75);
  EXPECT_DOUBLE_EQ(r.recall, 0.6);
  EXPECT_NEAR(r.f1, 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.7);
}

TEST(EvalClassifier, AllCorrectAndNoPositives) {
  const std::vector<Prediction> perfect = {{0.9, 1}, {0.1, 0}};
  const auto a = eval_classifier(perfect);
  EXPECT_EQ(a.precision, 1.0);
  EXPECT_EQ(a.recall, 1.0);
  EXPECT_EQ(a.f1, 1.0);
  EXPECT_EQ(a.accuracy, 1.0);
  const std::vector<Prediction> none = {{0.1, 1}, {0.2, 0}};
  const auto b = eval_classifier(none);
  EXPECT_EQ(b.precision, 0.0);
  EXPECT_EQ(b.f1, 0.0);
}

TEST(EvalClassifier, MatchesBruteForceCounts) {
  std::mt19937_64 gen(83);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Prediction> p(1 + gen() % 50);
    for (auto& x : p) x = {u(gen), static_cast<int>(gen() % 2)};
    const double thr = u(gen);
    const auto r = eval_classifier(p, thr);
    Confusion c;
    for (const auto& x : p) {
      const int predicted = x.prob >= thr;
      if (predicted == 1 && x.label == 1) ++c.tp;
      if (predicted == 1 && x.label == 0) ++c.fp;
      if (predicted == 0 && x.label == 1) ++c.fn;
      if (predicted == 0 && x.label == 0) ++c.tn;
    }
    EXPECT_EQ(r.confusion, c);
    for (double s : {r.accuracy, r.precision, r.recall, r.f1}) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
  }
}

TEST(ModelFile, RoundTripAndValidation) {
  auto m = model_with({0.25, -1.5}, 0.125);
  m.train_meta.seed = 9;
  EXPECT_EQ(parse_model(format_model(m)), m);
  m.feature_config.embedding_dim = 3;
  EXPECT_THROW(parse_model(format_model(m)), ValidationError);
  EXPECT_THROW(parse_model("{}"), ParseError);
}

TEST(Embeddings, RoundTripAndErrors) {
  EmbeddingTable t;
  t.dim = 2;
  t.order = {"b", "a"};
  t.vectors = {{"a", {1.0, 0.0}}, {"b", {0.5, -0.5}}};
  std::istringstream in(format_embeddings(t));
  const auto back = parse_embeddings(in);
  EXPECT_EQ(back.order, t.order);
  EXPECT_EQ(back.vectors, t.vectors);

  std::istringstream wrong_len("{\"dim\":2}\n{\"tweet_id\":\"a\",\"vector\":[1]}\n");
  EXPECT_THROW(parse_embeddings(wrong_len), ParseError);
  std::istringstream header_only("{\"dim\":768}\n");
  EXPECT_TRUE(parse_embeddings(header_only).vectors.empty());
}

TEST(HashedEmbedding, UnitNormAndDeterministic) {
  const auto a = hashed_embedding("hello world", 32, 1);
  double norm = 0.0;
  for (double v : a) norm += v * v;
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_EQ(a, hashed_embedding("hello world", 32, 1));
  EXPECT_NE(a, hashed_embedding("hello world", 32, 2));
  EXPECT_NE(a, hashed_embedding("hello worlds", 32, 1));
}

TEST(BuildDesign, RowsFollowIds) {
  auto t1 = make_tweet("t1", "u", 1, true);
  t1.text = "#tag love love";
  const TweetTable tweets({t1, make_tweet("t2", "u", 1, false)});
  const AuthorTable authors({make_author("u", 1, 1, true)});
  EmbeddingTable emb;
  emb.dim = 2;
  emb.order = {"t1", "t2"};
  emb.vectors = {{"t1", {1, 2}}, {"t2", {3, 4}}};
  const auto rows = build_design({"t2", "t1"}, tweets, authors, stub_sentiment_provider(), &emb, true);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].tweet_id, "t2");
  EXPECT_EQ(rows[0].y, 0);
  EXPECT_EQ(rows[1].x, (std::vector<double>{1, 2, 0, 1, 1, 1, 0, 0, 14.0 / 280.0}));
  emb.vectors.erase("t2");
  EXPECT_THROW(build_design({"t2"}, tweets, authors, stub_sentiment_provider(), &emb, true), ReferenceError);
}

}  // namespace
}  // namespace viralkit
