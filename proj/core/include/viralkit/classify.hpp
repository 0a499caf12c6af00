// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "viralkit/corpus.hpp"
#include "viralkit/features.hpp"

namespace viralkit {

/// Number of content features appended when `use_extra` is set.
inline constexpr std::size_t kExtraFeatureCount = 7;
/// Tweet length is divided by the platform character limit.
inline constexpr double kLengthScale = 280.0;

struct FeatureConfig {
  std::size_t embedding_dim = 0;
  bool use_extra = false;

  std::size_t input_dim() const { return embedding_dim + (use_extra ? kExtraFeatureCount : 0); }
  bool operator==(const FeatureConfig&) const = default;
};

struct TrainMeta {
  std::uint64_t seed = 42;
  std::size_t epochs = 500;
  double learning_rate = 0.5;
  double l2 = 0.0;

  bool operator==(const TrainMeta&) const = default;
};

/// Logistic-regression head: p = sigmoid(w . x + b).
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  FeatureConfig feature_config;
  TrainMeta train_meta;

  bool operator==(const LinearModel&) const = default;
};

struct DesignRow {
  std::string tweet_id;
  std::vector<double> x;
  int y = 0;
};

/// embedding ++ [media, hashtags, verified, positive, negative, mentions,
/// length / 280] when use_extra, else the embedding alone.
/// Throws ValidationError if the result would be empty.
std::vector<double> assemble(const FeatureVector& features, std::span<const double> embedding, bool use_extra);

struct TrainResult {
  LinearModel model;
  std::vector<double> loss_trace;  // loss before each epoch's update
};

/// Full-batch gradient descent on mean binary cross-entropy plus
/// (l2 / 2) * |w|^2 (bias unregularized), starting from zero weights.
/// `config` defaults to a plain (embedding-only) layout of the row width.
TrainResult train_logreg(std::span<const DesignRow> rows, const TrainMeta& hyper,
                         std::optional<FeatureConfig> config = std::nullopt);

double predict_prob(const LinearModel& model, std::span<const double> x);

/// Regularized mean loss, using model.train_meta.l2.
double loss(const LinearModel& model, std::span<const DesignRow> rows);

/// d(loss)/d(w_0..w_{n-1}, b).
std::vector<double> grad(const LinearModel& model, std::span<const DesignRow> rows);

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  bool operator==(const Confusion&) const = default;
};

struct ClassReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Confusion confusion;
};

struct Prediction {
  double prob = 0.0;
  int label = 0;
};

/// prob >= threshold counts as a viral prediction. Precision and recall are 0
/// when their denominators are; f1 is 0 when both are.
ClassReport eval_classifier(std::span<const Prediction> predictions, double threshold = 0.5);

// Model file: a single JSON document {weights, bias, feature_config, train_meta}.
std::string format_model(const LinearModel& model);
LinearModel parse_model(std::string_view document);
LinearModel load_model(const std::filesystem::path& path);

/// {accuracy, precision, recall, f1, confusion: {tp, fp, fn, tn}}
std::string format_class_report(const ClassReport& report);
/// model,use_extra,precision,recall,f1,accuracy (header + one row)
std::string format_class_report_csv(const ClassReport& report, std::string_view model_name, bool use_extra);

/// Embedding file: first line {"dim": E}, then {"tweet_id", "vector"} per line.
struct EmbeddingTable {
  std::size_t dim = 0;
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<double>> vectors;

  const std::vector<double>* find(const std::string& id) const;
};

EmbeddingTable parse_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::filesystem::path& path);
std::string format_embeddings(const EmbeddingTable& table);

/// Deterministic stand-in for a text encoder: the text and seed are hashed
/// into a `dim`-dimensional unit vector. Carries no semantic signal.
std::vector<double> hashed_embedding(std::string_view text, std::size_t dim, std::uint64_t seed);

/// Design rows for `ids`. When `embeddings` is null the rows hold only the
/// extra features. Missing authors or embeddings raise ReferenceError.
std::vector<DesignRow> build_design(const std::vector<std::string>& ids, const TweetTable& tweets,
                                    const AuthorTable& authors, const SentimentProvider& sentiment,
                                    const EmbeddingTable* embeddings, bool use_extra);

}  // namespace viralkit
