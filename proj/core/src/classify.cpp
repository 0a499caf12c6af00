// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include "viralkit/classify.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace viralkit {

using nlohmann::json;

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z))); }

double dot(std::span<const double> w, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
  return s;
}

void check_rows(std::span<const DesignRow> rows, std::size_t dim) {
  for (const auto& r : rows) {
    if (r.x.size() != dim) {
      throw ValidationError("row '" + r.tweet_id + "' has dimension " + std::to_string(r.x.size()) + ", expected " +
                            std::to_string(dim));
    }
    if (r.y != 0 && r.y != 1) throw ValidationError("row '" + r.tweet_id + "' has a label other than 0/1");
  }
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<double> assemble(const FeatureVector& f, std::span<const double> embedding, bool use_extra) {
  std::vector<double> x(embedding.begin(), embedding.end());
  if (use_extra) {
    x.insert(x.end(), {
                          f.has_media ? 1.0 : 0.0,
                          f.has_hashtags ? 1.0 : 0.0,
                          f.from_verified ? 1.0 : 0.0,
                          f.positive_sentiment ? 1.0 : 0.0,
                          f.negative_sentiment ? 1.0 : 0.0,
                          f.has_mentions ? 1.0 : 0.0,
                          static_cast<double>(f.length_chars) / kLengthScale,
                      });
  }
  if (x.empty()) throw ValidationError("design vector is empty: no embedding and extra features disabled");
  return x;
}

double predict_prob(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    throw ValidationError("input has dimension " + std::to_string(x.size()) + ", model expects " +
                          std::to_string(model.weights.size()));
  }
  return sigmoid(dot(model.weights, x) + model.bias);
}

double loss(const LinearModel& model, std::span<const DesignRow> rows) {
  check_rows(rows, model.weights.size());
  if (rows.empty()) throw ValidationError("loss of an empty batch");
  double total = 0.0;
  for (const auto& r : rows) {
    const double z = dot(model.weights, r.x) + model.bias;
    total += softplus(z) - r.y * z;
  }
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  return total / static_cast<double>(rows.size()) + 0.5 * model.train_meta.l2 * reg;
}

std::vector<double> grad(const LinearModel& model, std::span<const DesignRow> rows) {
  check_rows(rows, model.weights.size());
  if (rows.empty()) throw ValidationError("gradient of an empty batch");
  const std::size_t dim = model.weights.size();
  std::vector<double> g(dim + 1, 0.0);
  for (const auto& r : rows) {
    const double residual = sigmoid(dot(model.weights, r.x) + model.bias) - r.y;
    for (std::size_t i = 0; i < dim; ++i) g[i] += residual * r.x[i];
    g[dim] += residual;
  }
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  for (std::size_t i = 0; i < dim; ++i) g[i] = g[i] * inv_n + model.train_meta.l2 * model.weights[i];
  g[dim] *= inv_n;
  return g;
}

TrainResult train_logreg(std::span<const DesignRow> rows, const TrainMeta& hyper,
                         std::optional<FeatureConfig> config) {
  if (rows.empty()) throw ValidationError("no training rows");
  const std::size_t dim = rows.front().x.size();
  check_rows(rows, dim);
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& r : rows) (r.y ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) throw ValidationError("training data must contain both classes");
  if (!(hyper.learning_rate > 0.0) || hyper.l2 < 0.0) throw ValidationError("invalid learning rate or l2");

  const FeatureConfig fc = config.value_or(FeatureConfig{dim, false});
  if (fc.input_dim() != dim) {
    throw ValidationError("feature config implies dimension " + std::to_string(fc.input_dim()) + ", rows have " +
                          std::to_string(dim));
  }

  TrainResult result;
  result.model.weights.assign(dim, 0.0);
  result.model.feature_config = fc;
  result.model.train_meta = hyper;
  result.loss_trace.reserve(hyper.epochs);
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    const double l = loss(result.model, rows);
    if (!std::isfinite(l)) throw DivergenceError("non-finite training loss", epoch);
    result.loss_trace.push_back(l);
    const auto g = grad(result.model, rows);
    for (std::size_t i = 0; i < dim; ++i) result.model.weights[i] -= hyper.learning_rate * g[i];
    result.model.bias -= hyper.learning_rate * g[dim];
  }
  return result;
}

ClassReport eval_classifier(std::span<const Prediction> predictions, double threshold) {
  if (predictions.empty()) throw ValidationError("no predictions to evaluate");
  ClassReport rep;
  auto& c = rep.confusion;
  for (const auto& p : predictions) {
    const bool predicted = p.prob >= threshold;
    const bool actual = p.label != 0;
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  rep.accuracy = ratio(c.tp + c.tn, predictions.size());
  rep.precision = ratio(c.tp, c.tp + c.fp);
  rep.recall = ratio(c.tp, c.tp + c.fn);
  const double pr = rep.precision + rep.recall;
  rep.f1 = pr > 0.0 ? 2.0 * rep.precision * rep.recall / pr : 0.0;
  return rep;
}

std::string format_model(const LinearModel& m) {
  nlohmann::ordered_json doc;
  doc["weights"] = m.weights;
  doc["bias"] = m.bias;
  doc["feature_config"] = {{"embedding_dim", m.feature_config.embedding_dim},
                           {"use_extra", m.feature_config.use_extra}};
  doc["train_meta"] = {{"seed", m.train_meta.seed},
                       {"epochs", m.train_meta.epochs},
                       {"learning_rate", m.train_meta.learning_rate},
                       {"l2", m.train_meta.l2}};
  return doc.dump(1) + "\n";
}

LinearModel parse_model(std::string_view document) {
  LinearModel m;
  try {
    const auto doc = json::parse(document);
    m.weights = doc.at("weights").get<std::vector<double>>();
    m.bias = doc.at("bias").get<double>();
    const auto& fc = doc.at("feature_config");
    m.feature_config.embedding_dim = fc.at("embedding_dim").get<std::size_t>();
    m.feature_config.use_extra = fc.at("use_extra").get<bool>();
    const auto& tm = doc.at("train_meta");
    m.train_meta.seed = tm.at("seed").get<std::uint64_t>();
    m.train_meta.epochs = tm.at("epochs").get<std::size_t>();
    m.train_meta.learning_rate = tm.at("learning_rate").get<double>();
    m.train_meta.l2 = tm.at("l2").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid model document: ") + e.what(), 0);
  }
  if (m.weights.size() != m.feature_config.input_dim()) {
    throw ValidationError("model has " + std::to_string(m.weights.size()) + " weights, feature config implies " +
                          std::to_string(m.feature_config.input_dim()));
  }
  return m;
}

LinearModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

std::string format_class_report(const ClassReport& r) {
  nlohmann::ordered_json doc;
  doc["accuracy"] = r.accuracy;
  doc["precision"] = r.precision;
  doc["recall"] = r.recall;
  doc["f1"] = r.f1;
  doc["confusion"] = {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"fn", r.confusion.fn}, {"tn", r.confusion.tn}};
  return doc.dump(1) + "\n";
}

std::string format_class_report_csv(const ClassReport& r, std::string_view model_name, bool use_extra) {
  return fmt::format("model,use_extra,precision,recall,f1,accuracy\n{},{},{:.3f},{:.3f},{:.3f},{:.3f}\n", model_name,
                     use_extra ? "true" : "false", r.precision, r.recall, r.f1, r.accuracy);
}

const std::vector<double>* EmbeddingTable::find(const std::string& id) const {
  const auto it = vectors.find(id);
  return it == vectors.end() ? nullptr : &it->second;
}

EmbeddingTable parse_embeddings(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    try {
      if (!have_header) {
        table.dim = doc.at("dim").get<std::size_t>();
        have_header = true;
        continue;
      }
      auto id = doc.at("tweet_id").get<std::string>();
      auto vec = doc.at("vector").get<std::vector<double>>();
      if (vec.size() != table.dim) {
        throw ParseError("vector for '" + id + "' has length " + std::to_string(vec.size()) + ", header declares " +
                             std::to_string(table.dim),
                         line_no);
      }
      if (!table.vectors.emplace(id, std::move(vec)).second) {
        throw ParseError("duplicate tweet_id '" + id + "'", line_no);
      }
      table.order.push_back(std::move(id));
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid embedding record: ") + e.what(), line_no);
    }
  }
  if (!have_header) throw ParseError("embedding file has no header record", 0);
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_embeddings(in);
}

std::string format_embeddings(const EmbeddingTable& table) {
  std::string out = nlohmann::ordered_json{{"dim", table.dim}}.dump() + "\n";
  for (const auto& id : table.order) {
    nlohmann::ordered_json row;
    row["tweet_id"] = id;
    row["vector"] = table.vectors.at(id);
    out += row.dump();
    out += '\n';
  }
  return out;
}

std::vector<double> hashed_embedding(std::string_view text, std::size_t dim, std::uint64_t seed) {
  // FNV-1a over the bytes, then a splitmix64 stream seeded by (hash, seed).
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  std::uint64_t state = h ^ (seed * 0x9E3779B97F4A7C15ULL);
  std::vector<double> v(dim);
  double norm2 = 0.0;
  for (auto& x : v) {
    x = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    norm2 += x * x;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
  }
  return v;
}

std::vector<DesignRow> build_design(const std::vector<std::string>& ids, const TweetTable& tweets,
                                    const AuthorTable& authors, const SentimentProvider& sentiment,
                                    const EmbeddingTable* embeddings, bool use_extra) {
  std::vector<DesignRow> rows;
  rows.reserve(ids.size());
  for (const auto* t : resolve_ids(tweets, ids)) {
    const auto* author = authors.find(t->author_id);
    if (!author) throw ReferenceError("tweet '" + t->id + "' has unknown author '" + t->author_id + "'");
    std::span<const double> emb;
    if (embeddings) {
      const auto* v = embeddings->find(t->id);
      if (!v) throw ReferenceError("no embedding for tweet '" + t->id + "'");
      emb = *v;
    }
    const FeatureVector f = extract(*t, *author, sentiment(*t));
    rows.push_back({t->id, assemble(f, emb, use_extra), t->is_viral ? 1 : 0});
  }
  return rows;
}

}  // namespace viralkit
