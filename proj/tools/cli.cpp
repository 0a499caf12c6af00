// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "viralkit/classify.hpp"
#include "viralkit/corpus.hpp"
#include "viralkit/features.hpp"
#include "viralkit/metrics.hpp"
#include "viralkit/synth.hpp"
#include "viralkit/vireval.hpp"

namespace viralkit::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// VIRALKIT_LOG=error|warn|info|debug, default warn.
LogLevel log_level_from_env() {
  const char* v = std::getenv("VIRALKIT_LOG");
  if (!v) return LogLevel::Warn;
  const std::string s(v);
  if (s == "error") return LogLevel::Error;
  if (s == "info") return LogLevel::Info;
  if (s == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

class Context {
 public:
  Context(std::ostream& out, std::ostream& err) : out_(out), err_(err), level_(log_level_from_env()) {}

  void log(LogLevel level, const std::string& msg) {
    static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
    if (level <= level_) err_ << "[" << kNames[static_cast<int>(level)] << "] " << msg << '\n';
  }

  void write(const std::filesystem::path& path, std::string_view contents, const std::string& summary) {
    write_file_atomic(path, contents);
    out_ << "wrote " << path.string() << ": " << summary << '\n';
  }

  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  LogLevel level_;
};

std::vector<MetricKind> parse_metric_list(const std::string& list) {
  if (list.empty() || list == "all") return {kAllMetrics.begin(), kAllMetrics.end()};
  std::vector<MetricKind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_metric(item));
  }
  if (out.empty()) throw ValidationError("empty metric list");
  return out;
}

SentimentProvider make_provider(const std::string& sentiment_path) {
  if (sentiment_path.empty()) return stub_sentiment_provider();
  return file_sentiment_provider(load_sentiment(sentiment_path));
}

struct Corpus {
  TweetTable tweets;
  AuthorTable authors;
};

Corpus load_corpus(Context& ctx, const std::string& tweets_path, const std::string& authors_path) {
  Corpus c{load_tweets(tweets_path), load_authors(authors_path)};
  ctx.log(LogLevel::Info, fmt::format("loaded {} tweets, {} authors", c.tweets.size(), c.authors.size()));
  c.authors = attach_timeline_stats(c.tweets, c.authors);
  return c;
}

struct GenArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_authors;
  std::optional<double> label_noise;
  std::optional<double> ratio_threshold;
  std::string out_tweets;
  std::string out_authors;
};

void cmd_gen(Context& ctx, const GenArgs& a) {
  SynthConfig cfg;
  if (!a.config.empty()) cfg = parse_synth_config(read_file(a.config));
  if (a.seed) cfg.seed = *a.seed;
  if (a.n_authors) cfg.n_authors = *a.n_authors;
  if (a.label_noise) cfg.viral_rule.label_noise = *a.label_noise;
  if (a.ratio_threshold) cfg.viral_rule.ratio_threshold = *a.ratio_threshold;
  const SynthCorpus corpus = generate(cfg);
  std::size_t viral = 0;
  for (const auto& t : corpus.tweets) viral += t.is_viral;
  ctx.write(a.out_tweets, format_tweets(corpus.tweets),
            fmt::format("{} tweets ({} viral)", corpus.tweets.size(), viral));
  ctx.write(a.out_authors, format_authors(corpus.authors), fmt::format("{} authors", corpus.authors.size()));
}

struct EvalArgs {
  std::string tweets;
  std::string authors;
  std::string out;
  std::string metrics = "all";
  std::string auc_mode = "restricted";
  std::string auc2_mode = "all";
  double auc2_cap = 0.016;
  double tpr_target = 0.95;
  double influence_a = 10.0;
  std::string roc_dir;
  bool grid = false;
};

void cmd_eval_metrics(Context& ctx, const EvalArgs& a) {
  const Corpus c = load_corpus(ctx, a.tweets, a.authors);
  const auto kinds = parse_metric_list(a.metrics);
  EvalOptions opts;
  opts.auc_mode = parse_fpr_mode(a.auc_mode);
  opts.auc2_mode = parse_fpr_mode(a.auc2_mode);
  opts.auc2_cap = a.auc2_cap;
  opts.tpr_target = a.tpr_target;
  MetricConfig mc;
  mc.influence_a = a.influence_a;

  std::vector<MetricReport> reports;
  if (a.roc_dir.empty()) {
    reports = evaluate_metrics(c.tweets, c.authors, kinds, mc, opts);
  } else {
    std::filesystem::create_directories(a.roc_dir);
    for (MetricKind k : kinds) {
      const auto ev = evaluate_metric(k, c.tweets, c.authors, mc, opts);
      reports.push_back(ev.report);
      const auto emit = [&](const RocCurve& curve, FprMode mode) {
        const auto path = std::filesystem::path(a.roc_dir) /
                          fmt::format("roc_{}_{}.csv", metric_name(k), fpr_mode_name(mode));
        const RocCurve& shown = a.grid ? sample_grid(curve) : curve;
        ctx.write(path, format_roc_csv(a.grid ? sample_grid(curve) : curve),
                  fmt::format("{} points", shown.points.size()));
      };
      emit(ev.auc_curve, opts.auc_mode);
      if (opts.auc2_mode != opts.auc_mode) emit(ev.auc2_curve, opts.auc2_mode);
    }
  }
  ctx.write(a.out, format_report_csv(reports), fmt::format("{} metric rows", reports.size()));
}

struct FeatureArgs {
  std::string tweets;
  std::string authors;
  std::string sentiment;
  std::string out;
};

void cmd_feature_stats(Context& ctx, const FeatureArgs& a) {
  const TweetTable tweets = load_tweets(a.tweets);
  const AuthorTable authors = load_authors(a.authors);
  check_references(tweets, authors);
  const auto stats = feature_table(tweets, authors, make_provider(a.sentiment));
  std::size_t significant = 0;
  for (const auto& s : stats) significant += s.significant;
  ctx.write(a.out, format_feature_csv(stats), fmt::format("{} features, {} significant", stats.size(), significant));
}

struct SplitArgs {
  std::string tweets;
  std::uint64_t seed = kDefaultSeed;
  double test_frac = 0.2;
  std::string out;
  std::string out_pool;
};

void cmd_prep_split(Context& ctx, const SplitArgs& a) {
  const TweetTable tweets = load_tweets(a.tweets);
  const TweetTable pool = filter_detection_pool(tweets);
  ctx.log(LogLevel::Info, fmt::format("detection pool: {} of {} tweets", pool.size(), tweets.size()));
  const DatasetSplit split = balance_split(pool, a.seed, a.test_frac);
  if (!a.out_pool.empty()) ctx.write(a.out_pool, format_tweets(pool), fmt::format("{} pool tweets", pool.size()));
  ctx.write(a.out, format_split(split), fmt::format("{} train, {} test", split.train.size(), split.test.size()));
}

struct EmbedArgs {
  std::string tweets;
  std::size_t dim = 32;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void cmd_embed_stub(Context& ctx, const EmbedArgs& a) {
  if (a.dim == 0) throw ValidationError("--dim must be positive");
  const TweetTable tweets = load_tweets(a.tweets);
  EmbeddingTable table;
  table.dim = a.dim;
  for (const auto& t : tweets) {
    table.order.push_back(t.id);
    table.vectors.emplace(t.id, hashed_embedding(t.text, a.dim, a.seed));
  }
  ctx.write(a.out, format_embeddings(table), fmt::format("{} vectors of dim {}", tweets.size(), a.dim));
}

struct DesignInputs {
  std::string tweets;
  std::string authors;
  std::string split;
  std::string embeddings;
  std::string sentiment;
};

struct TrainArgs {
  DesignInputs in;
  bool use_extra = false;
  std::size_t epochs = 500;
  double lr = 0.5;
  double l2 = 0.0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string loss_trace;
};

void cmd_train(Context& ctx, const TrainArgs& a) {
  const TweetTable tweets = load_tweets(a.in.tweets);
  const AuthorTable authors = load_authors(a.in.authors);
  const DatasetSplit split = load_split(a.in.split);
  std::optional<EmbeddingTable> emb;
  if (!a.in.embeddings.empty()) emb = load_embeddings(a.in.embeddings);
  const auto rows = build_design(split.train, tweets, authors, make_provider(a.in.sentiment),
                                 emb ? &*emb : nullptr, a.use_extra);
  const FeatureConfig fc{emb ? emb->dim : 0, a.use_extra};
  const TrainResult result = train_logreg(rows, TrainMeta{a.seed, a.epochs, a.lr, a.l2}, fc);
  ctx.log(LogLevel::Info, fmt::format("final loss {}", result.loss_trace.empty() ? 0.0 : result.loss_trace.back()));
  if (!a.loss_trace.empty()) {
    std::string csv = "epoch,loss\n";
    for (std::size_t i = 0; i < result.loss_trace.size(); ++i) csv += fmt::format("{},{}\n", i, result.loss_trace[i]);
    ctx.write(a.loss_trace, csv, fmt::format("{} epochs", result.loss_trace.size()));
  }
  ctx.write(a.out, format_model(result.model),
            fmt::format("{} weights, {} training rows", result.model.weights.size(), rows.size()));
}

struct EvalModelArgs {
  DesignInputs in;
  std::string model;
  double threshold = 0.5;
  std::string name = "linear";
  std::string out;
  std::string csv;
};

void cmd_eval_model(Context& ctx, const EvalModelArgs& a) {
  const LinearModel model = load_model(a.model);
  const TweetTable tweets = load_tweets(a.in.tweets);
  const AuthorTable authors = load_authors(a.in.authors);
  const DatasetSplit split = load_split(a.in.split);
  std::optional<EmbeddingTable> emb;
  if (!a.in.embeddings.empty()) emb = load_embeddings(a.in.embeddings);
  const std::size_t emb_dim = emb ? emb->dim : 0;
  if (emb_dim != model.feature_config.embedding_dim) {
    throw ValidationError(fmt::format("model expects embedding dim {}, got {}", model.feature_config.embedding_dim,
                                      emb_dim));
  }
  const auto rows = build_design(split.test, tweets, authors, make_provider(a.in.sentiment), emb ? &*emb : nullptr,
                                 model.feature_config.use_extra);
  std::vector<Prediction> preds;
  preds.reserve(rows.size());
  for (const auto& r : rows) preds.push_back({predict_prob(model, r.x), r.y});
  const ClassReport rep = eval_classifier(preds, a.threshold);
  ctx.write(a.out, format_class_report(rep), fmt::format("f1 {:.3f} on {} test rows", rep.f1, rows.size()));
  if (!a.csv.empty()) {
    ctx.write(a.csv, format_class_report_csv(rep, a.name, model.feature_config.use_extra), "1 row");
  }
}

struct PlotArgs {
  std::string tweets;
  std::string authors;
  std::string out;
  std::string metrics = "all";
  double cap = 0.016;
};

void cmd_plot_roc(Context& ctx, const PlotArgs& a) {
  const Corpus c = load_corpus(ctx, a.tweets, a.authors);
  std::vector<LabeledCurve> restricted;
  std::vector<LabeledCurve> all;
  for (MetricKind k : parse_metric_list(a.metrics)) {
    const auto scored = score_all(k, c.tweets, c.authors);
    restricted.push_back({std::string(metric_name(k)), roc_curve(scored, FprMode::RestrictedUniverse)});
    all.push_back({std::string(metric_name(k)), roc_curve(scored, FprMode::AllNonViral)});
  }
  ctx.write(a.out, render_roc_svg(restricted, all, a.cap), fmt::format("{} curves per panel", restricted.size()));
}

void add_design_inputs(CLI::App* cmd, DesignInputs& in) {
  cmd->add_option("--tweets", in.tweets, "Tweet file (JSONL)")->required();
  cmd->add_option("--authors", in.authors, "Author file (JSONL)")->required();
  cmd->add_option("--split", in.split, "Split document from prep-split")->required();
  cmd->add_option("--embeddings", in.embeddings, "Embedding file; omit for extra features only");
  cmd->add_option("--sentiment", in.sentiment, "Sentiment file; default is the built-in lexicon scorer");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"viralkit: virality metrics and early viral-tweet detection"};
  app.name("viralkit");
  app.require_subcommand(1);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a synthetic corpus with a planted virality rule");
  c_gen->add_option("--config", gen.config, "key=value synth config file");
  c_gen->add_option("--seed", gen.seed, "RNG seed (default 42)");
  c_gen->add_option("--n-authors", gen.n_authors, "Number of authors");
  c_gen->add_option("--label-noise", gen.label_noise, "Label flip probability");
  c_gen->add_option("--ratio-threshold", gen.ratio_threshold, "Planted retweets/followers threshold");
  c_gen->add_option("--out-tweets", gen.out_tweets)->required();
  c_gen->add_option("--out-authors", gen.out_authors)->required();

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval-metrics", "Score and evaluate virality metrics (report CSV)");
  c_eval->add_option("--tweets", ev.tweets)->required();
  c_eval->add_option("--authors", ev.authors)->required();
  c_eval->add_option("--out", ev.out, "Report CSV")->required();
  c_eval->add_option("--metrics", ev.metrics, "Comma-separated metric names or 'all'");
  c_eval->add_option("--auc-mode", ev.auc_mode, "FPR universe for AUC: restricted|all");
  c_eval->add_option("--auc2-mode", ev.auc2_mode, "FPR universe for AUC-2: restricted|all");
  c_eval->add_option("--auc2-cap", ev.auc2_cap, "FPR cap for AUC-2");
  c_eval->add_option("--tpr-target", ev.tpr_target, "Recall at which to count viral calls");
  c_eval->add_option("--influence-a", ev.influence_a, "Influence score constant A");
  c_eval->add_option("--roc-dir", ev.roc_dir, "Directory for per-metric ROC point CSVs");
  c_eval->add_flag("--grid", ev.grid, "Write ROC CSVs on a 101-point FPR grid");

  FeatureArgs fs;
  auto* c_feat = app.add_subcommand("feature-stats", "Per-class content feature shares and significance");
  c_feat->add_option("--tweets", fs.tweets)->required();
  c_feat->add_option("--authors", fs.authors)->required();
  c_feat->add_option("--sentiment", fs.sentiment, "Sentiment file; default is the built-in lexicon scorer");
  c_feat->add_option("--out", fs.out)->required();

  SplitArgs sp;
  auto* c_split = app.add_subcommand("prep-split", "Filter the detection pool and make a balanced split");
  c_split->add_option("--tweets", sp.tweets)->required();
  c_split->add_option("--seed", sp.seed, "RNG seed");
  c_split->add_option("--test-frac", sp.test_frac, "Per-class test fraction");
  c_split->add_option("--out", sp.out, "Split document")->required();
  c_split->add_option("--out-pool", sp.out_pool, "Also write the filtered pool (JSONL)");

  EmbedArgs em;
  auto* c_emb = app.add_subcommand("embed-stub", "Hashed pseudo-embeddings for every tweet");
  c_emb->add_option("--tweets", em.tweets)->required();
  c_emb->add_option("--dim", em.dim, "Embedding dimension");
  c_emb->add_option("--seed", em.seed, "Hash seed");
  c_emb->add_option("--out", em.out)->required();

  TrainArgs tr;
  auto* c_train = app.add_subcommand("train", "Train the logistic-regression detection head");
  add_design_inputs(c_train, tr.in);
  c_train->add_flag("--use-extra", tr.use_extra, "Append the seven content features");
  c_train->add_option("--epochs", tr.epochs);
  c_train->add_option("--lr", tr.lr, "Learning rate");
  c_train->add_option("--l2", tr.l2, "L2 penalty");
  c_train->add_option("--seed", tr.seed);
  c_train->add_option("--out", tr.out, "Model document")->required();
  c_train->add_option("--loss-trace", tr.loss_trace, "Per-epoch loss CSV");

  EvalModelArgs em2;
  auto* c_evm = app.add_subcommand("eval-model", "Evaluate a trained model on the split's test ids");
  add_design_inputs(c_evm, em2.in);
  c_evm->add_option("--model", em2.model)->required();
  c_evm->add_option("--threshold", em2.threshold, "Decision threshold");
  c_evm->add_option("--name", em2.name, "Model name for the CSV row");
  c_evm->add_option("--out", em2.out, "Report document")->required();
  c_evm->add_option("--csv", em2.csv, "Report CSV row");

  PlotArgs pl;
  auto* c_plot = app.add_subcommand("plot-roc", "SVG of ROC curves under both FPR universes");
  c_plot->add_option("--tweets", pl.tweets)->required();
  c_plot->add_option("--authors", pl.authors)->required();
  c_plot->add_option("--out", pl.out)->required();
  c_plot->add_option("--metrics", pl.metrics);
  c_plot->add_option("--cap", pl.cap, "FPR zoom for the all-non-viral panel");

  std::vector<const char*> argv{"viralkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  Context ctx(out, err);
  const std::vector<std::pair<CLI::App*, std::function<void()>>> dispatch = {
      {c_gen, [&] { cmd_gen(ctx, gen); }},
      {c_eval, [&] { cmd_eval_metrics(ctx, ev); }},
      {c_feat, [&] { cmd_feature_stats(ctx, fs); }},
      {c_split, [&] { cmd_prep_split(ctx, sp); }},
      {c_emb, [&] { cmd_embed_stub(ctx, em); }},
      {c_train, [&] { cmd_train(ctx, tr); }},
      {c_evm, [&] { cmd_eval_model(ctx, em2); }},
      {c_plot, [&] { cmd_plot_roc(ctx, pl); }},
  };
  try {
    for (const auto& [cmd, fn] : dispatch) {
      if (cmd->parsed()) fn();
    }
  } catch (const std::exception& e) {
    ctx.log(LogLevel::Error, e.what());
    return 1;
  }
  return 0;
}

}  // namespace viralkit::cli
