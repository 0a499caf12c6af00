// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "viralkit/corpus.hpp"
#include "viralkit/metrics.hpp"

namespace viralkit {

/// Which non-viral tweets count toward the false-positive rate.
enum class FprMode {
  /// Non-virals scoring at least the lowest viral score: the smallest set a
  /// metric must call viral to reach full recall.
  RestrictedUniverse,
  /// Every non-viral tweet.
  AllNonViral,
};

std::string_view fpr_mode_name(FprMode mode);
FprMode parse_fpr_mode(std::string_view name);

struct ScoredLabel {
  double score = 0.0;
  bool is_viral = false;
};

struct RocPoint {
  double threshold = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;

  bool operator==(const RocPoint&) const = default;
};

/// Points ordered by descending threshold. The first point has an infinite
/// threshold at (0, 0); the last reaches tpr == 1. tpr and fpr never decrease.
struct RocCurve {
  std::vector<RocPoint> points;

  bool operator==(const RocCurve&) const = default;
};

/// Exact ROC: one vertex per distinct score, ties stepped together.
/// Throws ValidationError unless both classes are present and scores are not NaN.
RocCurve roc_curve(std::span<const ScoredLabel> scores, FprMode mode);

/// Trapezoidal area under (fpr, tpr).
double auc(const RocCurve& curve);

/// Area over fpr in [0, fpr_cap] (tpr interpolated at the cap) divided by
/// fpr_cap, i.e. the area after rescaling the capped fpr axis to [0, 1].
double auc2(const RocCurve& curve, double fpr_cap = 0.016);

struct TprCount {
  double threshold = 0.0;
  std::size_t n_classified = 0;
  std::size_t n_fp = 0;
};

/// Largest threshold whose recall reaches target_tpr, and how many entries
/// (and non-viral entries) score at or above it.
TprCount count_viral_at_tpr(std::span<const ScoredLabel> scores, double target_tpr = 0.95);

/// Curve resampled at `n` evenly spaced fpr values in [0, 1], for plotting on
/// a fixed rate grid. Each grid point carries the threshold of the last curve
/// vertex at or left of it.
RocCurve sample_grid(const RocCurve& curve, std::size_t n = 101);

struct MetricReport {
  MetricKind kind{};
  DataTier data_required{};
  double auc = 0.0;
  double auc2 = 0.0;
  std::size_t n_viral_at_tpr95 = 0;
  std::size_t n_fp_at_tpr95 = 0;

  bool operator==(const MetricReport&) const = default;
};

struct EvalOptions {
  FprMode auc_mode = FprMode::RestrictedUniverse;
  FprMode auc2_mode = FprMode::AllNonViral;
  double auc2_cap = 0.016;
  double tpr_target = 0.95;
};

struct MetricEvaluation {
  MetricReport report;
  RocCurve auc_curve;
  RocCurve auc2_curve;
};

/// Scores every tweet with one metric, paired with its label.
std::vector<ScoredLabel> score_all(MetricKind kind, const TweetTable& tweets, const AuthorTable& authors,
                                   const MetricConfig& cfg = {});

MetricEvaluation evaluate_metric(MetricKind kind, const TweetTable& tweets, const AuthorTable& authors,
                                 const MetricConfig& cfg = {}, const EvalOptions& opts = {});

/// One report per kind, in the order given. Metrics are evaluated concurrently.
std::vector<MetricReport> evaluate_metrics(const TweetTable& tweets, const AuthorTable& authors,
                                           std::span<const MetricKind> kinds, const MetricConfig& cfg = {},
                                           const EvalOptions& opts = {});

/// metric,data_required,auc,auc2,n_viral_at_tpr95,n_fp_at_tpr95
std::string format_report_csv(std::span<const MetricReport> reports);

/// threshold,fpr,tpr
std::string format_roc_csv(const RocCurve& curve);

struct LabeledCurve {
  std::string label;
  RocCurve curve;
};

/// Two-panel SVG: restricted-universe curves on the left, all-non-viral
/// curves on the right with the fpr axis zoomed to [0, zoom_cap].
std::string render_roc_svg(std::span<const LabeledCurve> restricted, std::span<const LabeledCurve> all_nonviral,
                           double zoom_cap = 0.016);

}  // namespace viralkit
