// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include "viralkit/vireval.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace viralkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ClassCounts {
  std::size_t viral = 0;
  std::size_t nonviral = 0;
};

ClassCounts count_classes(std::span<const ScoredLabel> scores) {
  ClassCounts c;
  for (const auto& s : scores) {
    if (std::isnan(s.score)) throw ValidationError("score is NaN");
    (s.is_viral ? c.viral : c.nonviral) += 1;
  }
  return c;
}

std::vector<ScoredLabel> sorted_desc(std::span<const ScoredLabel> scores) {
  std::vector<ScoredLabel> v(scores.begin(), scores.end());
  std::sort(v.begin(), v.end(), [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });
  return v;
}

// Area under the piecewise-linear curve for fpr in [0, cap].
double area_to_cap(const RocCurve& curve, double cap) {
  double area = 0.0;
  const auto& p = curve.points;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double x0 = p[i - 1].fpr;
    const double y0 = p[i - 1].tpr;
    const double x1 = p[i].fpr;
    const double y1 = p[i].tpr;
    if (x0 >= cap) break;
    if (x1 > cap) {
      const double y_cap = y0 + (y1 - y0) * (cap - x0) / (x1 - x0);
      area += (cap - x0) * (y0 + y_cap) / 2.0;
      break;
    }
    area += (x1 - x0) * (y0 + y1) / 2.0;
  }
  return area;
}

}  // namespace

std::string_view fpr_mode_name(FprMode mode) {
  return mode == FprMode::RestrictedUniverse ? "restricted" : "all";
}

FprMode parse_fpr_mode(std::string_view name) {
  if (name == "restricted") return FprMode::RestrictedUniverse;
  if (name == "all") return FprMode::AllNonViral;
  throw ValidationError("unknown fpr mode '" + std::string(name) + "' (expected restricted or all)");
}

RocCurve roc_curve(std::span<const ScoredLabel> scores, FprMode mode) {
  const ClassCounts counts = count_classes(scores);
  if (counts.viral == 0 || counts.nonviral == 0) {
    throw ValidationError("ROC needs at least one viral and one non-viral entry");
  }
  const auto sorted = sorted_desc(scores);

  double min_viral = kInf;
  for (const auto& s : sorted) {
    if (s.is_viral) min_viral = std::min(min_viral, s.score);
  }
  std::size_t fpr_denom = counts.nonviral;
  if (mode == FprMode::RestrictedUniverse) {
    fpr_denom = static_cast<std::size_t>(std::count_if(sorted.begin(), sorted.end(), [&](const ScoredLabel& s) {
      return !s.is_viral && s.score >= min_viral;
    }));
  }

  RocCurve curve;
  curve.points.push_back({kInf, 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double thr = sorted[i].score;
    for (; i < sorted.size() && sorted[i].score == thr; ++i) (sorted[i].is_viral ? tp : fp) += 1;
    const double tpr = static_cast<double>(tp) / static_cast<double>(counts.viral);
    const double fpr = fpr_denom ? static_cast<double>(fp) / static_cast<double>(fpr_denom) : 0.0;
    curve.points.push_back({thr, tpr, fpr});
    if (mode == FprMode::RestrictedUniverse && thr == min_viral) break;
  }
  // Perfect separation leaves the restricted universe empty; close the curve.
  if (curve.points.back().fpr < 1.0) curve.points.push_back({-kInf, 1.0, 1.0});
  return curve;
}

double auc(const RocCurve& curve) { return area_to_cap(curve, 1.0) / 1.0; }

double auc2(const RocCurve& curve, double fpr_cap) {
  if (!(fpr_cap > 0.0 && fpr_cap <= 1.0)) throw ValidationError("fpr_cap must lie in (0, 1]");
  return area_to_cap(curve, fpr_cap) / fpr_cap;
}

TprCount count_viral_at_tpr(std::span<const ScoredLabel> scores, double target_tpr) {
  if (!(target_tpr > 0.0 && target_tpr <= 1.0)) throw ValidationError("target_tpr must lie in (0, 1]");
  const ClassCounts counts = count_classes(scores);
  if (counts.viral == 0) throw ValidationError("no viral entries");

  const auto v = static_cast<double>(counts.viral);
  auto needed = static_cast<std::size_t>(std::ceil(target_tpr * v - 1e-9));
  needed = std::clamp<std::size_t>(needed, 1, counts.viral);

  const auto sorted = sorted_desc(scores);
  std::size_t tp = 0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double thr = sorted[i].score;
    for (; i < sorted.size() && sorted[i].score == thr; ++i, ++seen) tp += sorted[i].is_viral ? 1 : 0;
    if (tp >= needed) return {thr, seen, seen - tp};
  }
  return {sorted.back().score, seen, seen - tp};  // unreachable: every viral is eventually seen
}

RocCurve sample_grid(const RocCurve& curve, std::size_t n) {
  if (n < 2) throw ValidationError("grid needs at least two points");
  const auto& p = curve.points;
  RocCurve grid;
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(n - 1);
    // Advance to the last vertex with fpr <= x; vertical runs resolve to their top.
    while (seg + 1 < p.size() && p[seg + 1].fpr <= x) ++seg;
    double y = p[seg].tpr;
    if (seg + 1 < p.size() && p[seg + 1].fpr > p[seg].fpr) {
      const double t = (x - p[seg].fpr) / (p[seg + 1].fpr - p[seg].fpr);
      y = p[seg].tpr + t * (p[seg + 1].tpr - p[seg].tpr);
    }
    grid.points.push_back({p[seg].threshold, y, x});
  }
  return grid;
}

std::vector<ScoredLabel> score_all(MetricKind kind, const TweetTable& tweets, const AuthorTable& authors,
                                   const MetricConfig& cfg) {
  std::vector<ScoredLabel> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) {
    const auto* author = authors.find(t.author_id);
    if (!author) throw ReferenceError("tweet '" + t.id + "' has unknown author '" + t.author_id + "'");
    out.push_back({score(kind, t, *author, cfg), t.is_viral});
  }
  return out;
}

MetricEvaluation evaluate_metric(MetricKind kind, const TweetTable& tweets, const AuthorTable& authors,
                                 const MetricConfig& cfg, const EvalOptions& opts) {
  const auto scored = score_all(kind, tweets, authors, cfg);
  MetricEvaluation ev;
  ev.auc_curve = roc_curve(scored, opts.auc_mode);
  ev.auc2_curve = opts.auc2_mode == opts.auc_mode ? ev.auc_curve : roc_curve(scored, opts.auc2_mode);
  const TprCount at_target = count_viral_at_tpr(scored, opts.tpr_target);
  ev.report = MetricReport{kind,
                           data_required(kind),
                           auc(ev.auc_curve),
                           auc2(ev.auc2_curve, opts.auc2_cap),
                           at_target.n_classified,
                           at_target.n_fp};
  return ev;
}

std::vector<MetricReport> evaluate_metrics(const TweetTable& tweets, const AuthorTable& authors,
                                           std::span<const MetricKind> kinds, const MetricConfig& cfg,
                                           const EvalOptions& opts) {
  std::vector<std::future<MetricReport>> pending;
  pending.reserve(kinds.size());
  for (MetricKind k : kinds) {
    pending.push_back(std::async(std::launch::async, [&, k] {
      return evaluate_metric(k, tweets, authors, cfg, opts).report;
    }));
  }
  std::vector<MetricReport> reports;
  reports.reserve(kinds.size());
  for (auto& f : pending) reports.push_back(f.get());
  return reports;
}

std::string format_report_csv(std::span<const MetricReport> reports) {
  std::string out = "metric,data_required,auc,auc2,n_viral_at_tpr95,n_fp_at_tpr95\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{:.6f},{:.6f},{},{}\n", metric_name(r.kind), tier_name(r.data_required), r.auc,
                       r.auc2, r.n_viral_at_tpr95, r.n_fp_at_tpr95);
  }
  return out;
}

std::string format_roc_csv(const RocCurve& curve) {
  std::string out = "threshold,fpr,tpr\n";
  for (const auto& p : curve.points) out += fmt::format("{},{},{}\n", p.threshold, p.fpr, p.tpr);
  return out;
}

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

void render_panel(std::string& svg, std::span<const LabeledCurve> curves, double x0, double y0, double size,
                  double x_max, const std::string& title) {
  const auto px = [&](double fpr) { return x0 + size * std::min(fpr, x_max) / x_max; };
  const auto py = [&](double tpr) { return y0 + size * (1.0 - tpr); };

  svg += fmt::format(R"(<rect x="{:.1f}" y="{:.1f}" width="{:.1f}" height="{:.1f}" fill="none" stroke="#000"/>)",
                     x0, y0, size, size);
  svg += '\n';
  svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="middle" font-size="14">{}</text>)",
                     x0 + size / 2, y0 - 10, title);
  svg += '\n';
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="middle" font-size="10">{:g}</text>)", px(f * x_max),
                       y0 + size + 14, f * x_max);
    svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="end" font-size="10">{:g}</text>)", x0 - 4,
                       py(f) + 3, f);
    svg += '\n';
  }
  svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="middle" font-size="11">FPR</text>)", x0 + size / 2,
                     y0 + size + 30);
  svg += fmt::format(
      R"svg(<text x="{:.1f}" y="{:.1f}" text-anchor="middle" font-size="11" transform="rotate(-90 {:.1f} {:.1f})">TPR</text>)svg",
      x0 - 30, y0 + size / 2, x0 - 30, y0 + size / 2);
  svg += '\n';

  for (std::size_t c = 0; c < curves.size(); ++c) {
    std::string pts;
    const auto& cp = curves[c].curve.points;
    for (std::size_t i = 0; i < cp.size(); ++i) {
      if (cp[i].fpr > x_max) {
        // Clip the crossing segment at the panel edge.
        const auto& prev = cp[i - 1];
        const double t = (x_max - prev.fpr) / (cp[i].fpr - prev.fpr);
        pts += fmt::format("{:.2f},{:.2f} ", px(x_max), py(prev.tpr + t * (cp[i].tpr - prev.tpr)));
        break;
      }
      pts += fmt::format("{:.2f},{:.2f} ", px(cp[i].fpr), py(cp[i].tpr));
    }
    if (!pts.empty()) pts.pop_back();
    svg += fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)",
                       kPalette[c % kPalette.size()], pts);
    svg += '\n';
  }
}

}  // namespace

std::string render_roc_svg(std::span<const LabeledCurve> restricted, std::span<const LabeledCurve> all_nonviral,
                           double zoom_cap) {
  constexpr double kSize = 300;
  constexpr double kMargin = 60;
  const double width = 2 * kSize + 3 * kMargin + 160;
  const double height = kSize + 2 * kMargin;
  std::string svg = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}">)", width,
      height, width, height);
  svg += "\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  render_panel(svg, restricted, kMargin, kMargin, kSize, 1.0, "Restricted universe");
  render_panel(svg, all_nonviral, 2 * kMargin + kSize, kMargin, kSize, zoom_cap,
               fmt::format("All non-viral (FPR <= {:g})", zoom_cap));

  const auto& legend = restricted.empty() ? all_nonviral : restricted;
  const double lx = 3 * kMargin + 2 * kSize - 20;
  for (std::size_t c = 0; c < legend.size(); ++c) {
    const double ly = kMargin + 10 + 18.0 * static_cast<double>(c);
    svg += fmt::format(R"(<line x1="{:.1f}" y1="{:.1f}" x2="{:.1f}" y2="{:.1f}" stroke="{}" stroke-width="2"/>)", lx,
                       ly, lx + 20, ly, kPalette[c % kPalette.size()]);
    svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="11">{}</text>)", lx + 26, ly + 4, legend[c].label);
    svg += '\n';
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace viralkit
