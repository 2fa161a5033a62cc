#include "smo/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace smo {

ConfusionCounts confusion_counts(std::span<const BinaryMask> masks,
                                 std::span<const GroundTruthMask> gts) {
  require(masks.size() == gts.size(), "confusion counts: mask and ground-truth lists differ in length");
  ConfusionCounts total;
  for (std::size_t t = 0; t < masks.size(); ++t) {
    const auto& m = masks[t].values;
    const auto& g = gts[t];
    require(m.same_shape(g), "confusion counts: mask and ground truth dimensions differ");
    for (std::size_t k = 0; k < m.size(); ++k) {
      const bool pred = m.values[k] != 0, truth = g.values[k] != 0;
      if (pred && truth) ++total.tp;
      else if (pred) ++total.fp;
      else if (truth) ++total.fn;
      else ++total.tn;
    }
  }
  return total;
}

double f_beta(double precision, double recall, double beta_squared) {
  require(precision >= 0 && recall >= 0 && beta_squared >= 0, "f_beta: negative input");
  const double den = beta_squared * precision + recall;
  if (den == 0) return 0.0;
  return (1 + beta_squared) * precision * recall / den;
}

EvalPoint point_from_counts(double threshold, const ConfusionCounts& c, double beta_squared) {
  EvalPoint p;
  p.threshold = threshold;
  const auto predicted = c.tp + c.fp, positives = c.tp + c.fn, negatives = c.fp + c.tn;
  p.precision = predicted ? double(c.tp) / double(predicted) : 1.0;
  p.recall = positives ? double(c.tp) / double(positives) : 1.0;
  p.tpr = p.recall;
  p.fpr = negatives ? double(c.fp) / double(negatives) : 0.0;
  p.f_beta = f_beta(p.precision, p.recall, beta_squared);
  return p;
}

double roc_auc(std::span<const EvalPoint> points) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(points.size() + 2);
  curve.emplace_back(0.0, 0.0);
  curve.emplace_back(1.0, 1.0);
  for (const auto& p : points) curve.emplace_back(p.fpr, p.tpr);
  std::sort(curve.begin(), curve.end());
  curve.erase(std::unique(curve.begin(), curve.end()), curve.end());
  double area = 0.0;
  for (std::size_t k = 1; k < curve.size(); ++k)
    area += (curve[k].first - curve[k - 1].first) * (curve[k].second + curve[k - 1].second) / 2;
  return area;
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid(257);
  for (int k = 0; k <= 256; ++k) grid[k] = k / 256.0;
  return grid;
}

EvalReport pr_roc_sweep(std::span<const Grid<double>> probs, std::span<const GroundTruthMask> gts,
                        std::span<const double> thresholds, double beta_squared) {
  require(!thresholds.empty(), "sweep: empty threshold list");
  require(beta_squared > 0, "sweep: beta_squared must be positive");
  require(probs.size() == gts.size(), "sweep: map and ground-truth lists differ in length");
  for (double t : thresholds) require(t >= 0 && t <= 1, "sweep: thresholds must lie in [0, 1]");
  for (std::size_t t = 0; t < probs.size(); ++t)
    require(probs[t].same_shape(gts[t]), "sweep: map and ground truth dimensions differ");

  std::vector<double> sorted(thresholds.begin(), thresholds.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t nt = sorted.size();

  // hist[c] counts pixels clearing exactly the first c thresholds.
  std::vector<std::uint64_t> pos(nt + 1, 0), neg(nt + 1, 0);
  const auto npairs = static_cast<std::ptrdiff_t>(probs.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> lpos(nt + 1, 0), lneg(nt + 1, 0);
#pragma omp for schedule(dynamic) nowait
    for (std::ptrdiff_t t = 0; t < npairs; ++t) {
      const auto& p = probs[t].values;
      const auto& g = gts[t].values;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const auto cleared = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), p[k]) - sorted.begin());
        (g[k] ? lpos : lneg)[cleared]++;
      }
    }
#pragma omp critical
    for (std::size_t c = 0; c <= nt; ++c) {
      pos[c] += lpos[c];
      neg[c] += lneg[c];
    }
  }

  std::uint64_t total_pos = 0, total_neg = 0;
  for (std::size_t c = 0; c <= nt; ++c) {
    total_pos += pos[c];
    total_neg += neg[c];
  }

  EvalReport report;
  report.beta_squared = beta_squared;
  report.points.resize(nt);
  // Pixels with cleared > k are predicted positive at threshold k.
  std::uint64_t tp = total_pos - pos[0], fp = total_neg - neg[0];
  for (std::size_t k = 0; k < nt; ++k) {
    const ConfusionCounts c{tp, fp, total_pos - tp, total_neg - fp};
    report.points[k] = point_from_counts(sorted[k], c, beta_squared);
    tp -= pos[k + 1];
    fp -= neg[k + 1];
  }
  for (const auto& p : report.points) report.f_beta_max = std::max(report.f_beta_max, p.f_beta);
  report.auc = roc_auc(report.points);
  return report;
}

nlohmann::json report_to_json(const EvalReport& report, const std::string& map_name) {
  nlohmann::json j;
  j["map"] = map_name;
  j["beta_squared"] = report.beta_squared;
  j["f_beta_max"] = report.f_beta_max;
  j["auc"] = report.auc;
  auto& thresholds = j["thresholds"] = nlohmann::json::array();
  auto& points = j["points"] = nlohmann::json::array();
  for (const auto& p : report.points) {
    thresholds.push_back(p.threshold);
    points.push_back({{"threshold", p.threshold},
                      {"precision", p.precision},
                      {"recall", p.recall},
                      {"tpr", p.tpr},
                      {"fpr", p.fpr},
                      {"f_beta", p.f_beta}});
  }
  return j;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "threshold,precision,recall,tpr,fpr,f_beta\n";
  out.precision(17);
  for (const auto& p : report.points)
    out << p.threshold << ',' << p.precision << ',' << p.recall << ',' << p.tpr << ',' << p.fpr << ','
        << p.f_beta << '\n';
}

}  // namespace smo
