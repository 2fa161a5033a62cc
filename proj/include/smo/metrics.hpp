#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smo/fusion.hpp"
#include "smo/grid.hpp"

namespace smo {

using GroundTruthMask = Grid<std::uint8_t>;

inline constexpr double kDefaultBetaSquared = 0.3;

struct ConfusionCounts {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct EvalPoint {
  double threshold = 0;
  double precision = 0;
  double recall = 0;
  double tpr = 0;
  double fpr = 0;
  double f_beta = 0;
};

struct EvalReport {
  std::vector<EvalPoint> points;  // ascending threshold
  double f_beta_max = 0;
  double auc = 0;
  double beta_squared = kDefaultBetaSquared;
};

/// Dataset-summed (micro) confusion counts.
ConfusionCounts confusion_counts(std::span<const BinaryMask> masks,
                                 std::span<const GroundTruthMask> gts);

/// (1 + b2) p r / (b2 p + r), or 0 when the denominator vanishes.
double f_beta(double precision, double recall, double beta_squared);

/// P, R, TPR, FPR and F_beta from summed counts. 0/0 conventions: P = 1 with
/// no predicted positives, R = TPR = 1 with no ground-truth positives,
/// FPR = 0 with no ground-truth negatives.
EvalPoint point_from_counts(double threshold, const ConfusionCounts& counts, double beta_squared);

/// Trapezoidal area under (FPR, TPR) with (0,0) and (1,1) added; points are
/// ordered by (FPR, TPR) so vertical runs contribute no area.
double roc_auc(std::span<const EvalPoint> points);

/// {k / 256 : k = 0..256}.
std::vector<double> default_threshold_grid();

/// Sweeps every threshold over the whole dataset at once. Each pixel is
/// binned by how many thresholds it clears, so the cost is one pass over the
/// pixels plus one pass over the thresholds.
EvalReport pr_roc_sweep(std::span<const Grid<double>> probs, std::span<const GroundTruthMask> gts,
                        std::span<const double> thresholds, double beta_squared = kDefaultBetaSquared);

nlohmann::json report_to_json(const EvalReport& report, const std::string& map_name);
void write_report_csv(std::ostream& out, const EvalReport& report);

}  // namespace smo
