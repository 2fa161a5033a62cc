#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smo/config.hpp"
#include "smo/contrast.hpp"
#include "smo/fusion.hpp"
#include "smo/metrics.hpp"
#include "smo/slic.hpp"

namespace smo {

/// One manifest line. Relative paths are resolved against the manifest's
/// directory when read. Empty optional paths are omitted from the JSON.
struct ManifestRecord {
  std::string id;
  std::filesystem::path before;
  std::filesystem::path after;
  std::filesystem::path gt;
  std::filesystem::path saliency;
  std::filesystem::path features_before;
  std::filesystem::path features_after;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

/// JSON Lines, one record per line.
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records);

/// A before/after pair at working resolution with its optional extras.
struct ImagePair {
  std::string id;
  RgbImage before;
  RgbImage after;
  std::optional<GroundTruthMask> gt;
  std::optional<SaliencyMap> saliency;
  std::filesystem::path features_before;
  std::filesystem::path features_after;
};

/// Reads every file the record names and resamples images and saliency
/// bilinearly (ground truth by nearest neighbor) to the working resolution.
ImagePair load_pair(const PipelineConfig& config, const ManifestRecord& record);

struct PairResult {
  SuperpixelLabeling labeling_before;
  SuperpixelLabeling labeling_after;
  ContrastMap contrast;
  ProbabilityMap probability;
  std::optional<BinaryMask> mask;
};

/// slic (both) -> features (both) -> pooling -> local + neighborhood
/// contrast -> normalization -> saliency fusion -> optional threshold.
/// Without a saliency map the fusion term is zero.
PairResult run_pair(const PipelineConfig& config, const ImagePair& pair,
                    std::optional<double> threshold = std::nullopt);

struct DatasetOptions {
  int jobs = 1;
  bool fail_fast = false;
};

struct PairFailure {
  std::string id;
  std::string message;
};

/// The alpha-independent part of a pair's result.
struct CachedPair {
  std::string id;
  Grid<double> contrast;
  std::optional<Grid<double>> saliency;
  GroundTruthMask gt;
};

struct DatasetCache {
  std::vector<CachedPair> pairs;  // manifest order, failed pairs omitted
  std::vector<PairFailure> failures;
};

/// Runs the contrast stage for every record on `jobs` workers. Every record
/// must carry ground truth. Per-pair failures are recorded and skipped, or
/// rethrown with fail_fast.
DatasetCache build_dataset_cache(const PipelineConfig& config,
                                 const std::vector<ManifestRecord>& records,
                                 const DatasetOptions& options);

struct SweepRow {
  double alpha = 0;
  double f_beta_max = 0;
  double auc = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;  // ascending alpha
  std::vector<PairFailure> failures;
};

/// {0, 0.1, ..., 1.0}
std::vector<double> default_alpha_grid();

/// One dataset evaluation of the fused map per alpha, reusing the cached
/// contrast maps.
SweepTable sweep_alpha(const PipelineConfig& config, const DatasetCache& cache,
                       std::vector<double> alphas);
SweepTable sweep_alpha(const PipelineConfig& config, const std::vector<ManifestRecord>& records,
                       std::vector<double> alphas, const DatasetOptions& options = {});

struct DatasetEvaluation {
  EvalReport contrast;
  std::optional<EvalReport> saliency;  // only when every pair has one
  EvalReport fused;
  std::vector<PairFailure> failures;
};

DatasetEvaluation evaluate_dataset(const PipelineConfig& config, const DatasetCache& cache);
DatasetEvaluation evaluate_dataset(const PipelineConfig& config,
                                   const std::vector<ManifestRecord>& records,
                                   const DatasetOptions& options = {});

}  // namespace smo
