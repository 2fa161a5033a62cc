#include "smo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>

#include <nlohmann/json.hpp>

#include "smo/features.hpp"
#include "smo/image_ops.hpp"
#include "smo/io.hpp"

namespace smo {
namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  if (value.empty()) return {};
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

SuperpixelFeatureSet features_for(const PipelineConfig& config, const RgbImage& image,
                                  const std::filesystem::path& fmap,
                                  const SuperpixelLabeling& labeling) {
  if (config.feature_backend == FeatureBackend::builtin)
    return pool_superpixel_features(builtin_feature_field(image, config.builtin_window), labeling);
  if (fmap.empty()) throw InputError("file backend selected but no feature file given");
  const FeatureField field = load_feature_field(fmap);
  require(field.height * config.upscale_factor == config.working_height &&
              field.width * config.upscale_factor == config.working_width,
          "feature field " + fmap.string() + " does not upscale to the working resolution");
  return pool_upscaled_features(field, config.upscale_factor, labeling);
}

}  // namespace

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("manifest: cannot open " + path.string());
  const auto base = path.parent_path();
  std::vector<ManifestRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("manifest line " + std::to_string(lineno) + ": " + e.what());
    }
    auto field = [&](const char* key) { return j.contains(key) ? j.at(key).get<std::string>() : std::string{}; };
    ManifestRecord r;
    r.id = field("id");
    r.before = resolve(base, field("before"));
    r.after = resolve(base, field("after"));
    r.gt = resolve(base, field("gt"));
    r.saliency = resolve(base, field("saliency"));
    r.features_before = resolve(base, field("features_before"));
    r.features_after = resolve(base, field("features_after"));
    require(!r.before.empty() && !r.after.empty(),
            "manifest line " + std::to_string(lineno) + ": before and after are required");
    if (r.id.empty()) r.id = "pair" + std::to_string(records.size());
    records.push_back(std::move(r));
  }
  return records;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("manifest: cannot write " + path.string());
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["before"] = r.before.string();
    j["after"] = r.after.string();
    if (!r.gt.empty()) j["gt"] = r.gt.string();
    if (!r.saliency.empty()) j["saliency"] = r.saliency.string();
    if (!r.features_before.empty()) j["features_before"] = r.features_before.string();
    if (!r.features_after.empty()) j["features_after"] = r.features_after.string();
    out << j.dump() << '\n';
  }
}

ImagePair load_pair(const PipelineConfig& config, const ManifestRecord& record) {
  const int h = config.working_height, w = config.working_width;
  ImagePair pair;
  pair.id = record.id;
  pair.before = resize_bilinear(read_rgb_png(record.before), h, w);
  pair.after = resize_bilinear(read_rgb_png(record.after), h, w);
  if (!record.gt.empty()) pair.gt = resize_nearest(read_mask_png(record.gt), h, w);
  if (!record.saliency.empty()) {
    SaliencyMap s = load_saliency(record.saliency);
    s.values = resize_bilinear(s.values, h, w);
    pair.saliency = std::move(s);
  }
  pair.features_before = record.features_before;
  pair.features_after = record.features_after;
  return pair;
}

PairResult run_pair(const PipelineConfig& config, const ImagePair& pair,
                    std::optional<double> threshold) {
  config.validate();
  const int h = config.working_height, w = config.working_width;
  require(pair.before.height == h && pair.before.width == w && pair.after.height == h &&
              pair.after.width == w,
          "pair " + pair.id + ": images are not at the working resolution");
  if (pair.saliency) require(pair.saliency->values.same_shape(h, w), "pair " + pair.id + ": saliency size mismatch");

  PairResult result;
  result.labeling_before = segment_slic(pair.before, config.slic);
  result.labeling_after = segment_slic(pair.after, config.slic);
  const auto feats_b = features_for(config, pair.before, pair.features_before, result.labeling_before);
  const auto feats_a = features_for(config, pair.after, pair.features_after, result.labeling_after);
  result.contrast = compute_contrast(feats_b, feats_a, result.labeling_before, result.labeling_after);

  const SaliencyMap zero{Grid<double>(h, w), "none"};
  result.probability = fuse(pair.saliency ? *pair.saliency : zero, result.contrast.values,
                            FusionParams{pair.saliency ? config.alpha : 0.0});
  if (threshold) result.mask = threshold_mask(result.probability, *threshold);
  return result;
}

DatasetCache build_dataset_cache(const PipelineConfig& config,
                                 const std::vector<ManifestRecord>& records,
                                 const DatasetOptions& options) {
  config.validate();
  for (const auto& r : records)
    require(!r.gt.empty(), "pair " + r.id + " has no ground truth; evaluation requires it");

  const auto n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<std::optional<CachedPair>> slots(records.size());
  std::vector<std::optional<PairFailure>> errors(records.size());
  std::atomic<bool> abort{false};

#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, options.jobs))
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    if (abort.load()) continue;
    try {
      const ImagePair pair = load_pair(config, records[t]);
      PairResult r = run_pair(config, pair);
      slots[t] = CachedPair{pair.id, std::move(r.contrast.values),
                            pair.saliency ? std::optional(pair.saliency->values) : std::nullopt, *pair.gt};
    } catch (const std::exception& e) {
      errors[t] = PairFailure{records[t].id, e.what()};
      if (options.fail_fast) abort = true;
    }
  }

  DatasetCache cache;
  for (std::size_t t = 0; t < records.size(); ++t) {
    if (errors[t]) {
      if (options.fail_fast) throw InputError("pair " + errors[t]->id + ": " + errors[t]->message);
      cache.failures.push_back(*errors[t]);
    } else if (slots[t]) {
      cache.pairs.push_back(std::move(*slots[t]));
    }
  }
  return cache;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(11);
  for (int k = 0; k <= 10; ++k) grid[k] = k / 10.0;
  return grid;
}

namespace {

std::vector<Grid<double>> fused_maps(const DatasetCache& cache, double alpha) {
  std::vector<Grid<double>> out;
  out.reserve(cache.pairs.size());
  for (const auto& p : cache.pairs) {
    const SaliencyMap s{p.saliency ? *p.saliency : Grid<double>(p.contrast.height, p.contrast.width), {}};
    out.push_back(fuse(s, p.contrast, FusionParams{p.saliency ? alpha : 0.0}).values);
  }
  return out;
}

std::vector<GroundTruthMask> truths(const DatasetCache& cache) {
  std::vector<GroundTruthMask> out;
  for (const auto& p : cache.pairs) out.push_back(p.gt);
  return out;
}

}  // namespace

SweepTable sweep_alpha(const PipelineConfig& config, const DatasetCache& cache,
                       std::vector<double> alphas) {
  for (double a : alphas) require(a >= 0 && a <= 1, "sweep: alpha values must lie in [0, 1]");
  require(!cache.pairs.empty(), "sweep: no pairs to evaluate");
  std::sort(alphas.begin(), alphas.end());
  const auto gts = truths(cache);
  const auto grid = config.threshold_grid();
  SweepTable table;
  table.failures = cache.failures;
  for (double a : alphas) {
    const auto report = pr_roc_sweep(fused_maps(cache, a), gts, grid, config.beta_squared);
    table.rows.push_back({a, report.f_beta_max, report.auc});
  }
  return table;
}

SweepTable sweep_alpha(const PipelineConfig& config, const std::vector<ManifestRecord>& records,
                       std::vector<double> alphas, const DatasetOptions& options) {
  return sweep_alpha(config, build_dataset_cache(config, records, options), std::move(alphas));
}

DatasetEvaluation evaluate_dataset(const PipelineConfig& config, const DatasetCache& cache) {
  require(!cache.pairs.empty(), "evaluate: no pairs to evaluate");
  const auto gts = truths(cache);
  const auto grid = config.threshold_grid();
  DatasetEvaluation out;
  out.failures = cache.failures;

  std::vector<Grid<double>> contrast;
  for (const auto& p : cache.pairs) contrast.push_back(p.contrast);
  out.contrast = pr_roc_sweep(contrast, gts, grid, config.beta_squared);

  if (std::all_of(cache.pairs.begin(), cache.pairs.end(), [](const auto& p) { return p.saliency.has_value(); })) {
    std::vector<Grid<double>> saliency;
    for (const auto& p : cache.pairs) saliency.push_back(*p.saliency);
    out.saliency = pr_roc_sweep(saliency, gts, grid, config.beta_squared);
  }
  out.fused = pr_roc_sweep(fused_maps(cache, config.alpha), gts, grid, config.beta_squared);
  return out;
}

DatasetEvaluation evaluate_dataset(const PipelineConfig& config,
                                   const std::vector<ManifestRecord>& records,
                                   const DatasetOptions& options) {
  return evaluate_dataset(config, build_dataset_cache(config, records, options));
}

}  // namespace smo
