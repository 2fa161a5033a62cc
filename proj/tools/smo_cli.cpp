// smo: segment salient missing objects in before/after image pairs.
//
//   smo segment  --before B.png --after A.png --out-dir D [--saliency S] ...
//   smo evaluate --manifest M.jsonl --out-dir D [--jobs N] [--fail-fast]
//   smo sweep    --manifest M.jsonl --out-dir D [--grid 0,0.1,...,1]
//   smo synth    --out-dir D --count N --seed S
//   smo overlay  --image I.png --prob P.fmap --out O.png
//
// Exit codes: 0 success, 1 input error, 2 some pairs failed (recorded).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <omp.h>

#include "smo/config.hpp"
#include "smo/features.hpp"
#include "smo/image_ops.hpp"
#include "smo/io.hpp"
#include "smo/metrics.hpp"
#include "smo/pipeline.hpp"
#include "smo/synth.hpp"

namespace fs = std::filesystem;
using namespace smo;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitPartial = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<double> alpha;
  std::optional<std::string> backend;
  std::string out_dir;
  int jobs = 1;
  bool fail_fast = false;

  PipelineConfig resolve() const {
    PipelineConfig config = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    if (alpha) config.alpha = *alpha;
    if (backend) config.feature_backend = parse_backend(*backend);
    config.validate();
    return config;
  }
};

void add_config_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Key/value config file")->check(CLI::ExistingFile);
  cmd->add_option("--alpha", f.alpha, "Saliency weight in [0,1]")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--backend", f.backend, "Feature backend")->check(CLI::IsMember({"builtin", "file"}));
  cmd->add_option("--out-dir", f.out_dir, "Output directory")->required();
}

void add_dataset_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--jobs", f.jobs, "Worker count")->check(CLI::PositiveNumber);
  cmd->add_flag("--fail-fast", f.fail_fast, "Abort on the first failing pair");
}

void report_failures(const std::vector<PairFailure>& failures) {
  for (const auto& f : failures) std::cerr << "pair " << f.id << " failed: " << f.message << "\n";
}

nlohmann::json failures_json(const std::vector<PairFailure>& failures) {
  auto out = nlohmann::json::array();
  for (const auto& f : failures) out.push_back({{"id", f.id}, {"error", f.message}});
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("bad alpha grid entry: " + item);
    }
  }
  require(!grid.empty(), "empty alpha grid");
  return grid;
}

int run_segment(const CommonFlags& flags, const ManifestRecord& record, std::optional<double> threshold,
                bool debug) {
  const PipelineConfig config = flags.resolve();
  const ImagePair pair = load_pair(config, record);
  const PairResult result = run_pair(config, pair, threshold);
  const fs::path out(flags.out_dir);
  fs::create_directories(out);
  store_map(out / "contrast.fmap", result.contrast.values);
  store_map(out / "contrast_local.fmap", result.contrast.local);
  store_map(out / "contrast_neigh.fmap", result.contrast.neigh);
  store_map(out / "probability.fmap", result.probability.values);
  write_gray_png(out / "contrast.png", result.contrast.values);
  write_gray_png(out / "probability.png", result.probability.values);
  if (result.mask) write_mask_png(out / "mask.png", result.mask->values);
  if (debug) {
    const auto& lb = result.labeling_before;
    const auto& la = result.labeling_after;
    write_label_png(out / "labels_before.png", lb.height, lb.width, lb.labels);
    write_label_png(out / "labels_after.png", la.height, la.width, la.labels);
  }
  std::cout << "wrote maps for " << pair.id << " to " << out << "\n";
  return 0;
}

int run_evaluate(const CommonFlags& flags, const std::string& manifest) {
  const PipelineConfig config = flags.resolve();
  const auto records = read_manifest(manifest);
  const auto eval = evaluate_dataset(config, records, {flags.jobs, flags.fail_fast});
  const fs::path out(flags.out_dir);
  fs::create_directories(out);

  nlohmann::json j;
  j["alpha"] = config.alpha;
  j["beta_squared"] = config.beta_squared;
  j["backend"] = to_string(config.feature_backend);
  j["pairs_evaluated"] = records.size() - eval.failures.size();
  j["failures"] = failures_json(eval.failures);
  j["reports"] = nlohmann::json::array({report_to_json(eval.contrast, "contrast")});
  if (eval.saliency) j["reports"].push_back(report_to_json(*eval.saliency, "saliency"));
  j["reports"].push_back(report_to_json(eval.fused, "fused"));
  std::ofstream(out / "report.json") << j.dump(2) << "\n";

  auto csv = [&](const char* name, const EvalReport& r) {
    std::ofstream f(out / (std::string(name) + ".csv"));
    write_report_csv(f, r);
    std::cout << name << ": AUC " << r.auc << "  F_beta_max " << r.f_beta_max << "\n";
  };
  csv("contrast", eval.contrast);
  if (eval.saliency) csv("saliency", *eval.saliency);
  csv("fused", eval.fused);
  report_failures(eval.failures);
  return eval.failures.empty() ? 0 : kExitPartial;
}

int run_sweep(const CommonFlags& flags, const std::string& manifest, const std::string& grid_text) {
  const PipelineConfig config = flags.resolve();
  const auto records = read_manifest(manifest);
  const auto grid = grid_text.empty() ? default_alpha_grid() : parse_grid(grid_text);
  const auto table = sweep_alpha(config, records, grid, {flags.jobs, flags.fail_fast});
  const fs::path out(flags.out_dir);
  fs::create_directories(out);

  std::ofstream csv(out / "sweep.csv");
  csv.precision(17);
  csv << "alpha,f_beta_max,auc\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    csv << r.alpha << ',' << r.f_beta_max << ',' << r.auc << '\n';
    rows.push_back({{"alpha", r.alpha}, {"f_beta_max", r.f_beta_max}, {"auc", r.auc}});
    std::cout << "alpha " << r.alpha << ": F_beta_max " << r.f_beta_max << "  AUC " << r.auc << "\n";
  }
  std::ofstream(out / "sweep.json") << nlohmann::json{{"beta_squared", config.beta_squared},
                                                      {"rows", rows},
                                                      {"failures", failures_json(table.failures)}}
                                           .dump(2)
                                    << "\n";
  report_failures(table.failures);
  return table.failures.empty() ? 0 : kExitPartial;
}

int run_overlay(const std::string& image_path, const std::string& prob_path, const std::string& out_path) {
  const RgbImage image = read_rgb_png(image_path);
  Grid<double> prob = load_saliency(prob_path).values;
  // Maps come out at the working resolution; bring them back to the image.
  if (!prob.same_shape(image.height, image.width)) prob = resize_bilinear(prob, image.height, image.width);
  write_rgb_png(out_path, render_overlay(image, prob));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segment objects present in a before image and missing from an after image"};
  app.require_subcommand(1);

  CommonFlags flags;
  ManifestRecord single;
  std::optional<double> threshold;
  bool debug = false;
  std::string manifest, grid_text;
  int count = 50;
  std::uint64_t seed = 1;
  SynthSpec synth_spec;
  std::string image_path, prob_path, overlay_out;
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads for the kernels (default: runtime choice)");

  auto* segment = app.add_subcommand("segment", "Process one pair into contrast/probability maps");
  segment->add_option("--before", single.before, "Before image (PNG)")->required()->check(CLI::ExistingFile);
  segment->add_option("--after", single.after, "After image (PNG)")->required()->check(CLI::ExistingFile);
  segment->add_option("--saliency", single.saliency, "Saliency map (gray PNG or FMAP D=1)");
  segment->add_option("--features-before", single.features_before, "FMAP for the before image");
  segment->add_option("--features-after", single.features_after, "FMAP for the after image");
  segment->add_option("--threshold", threshold, "Write mask.png at this threshold")->check(CLI::Range(0.0, 1.0));
  segment->add_flag("--debug", debug, "Also write 16-bit superpixel label PNGs");
  add_config_flags(segment, flags);

  auto* evaluate = app.add_subcommand("evaluate", "PR/ROC evaluation of a manifest");
  evaluate->add_option("--manifest", manifest, "JSON Lines manifest")->required()->check(CLI::ExistingFile);
  add_config_flags(evaluate, flags);
  add_dataset_flags(evaluate, flags);

  auto* sweep = app.add_subcommand("sweep", "Evaluate the fused map over a grid of alpha values");
  sweep->add_option("--manifest", manifest, "JSON Lines manifest")->required()->check(CLI::ExistingFile);
  sweep->add_option("--grid", grid_text, "Comma-separated alpha values (default 0,0.1,...,1)");
  add_config_flags(sweep, flags);
  add_dataset_flags(sweep, flags);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic fixture dataset");
  synth->add_option("--out-dir", flags.out_dir, "Output directory")->required();
  synth->add_option("--count", count, "Number of pairs")->check(CLI::PositiveNumber);
  synth->add_option("--seed", seed, "First seed");
  synth->add_option("--targets", synth_spec.targets, "Missing objects per pair");
  synth->add_option("--distractors", synth_spec.distractors, "Objects present in both images");
  synth->add_option("--jitter", synth_spec.jitter, "Maximum distractor displacement (pixels)");
  synth->add_option("--size", synth_spec.height, "Image height and width")
      ->each([&](const std::string&) { synth_spec.width = synth_spec.height; });

  auto* overlay = app.add_subcommand("overlay", "Blend a probability map over an image");
  overlay->add_option("--image", image_path, "RGB image")->required()->check(CLI::ExistingFile);
  overlay->add_option("--prob", prob_path, "Probability map (FMAP D=1 or gray PNG)")->required()->check(CLI::ExistingFile);
  overlay->add_option("--out", overlay_out, "Output PNG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*segment) {
      single.id = fs::path(single.before).stem().string();
      return run_segment(flags, single, threshold, debug);
    }
    if (*evaluate) return run_evaluate(flags, manifest);
    if (*sweep) return run_sweep(flags, manifest, grid_text);
    if (*synth) {
      const auto records = write_synthetic_dataset(flags.out_dir, count, seed, synth_spec);
      std::cout << "wrote " << records.size() << " pairs and manifest.jsonl to " << flags.out_dir << "\n";
      return 0;
    }
    if (*overlay) return run_overlay(image_path, prob_path, overlay_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
