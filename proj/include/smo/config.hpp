#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smo/slic.hpp"

namespace smo {

enum class FeatureBackend { builtin, file };

FeatureBackend parse_backend(const std::string& name);
std::string to_string(FeatureBackend backend);

struct PipelineConfig {
  int working_height = 224;
  int working_width = 224;
  SlicParams slic;
  FeatureBackend feature_backend = FeatureBackend::builtin;
  int upscale_factor = 16;  // file backend only
  int builtin_window = 7;
  double alpha = 0.6;
  double beta_squared = 0.3;
  int threshold_steps = 256;  // grid {k / steps : k = 0..steps}

  void validate() const;
  std::vector<double> threshold_grid() const;

  /// Applies one `key = value` setting. Section-qualified keys such as
  /// `slic.compactness` are accepted.
  void set(const std::string& key, const std::string& value);
};

/// Flat key/value file: `key = value`, `# comment`, optional `[section]`
/// headers that prefix the following keys with `section.`. Values may be
/// quoted. Unknown keys are an error.
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

}  // namespace smo
