#include "smo/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace smo {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw InputError("config: bad value for " + key + ": " + text);
  return value;
}

}  // namespace

FeatureBackend parse_backend(const std::string& name) {
  if (name == "builtin") return FeatureBackend::builtin;
  if (name == "file") return FeatureBackend::file;
  throw InputError("unknown feature backend: " + name);
}

std::string to_string(FeatureBackend backend) {
  return backend == FeatureBackend::builtin ? "builtin" : "file";
}

void PipelineConfig::validate() const {
  require(working_height > 0 && working_width > 0, "config: working resolution must be positive");
  slic.validate();
  require(upscale_factor >= 1, "config: upscale_factor must be >= 1");
  require(builtin_window >= 1 && builtin_window % 2 == 1, "config: builtin_window must be odd");
  require(alpha >= 0 && alpha <= 1, "config: alpha must lie in [0, 1]");
  require(beta_squared > 0, "config: beta_squared must be positive");
  require(threshold_steps >= 1, "config: threshold_steps must be >= 1");
}

std::vector<double> PipelineConfig::threshold_grid() const {
  std::vector<double> grid(threshold_steps + 1);
  for (int k = 0; k <= threshold_steps; ++k) grid[k] = static_cast<double>(k) / threshold_steps;
  return grid;
}

void PipelineConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = unquote(trim(raw));
  if (key == "working_height") working_height = parse_number<int>(key, value);
  else if (key == "working_width") working_width = parse_number<int>(key, value);
  else if (key == "slic.region_count" || key == "slic.region_count_target")
    slic.region_count_target = parse_number<int>(key, value);
  else if (key == "slic.compactness") slic.compactness = parse_number<double>(key, value);
  else if (key == "slic.iterations") slic.iterations = parse_number<int>(key, value);
  else if (key == "slic.min_region_fraction") slic.min_region_fraction = parse_number<double>(key, value);
  else if (key == "feature_backend") feature_backend = parse_backend(value);
  else if (key == "upscale_factor") upscale_factor = parse_number<int>(key, value);
  else if (key == "builtin_window") builtin_window = parse_number<int>(key, value);
  else if (key == "alpha") alpha = parse_number<double>(key, value);
  else if (key == "beta_squared") beta_squared = parse_number<double>(key, value);
  else if (key == "threshold_steps") threshold_steps = parse_number<int>(key, value);
  else throw InputError("config: unknown key " + key);
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open " + path.string());
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "config: malformed section header on line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, "config: expected key = value on line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    base.set(section.empty() ? key : section + "." + key, line.substr(eq + 1));
  }
  base.validate();
  return base;
}

}  // namespace smo
