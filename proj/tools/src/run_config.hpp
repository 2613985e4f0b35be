#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "image_io.hpp"
#include "sdc/params.hpp"
#include "sdc/synthetic.hpp"

namespace sdc::cli {

/// Everything a `run` (or `knn-baseline`) invocation needs. Exactly one of
/// input, image and gen names the data.
struct RunConfig {
  std::string input;  // CSV path
  std::string image;  // PNG/PGM/PPM path
  ImageMode image_mode = ImageMode::Rgb;
  std::optional<Dataset> gen;
  std::uint64_t seed = 1;
  double noise = 0.0;
  bool minmax = true;
  ParamSet params;
  std::string labels_out;
  std::string summary_out;
  std::string points_out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// A config key, which doubles as the long flag name (`--key`).
struct ConfigField {
  std::string key;
  std::string help;
  bool is_param = false;  // a ParamSet field
  bool is_flag = false;   // boolean: a bare `--key` means true
  std::function<std::optional<std::string>(const RunConfig&)> get;  // nullopt: unset
  std::function<void(RunConfig&, const std::string&)> set;          // throws ParameterError
};

const std::vector<ConfigField>& config_fields();

/// Flat `key = value` text, one field per line; unset optionals are omitted.
/// Reals use the shortest form that parses back to the same value.
std::string to_text(const RunConfig& cfg);

/// Applies `key = value` lines on top of `base`. Blank lines and lines
/// starting with '#' are ignored; unknown keys are errors.
RunConfig parse_config(const std::string& text, const std::string& source, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

bool parse_bool(const std::string& s);

}  // namespace sdc::cli
