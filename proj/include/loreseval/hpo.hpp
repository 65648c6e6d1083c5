#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"

namespace loreseval::hpo {

struct HyperparameterGrid {
  std::vector<int> epochs;
  std::vector<int> batch_size;
  std::vector<int> grad_accum_steps;
  std::vector<double> learning_rate;
  std::vector<double> weight_decay;
  std::vector<bool> mixed_precision;
  // Reserved for a random-search mode; grid enumeration ignores it.
  std::optional<std::uint64_t> seed;

  void validate() const;  // throws Error{EmptyDimension} / Error{InvalidArgument}
  std::size_t size() const;

  static HyperparameterGrid from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Default fine-tuning search space (3*3*3*3*4*2 = 648).
HyperparameterGrid default_search_space();

struct TrialConfig {
  std::size_t trial_index = 0;
  int epochs = 0;
  int batch_size = 0;
  int grad_accum_steps = 0;
  double learning_rate = 0.0;
  double weight_decay = 0.0;
  bool mixed_precision = false;

  friend bool operator==(const TrialConfig&, const TrialConfig&) = default;

  // Flat snake_case object; trial_index included.
  nlohmann::json to_json() const;
};

// Cartesian product; the first dimension (epochs) varies slowest.
std::vector<TrialConfig> enumerate_grid(const HyperparameterGrid& grid);

// Writes trial_{index}.json per trial, each the template overlaid with the
// trial values. Throws Error{TemplateKeyCollision} if the template defines a
// grid key, Error{IoError} on write failure.
std::size_t emit_configs(const std::vector<TrialConfig>& trials,
                         const std::filesystem::path& out_dir,
                         const nlohmann::json& overlay = nlohmann::json::object());

}  // namespace loreseval::hpo
