#include "loreseval/hpo.hpp"

#include <array>
#include <fstream>
#include <string>

#include "loreseval/error.hpp"

namespace loreseval::hpo {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 7> kTrialKeys = {
    "epochs",       "batch_size",      "grad_accum_steps", "learning_rate",
    "weight_decay", "mixed_precision", "trial_index",
};

template <typename T>
std::vector<T> read_list(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::EmptyDimension, std::string("grid is missing '") + key + "'");
  }
  try {
    return j.at(key).get<std::vector<T>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("grid field '") + key + "': " + e.what());
  }
}

template <typename T>
void require_non_empty(const std::vector<T>& values, const char* key) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyDimension, std::string("grid dimension '") + key + "' is empty");
  }
}

}  // namespace

void HyperparameterGrid::validate() const {
  require_non_empty(epochs, "epochs");
  require_non_empty(batch_size, "batch_size");
  require_non_empty(grad_accum_steps, "grad_accum_steps");
  require_non_empty(learning_rate, "learning_rate");
  require_non_empty(weight_decay, "weight_decay");
  require_non_empty(mixed_precision, "mixed_precision");
  auto positive = [](const auto& values, const char* key) {
    for (auto v : values) {
      if (!(v > 0)) {
        throw Error(ErrorCode::InvalidArgument, std::string(key) + " values must be positive");
      }
    }
  };
  positive(epochs, "epochs");
  positive(batch_size, "batch_size");
  positive(grad_accum_steps, "grad_accum_steps");
  positive(learning_rate, "learning_rate");
  for (double w : weight_decay) {
    if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weight_decay must be >= 0");
  }
}

std::size_t HyperparameterGrid::size() const {
  return epochs.size() * batch_size.size() * grad_accum_steps.size() * learning_rate.size() *
         weight_decay.size() * mixed_precision.size();
}

HyperparameterGrid HyperparameterGrid::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "grid must be a JSON object");
  HyperparameterGrid g;
  g.epochs = read_list<int>(j, "epochs");
  g.batch_size = read_list<int>(j, "batch_size");
  g.grad_accum_steps = read_list<int>(j, "grad_accum_steps");
  g.learning_rate = read_list<double>(j, "learning_rate");
  g.weight_decay = read_list<double>(j, "weight_decay");
  g.mixed_precision = read_list<bool>(j, "mixed_precision");
  if (j.contains("seed") && !j.at("seed").is_null()) g.seed = j.at("seed").get<std::uint64_t>();
  g.validate();
  return g;
}

json HyperparameterGrid::to_json() const {
  json j = {{"epochs", epochs},
            {"batch_size", batch_size},
            {"grad_accum_steps", grad_accum_steps},
            {"learning_rate", learning_rate},
            {"weight_decay", weight_decay},
            {"mixed_precision", mixed_precision}};
  if (seed) j["seed"] = *seed;
  return j;
}

HyperparameterGrid default_search_space() {
  HyperparameterGrid g;
  g.epochs = {1, 3, 5};
  g.batch_size = {8, 12, 16};
  g.grad_accum_steps = {2, 4, 8};
  g.learning_rate = {1e-5, 3e-5, 9e-5};
  g.weight_decay = {0.01, 0.1, 1.0, 2.0};
  g.mixed_precision = {false, true};
  return g;
}

json TrialConfig::to_json() const {
  return {{"trial_index", trial_index},         {"epochs", epochs},
          {"batch_size", batch_size},           {"grad_accum_steps", grad_accum_steps},
          {"learning_rate", learning_rate},     {"weight_decay", weight_decay},
          {"mixed_precision", mixed_precision}};
}

std::vector<TrialConfig> enumerate_grid(const HyperparameterGrid& grid) {
  grid.validate();
  std::vector<TrialConfig> trials;
  trials.reserve(grid.size());
  for (int epochs : grid.epochs)
    for (int batch : grid.batch_size)
      for (int accum : grid.grad_accum_steps)
        for (double lr : grid.learning_rate)
          for (double decay : grid.weight_decay)
            for (bool mixed : grid.mixed_precision)
              trials.push_back({trials.size(), epochs, batch, accum, lr, decay, mixed});
  return trials;
}

std::size_t emit_configs(const std::vector<TrialConfig>& trials,
                         const std::filesystem::path& out_dir, const json& overlay) {
  if (!overlay.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "template must be a JSON object");
  }
  for (const char* key : kTrialKeys) {
    if (overlay.contains(key)) {
      throw Error(ErrorCode::TemplateKeyCollision,
                  std::string("template already defines '") + key + "'");
    }
  }
  if (trials.empty()) return 0;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string());

  for (const TrialConfig& trial : trials) {
    json config = overlay;
    config.update(trial.to_json());
    const auto path = out_dir / ("trial_" + std::to_string(trial.trial_index) + ".json");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << config.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
  }
  return trials.size();
}

}  // namespace loreseval::hpo
