#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qfreq/ansatz.hpp"
#include "qfreq/datasets.hpp"
#include "qfreq/training.hpp"

namespace qfreq {

// Shared experiment defaults so the CLI, config loader and acceptance suite
// agree on one set of numbers.
namespace defaults {
inline constexpr double kCurveOutputScale = 1.2;
inline constexpr int kCurveSamples = 64;
inline constexpr double kCurveEta = 0.01;
inline constexpr int kCurveIterations = 200;
inline constexpr int kTrackedPeaks = 3;
inline constexpr double kLearnedThreshold = 0.3;

inline constexpr int kQntkQubits = 8;
inline constexpr int kQntkLayers = 20;
inline constexpr int kQntkIterations = 100;

inline constexpr double kIrisEta = 0.05;
inline constexpr int kIrisIterations = 400;

inline constexpr int kAlignSteps = 50;
inline constexpr double kAlignEta = 0.1;
inline constexpr double kSvmC = 1000.0;
}  // namespace defaults

// Validated run description. Built from a JSON document (strict keys) plus
// command-line overrides.
struct RunConfig {
  std::string experiment;
  std::filesystem::path out_dir;
  int threads = 0;
  std::string simd = "auto";

  // ansatz
  std::string preset;           // empty when custom
  nlohmann::json custom;        // null unless a custom layout was given
  double output_scale = 1.0;
  int ansatz_qubits = 0;        // 0 = family default
  int ansatz_layers = 0;

  // dataset
  std::string curve_kind = "low";
  int samples = defaults::kCurveSamples;
  std::string iris_path;  // empty = bundled synthetic stand-in
  std::pair<std::string, std::string> classes{"Iris-setosa",
                                              "Iris-versicolor"};
  DlpConfig dlp;

  TrainConfig train;

  int align_steps = defaults::kAlignSteps;
  double align_eta = defaults::kAlignEta;
  double svm_c = defaults::kSvmC;
  std::string qntk_mode = "continuous";

  nlohmann::json echo;  // effective document, written to the manifest
};

struct RunManifest {
  std::string status;  // "complete" or "partial"
  nlohmann::json document;
  std::filesystem::path path;
};

// Default config document per experiment.
nlohmann::json default_config(std::string_view experiment);

// Strictly validates the document (unknown keys rejected) and resolves the
// experiment defaults.
RunConfig make_config(const nlohmann::json& document);

// Ansatz described by the config (preset, widened family or custom layout).
AnsatzSpec config_ansatz(const RunConfig& config);

// Training dataset described by the config.
Dataset config_dataset(const RunConfig& config);

// Executes the experiment pipeline, writing its CSV artifacts and
// manifest.json under config.out_dir.
RunManifest run(const RunConfig& config);

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace qfreq
