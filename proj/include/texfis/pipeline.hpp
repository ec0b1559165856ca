#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "texfis/anfis.hpp"
#include "texfis/evaluate.hpp"
#include "texfis/image.hpp"

namespace texfis::pipeline {

namespace fs = std::filesystem;

struct PipelineConfig {
  // texture
  std::size_t ng = 8;
  int glcm_distance = 1;
  bool symmetric = true;
  // preprocess
  int se_size = 3;
  bool mask_close = true;
  // anfis
  anfis::TrainConfig train;
  std::size_t max_rules = 0; // 0 keeps the full grid partition
  // baselines
  std::size_t knn_k = 5;
  std::size_t fcm_centers_per_class = 1;
  double fcm_m = 2.0;
  double fcm_tol = 1e-5;
  int fcm_max_iter = 100;
  std::size_t kmeans_centers_per_class = 1;
  int kmeans_max_iter = 100;
  // synthetic corpus
  std::size_t synth_per_class = 10;
  std::size_t synth_size = 64;
  std::uint64_t seed = 7;
  std::string out_dir = "out";

  void validate() const;
  /// Sorted key=value lines for every field except out_dir.
  std::string canonical() const;
  /// 16 hex digits (FNV-1a 64) of canonical().
  std::string fingerprint() const;

  static PipelineConfig parse(std::istream& in);
  static PipelineConfig load(const fs::path& path);
  void write(std::ostream& out) const;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Split { Train, Test };

struct ManifestEntry {
  fs::path path; // resolved against the manifest directory
  std::string raw_path;
  int label = 0;
  Split split = Split::Train;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  int n_classes = 0;

  static Manifest parse(std::istream& in, const fs::path& base_dir = {});
  static Manifest load(const fs::path& path);
  void write(std::ostream& out) const;
  void validate() const;
};

class ManifestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Outcome of a command: exit code 0 only when everything succeeded.
struct CommandResult {
  int exit_code = 0;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::vector<fs::path> outputs;

  bool ok() const noexcept { return exit_code == 0; }
};

// --- synthetic texture corpus ---

inline constexpr int kSynthClasses = 4;

/// One synthetic texture image: 1 = fine checkerboard, 2 = coarse
/// checkerboard, 3 = spatially smoothed noise, 4 = white noise.
GrayImage synth_texture(int label, std::size_t size, std::uint64_t seed);

CommandResult cmd_synth(const PipelineConfig& cfg, const fs::path& out_dir);

CommandResult cmd_features(const fs::path& manifest_path, const PipelineConfig& cfg, const fs::path& out_csv);

CommandResult cmd_train(const fs::path& features_csv, const fs::path& manifest_path, const PipelineConfig& cfg,
                        const fs::path& out_dir);

enum class Method { Anfis, Fcm, Knn, KMeans };

std::string method_name(Method m);
std::vector<Method> parse_methods(const std::string& list);

struct EvaluateOptions {
  std::vector<Method> methods{Method::Anfis, Method::Fcm, Method::Knn, Method::KMeans};
  bool allow_fingerprint_mismatch = false;
};

CommandResult cmd_evaluate(const fs::path& features_csv, const fs::path& manifest_path, const fs::path& model_path,
                           const PipelineConfig& cfg, const fs::path& out_dir, const EvaluateOptions& opts = {});

CommandResult cmd_segment(const fs::path& image_path, const PipelineConfig& cfg, const fs::path& out_dir);

/// Grouped bars (sensitivity, specificity, accuracy) per method, 0..100 scale.
GrayImage render_bar_chart(const std::vector<eval::MetricsReport>& reports);

} // namespace texfis::pipeline
