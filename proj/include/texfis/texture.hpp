#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "texfis/image.hpp"

namespace texfis::texture {

enum class Direction { Deg0, Deg45, Deg90, Deg135 };

inline constexpr std::array<Direction, 4> kAllDirections{Direction::Deg0, Direction::Deg45,
                                                         Direction::Deg90, Direction::Deg135};

/// (row, col) step for one pixel of distance; row grows downward.
std::pair<int, int> offset(Direction d) noexcept;

/// Normalized gray-level co-occurrence matrix, stored row-major.
struct Glcm {
  std::size_t levels = 0;
  std::vector<double> p;
  Direction direction = Direction::Deg0;
  int distance = 1;
  bool symmetric = true;

  double operator()(std::size_t i, std::size_t j) const { return p[i * levels + j]; }
};

inline constexpr std::size_t kFeatureCount = 7;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames{
    "contrast", "asm", "homogeneity", "idm", "energy", "entropy", "variance"};

struct FeatureVector {
  double contrast = 0.0;
  double asm_ = 0.0;
  double homogeneity = 0.0;
  double idm = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double variance = 0.0;

  /// Values in kFeatureNames order.
  std::array<double, kFeatureCount> values() const noexcept;
  static FeatureVector from_values(const std::array<double, kFeatureCount>& v) noexcept;
};

/// Counts pixel pairs (x, x + offset * distance) after quantizing to `levels`
/// bins; the symmetric variant also counts every transposed pair.
Glcm compute_glcm(const GrayImage& img, Direction direction, int distance, std::size_t levels,
                  bool symmetric);

/// Throws std::invalid_argument if the entries do not sum to 1 within 1e-9.
FeatureVector glcm_features(const Glcm& m);

/// Mean of the per-direction features over the four symmetric GLCMs.
FeatureVector extract_features(const GrayImage& img, std::size_t levels, int distance,
                               bool symmetric = true);

struct FeatureRow {
  FeatureVector features;
  int label = 0;
};

/// Feature table CSV. Lines starting with '#' carry metadata (key=value) and
/// precede the header.
struct FeatureTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<FeatureRow> rows;

  const std::string* find_metadata(std::string_view key) const;
};

void write_feature_csv(std::ostream& out, const FeatureTable& table);
FeatureTable read_feature_csv(std::istream& in);

} // namespace texfis::texture
