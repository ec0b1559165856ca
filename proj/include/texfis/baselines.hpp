#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace texfis::baselines {

using Matrix = std::vector<std::vector<double>>;

struct FcmState {
  std::size_t c = 0;
  double m = 2.0;
  Matrix centers;                     // c x d
  Matrix memberships;                 // c x N
  double objective = 0.0;
  std::vector<double> objective_history; // one entry per completed iteration
  int iterations = 0;
};

struct FcmParams {
  double m = 2.0;
  double tol = 1e-5;
  int max_iter = 100;
  std::uint64_t seed = 0;
};

/// Fuzzy c-means from a seeded random membership matrix.
FcmState fcm(const Matrix& X, std::size_t c, const FcmParams& params);

double fcm_objective(const Matrix& X, const Matrix& centers, const Matrix& memberships, double m);

struct KMeansResult {
  Matrix centers;
  std::vector<std::size_t> assignment;
  double wcss = 0.0;
  std::vector<double> wcss_history; // after each assignment step
  int iterations = 0;
};

struct KMeansParams {
  double tol = 1e-9;
  int max_iter = 100;
  std::uint64_t seed = 0;
};

/// Lloyd's algorithm seeded with c distinct random samples; an emptied
/// cluster is re-seeded to the point farthest from its current center.
KMeansResult kmeans(const Matrix& X, std::size_t c, const KMeansParams& params);

struct LabeledDataset {
  Matrix x;
  std::vector<int> y;
  std::vector<std::string> ids;

  void validate(int n_classes = 0) const;
};

/// Per-feature min/max scaling fitted on a training set; constant columns
/// map to 0.
struct MinMaxScaler {
  std::vector<double> lo;
  std::vector<double> hi;

  static MinMaxScaler fit(const Matrix& x);
  std::vector<double> apply(const std::vector<double>& v) const;
  Matrix apply(const Matrix& x) const;
};

/// Nearest-center classifier built from per-class cluster centers.
class CenterClassifier {
public:
  enum class Clustering { Fcm, KMeans };

  struct Params {
    Clustering clustering = Clustering::Fcm;
    std::size_t centers_per_class = 1;
    FcmParams fcm;
    KMeansParams kmeans;
  };

  static CenterClassifier fit(const LabeledDataset& train, const Params& params);

  /// Ties on distance go to the lowest class label.
  int predict(const std::vector<double>& x) const;

  const Matrix& centers() const noexcept { return centers_; }
  const std::vector<int>& center_labels() const noexcept { return labels_; }
  const MinMaxScaler& scaler() const noexcept { return scaler_; }

private:
  MinMaxScaler scaler_;
  Matrix centers_; // in scaled space
  std::vector<int> labels_;
};

int fcm_classify(const LabeledDataset& train, const std::vector<double>& test_x, std::size_t c_per_class,
                 const FcmParams& params = {});

class KnnClassifier {
public:
  static KnnClassifier fit(const LabeledDataset& train, std::size_t k);

  /// Majority vote among the k nearest; vote ties go to the smaller mean
  /// distance, then the lower label; distance ties to the lower sample index.
  int predict(const std::vector<double>& x) const;

private:
  MinMaxScaler scaler_;
  Matrix x_;
  std::vector<int> y_;
  std::size_t k_ = 1;
};

int knn_classify(const LabeledDataset& train, const std::vector<double>& test_x, std::size_t k);

} // namespace texfis::baselines
