#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "texfis/baselines.hpp"

using namespace texfis::baselines;

namespace {

Matrix two_clouds(std::mt19937_64& rng, std::size_t per_cloud, std::vector<int>* labels = nullptr) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix x;
  for (int k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < per_cloud; ++i) {
      x.push_back({100.0 * k + n01(rng), 100.0 * k + n01(rng)});
      if (labels) labels->push_back(k);
    }
  return x;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(n, std::vector<double>(d));
  for (auto& r : x)
    for (auto& v : r) v = u(rng);
  return x;
}

LabeledDataset dataset(Matrix x, std::vector<int> y) {
  LabeledDataset ds;
  ds.x = std::move(x);
  ds.y = std::move(y);
  for (std::size_t i = 0; i < ds.y.size(); ++i) ds.ids.push_back("s" + std::to_string(i));
  return ds;
}

} // namespace

TEST(Fcm, SingleClusterIsMean) {
  std::mt19937_64 rng(61);
  const auto x = random_matrix(rng, 25, 3);
  const auto s = fcm(x, 1, {});
  for (std::size_t d = 0; d < 3; ++d) {
    double mean = 0.0;
    for (const auto& r : x) mean += r[d];
    mean /= 25.0;
    EXPECT_NEAR(s.centers[0][d], mean, 1e-12);
  }
  for (double u : s.memberships[0]) EXPECT_EQ(u, 1.0);
}

TEST(Fcm, SeparatedClouds) {
  std::mt19937_64 rng(62);
  const auto x = two_clouds(rng, 50);
  const auto s = fcm(x, 2, {2.0, 1e-9, 300, 5});
  std::vector<double> m0(2, 0.0), m1(2, 0.0);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t d = 0; d < 2; ++d) {
      m0[d] += x[i][d] / 50.0;
      m1[d] += x[50 + i][d] / 50.0;
    }
  const bool first_low = s.centers[0][0] < s.centers[1][0];
  const auto& lo = s.centers[first_low ? 0 : 1];
  const auto& hi = s.centers[first_low ? 1 : 0];
  for (std::size_t d = 0; d < 2; ++d) {
    EXPECT_NEAR(lo[d], m0[d], 0.5);
    EXPECT_NEAR(hi[d], m1[d], 0.5);
  }
  for (std::size_t k = 0; k < x.size(); ++k)
    EXPECT_GT(std::max(s.memberships[0][k], s.memberships[1][k]), 0.99);
}

TEST(Fcm, ObjectiveMonotoneAndColumnsSumToOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const auto x = random_matrix(rng, 40, 3);
    const auto s = fcm(x, 2 + seed % 4, {2.0, 1e-12, 60, seed});
    ASSERT_FALSE(s.objective_history.empty());
    for (std::size_t i = 1; i < s.objective_history.size(); ++i)
      EXPECT_LE(s.objective_history[i], s.objective_history[i - 1] + 1e-10);
    EXPECT_NEAR(s.objective, fcm_objective(x, s.centers, s.memberships, s.m), 1e-9 * (1 + s.objective));
    for (std::size_t k = 0; k < x.size(); ++k) {
      double col = 0.0;
      for (std::size_t i = 0; i < s.c; ++i) {
        EXPECT_GE(s.memberships[i][k], 0.0);
        EXPECT_LE(s.memberships[i][k], 1.0);
        col += s.memberships[i][k];
      }
      EXPECT_NEAR(col, 1.0, 1e-9);
    }
  }
}

TEST(Fcm, RejectsBadArguments) {
  const Matrix x{{0.0}, {1.0}};
  EXPECT_THROW(fcm(x, 3, {}), std::invalid_argument);
  EXPECT_THROW(fcm(x, 1, {1.0, 1e-5, 10, 0}), std::invalid_argument);
}

TEST(Fcm, DeterministicForSeed) {
  std::mt19937_64 rng(63);
  const auto x = random_matrix(rng, 30, 2);
  const auto a = fcm(x, 3, {2.0, 1e-5, 100, 9}), b = fcm(x, 3, {2.0, 1e-5, 100, 9});
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_EQ(a.memberships, b.memberships);
}

TEST(KMeans, EveryPointItsOwnCenter) {
  std::mt19937_64 rng(64);
  const auto x = random_matrix(rng, 7, 2);
  const auto r = kmeans(x, 7, {});
  EXPECT_EQ(r.wcss, 0.0);
  std::vector<std::size_t> seen(7, 0);
  for (auto a : r.assignment) ++seen[a];
  for (auto n : seen) EXPECT_EQ(n, 1u);
}

TEST(KMeans, SeparatedCloudsMatchLabels) {
  std::mt19937_64 rng(65);
  std::vector<int> labels;
  const auto x = two_clouds(rng, 40, &labels);
  const auto r = kmeans(x, 2, {1e-9, 100, 3});
  const std::size_t first = r.assignment[0];
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(r.assignment[i] == first, labels[i] == labels[0]);
}

TEST(KMeans, WcssMonotone) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(100 + seed);
    const auto x = random_matrix(rng, 50, 3);
    const auto r = kmeans(x, 2 + seed % 5, {0.0, 100, seed});
    for (std::size_t i = 1; i < r.wcss_history.size(); ++i)
      EXPECT_LE(r.wcss_history[i], r.wcss_history[i - 1] + 1e-10);
  }
}

TEST(KMeans, DuplicatePointsStillFillEveryCluster) {
  const Matrix x{{0.0}, {0.0}, {0.0}, {0.0}, {5.0}, {9.0}};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = kmeans(x, 3, {1e-9, 100, seed});
    std::vector<std::size_t> seen(3, 0);
    for (auto a : r.assignment) ++seen[a];
    for (auto n : seen) EXPECT_GT(n, 0u);
    EXPECT_NEAR(r.wcss, 0.0, 1e-12);
  }
  EXPECT_THROW(kmeans(x, 7, {}), std::invalid_argument);
}

TEST(FcmClassify, Examples) {
  const auto train = dataset({{0.0}, {1.0}}, {1, 2});
  EXPECT_EQ(fcm_classify(train, {0.1}, 1), 1);
  EXPECT_EQ(fcm_classify(train, {1.0}, 1), 2);
  EXPECT_EQ(fcm_classify(train, {0.0}, 1), 1);
  EXPECT_EQ(fcm_classify(train, {0.5}, 1), 1);
  EXPECT_THROW(fcm_classify(train, {0.5}, 2), std::invalid_argument);
}

TEST(CenterClassifier, KMeansVariant) {
  const auto train = dataset({{0.0, 0.0}, {0.1, 0.0}, {1.0, 1.0}, {0.9, 1.0}}, {1, 1, 2, 2});
  CenterClassifier::Params p;
  p.clustering = CenterClassifier::Clustering::KMeans;
  const auto cc = CenterClassifier::fit(train, p);
  EXPECT_EQ(cc.center_labels(), (std::vector<int>{1, 2}));
  EXPECT_EQ(cc.predict({0.2, 0.1}), 1);
  EXPECT_EQ(cc.predict({0.8, 0.7}), 2);
}

TEST(Knn, Examples) {
  EXPECT_EQ(knn_classify(dataset({{0.0}, {0.3}, {1.0}}, {1, 2, 3}), {0.3}, 1), 2);
  // Three nearest to 0.05 are labeled 2, 2, 3.
  EXPECT_EQ(knn_classify(dataset({{0.0}, {0.1}, {0.2}, {1.0}}, {2, 2, 3, 1}), {0.05}, 3), 2);
  // One vote each; the class-1 neighbor is nearer.
  EXPECT_EQ(knn_classify(dataset({{0.0}, {0.3}, {1.0}}, {1, 2, 3}), {0.1}, 2), 1);
  EXPECT_EQ(knn_classify(dataset({{0.0}, {0.3}, {1.0}}, {2, 1, 3}), {0.1}, 2), 2);
  // One vote each at equal distance: lower label wins.
  EXPECT_EQ(knn_classify(dataset({{0.0}, {2.0}, {4.0}}, {2, 1, 3}), {1.0}, 2), 1);
}

TEST(Knn, RejectsBadArguments) {
  EXPECT_THROW(knn_classify(dataset({}, {}), {0.0}, 1), std::invalid_argument);
  EXPECT_THROW(knn_classify(dataset({{0.0}}, {1}), {0.0}, 2), std::invalid_argument);
}

TEST(Knn, OneNeighborReproducesTrainingLabels) {
  std::mt19937_64 rng(66);
  auto x = random_matrix(rng, 60, 4);
  std::vector<int> y;
  for (std::size_t i = 0; i < 60; ++i) y.push_back(1 + static_cast<int>(i % 4));
  const auto ds = dataset(x, y);
  const auto knn = KnnClassifier::fit(ds, 1);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(knn.predict(x[i]), y[i]);
}

TEST(Scaler, MapsTrainingRangeToUnit) {
  const Matrix x{{1.0, 10.0}, {3.0, 10.0}, {2.0, 10.0}};
  const auto s = MinMaxScaler::fit(x);
  EXPECT_EQ(s.apply(std::vector<double>{1.0, 10.0}), (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(s.apply(std::vector<double>{3.0, 10.0})[0], 1.0);
  EXPECT_EQ(s.apply(std::vector<double>{2.0, 10.0})[0], 0.5);
}
