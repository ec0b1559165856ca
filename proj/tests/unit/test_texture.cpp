#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "test_util.hpp"
#include "texfis/texture.hpp"

using namespace texfis;
using namespace texfis::texture;
using texfis::testing::random_gray;

namespace {

Glcm make_glcm(std::size_t levels, std::vector<double> p) {
  Glcm m;
  m.levels = levels;
  m.p = std::move(p);
  return m;
}

GrayImage mirror_horizontal(const GrayImage& img) {
  GrayImage out(img.width(), img.height(), img.levels());
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) out.set(r, img.width() - 1 - c, img.at(r, c));
  return out;
}

GrayImage mirror_vertical(const GrayImage& img) {
  GrayImage out(img.width(), img.height(), img.levels());
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) out.set(img.height() - 1 - r, c, img.at(r, c));
  return out;
}

} // namespace

TEST(Glcm, Offsets) {
  EXPECT_EQ(offset(Direction::Deg0), std::make_pair(0, 1));
  EXPECT_EQ(offset(Direction::Deg45), std::make_pair(-1, 1));
  EXPECT_EQ(offset(Direction::Deg90), std::make_pair(-1, 0));
  EXPECT_EQ(offset(Direction::Deg135), std::make_pair(-1, -1));
}

TEST(Glcm, TwoByTwoExample) {
  const GrayImage img(2, 2, 2, {0, 0, 1, 1});
  for (bool sym : {false, true}) {
    const auto m = compute_glcm(img, Direction::Deg0, 1, 2, sym);
    EXPECT_EQ(m.p, (std::vector<double>{0.5, 0.0, 0.0, 0.5}));
  }
}

TEST(Glcm, ConstantImage) {
  const GrayImage img(5, 4, 8, std::vector<std::uint16_t>(20, 3));
  for (Direction d : kAllDirections) {
    const auto m = compute_glcm(img, d, 1, 8, true);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(m(i, j), (i == 3 && j == 3) ? 1.0 : 0.0);
  }
}

TEST(Glcm, TooSmallImageThrows) {
  EXPECT_THROW(compute_glcm(GrayImage(1, 5, 4), Direction::Deg0, 1, 4, true), std::invalid_argument);
  EXPECT_THROW(compute_glcm(GrayImage(3, 3, 4), Direction::Deg45, 3, 4, true), std::invalid_argument);
  EXPECT_THROW(compute_glcm(GrayImage(3, 3, 4), Direction::Deg0, 1, 1, true), std::invalid_argument);
}

TEST(Glcm, MatchesBruteForceOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto img = random_gray(rng, 6, 6, 4);
    for (Direction dir : kAllDirections)
      for (int d : {1, 2})
        for (bool sym : {false, true}) {
          const auto [dr, dc] = offset(dir);
          const auto want = oracle::brute_glcm(img, dr, dc, d, sym);
          const auto got = compute_glcm(img, dir, d, 4, sym);
          ASSERT_EQ(got.p.size(), want.size());
          for (std::size_t k = 0; k < want.size(); ++k) ASSERT_NEAR(got.p[k], want[k], 1e-15);
        }
  }
}

TEST(Glcm, NormalizedAndSymmetric) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto img = random_gray(rng, 5 + trial % 30, 4 + trial % 17, 256);
    for (Direction dir : kAllDirections) {
      const auto m = compute_glcm(img, dir, 1, 8, true);
      double sum = 0.0;
      for (double v : m.p) {
        EXPECT_GE(v, 0.0);
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
      for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(m(i, j), m(j, i));
    }
  }
}

TEST(Glcm, MirrorSymmetry) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto img = random_gray(rng, 9, 7, 8);
    EXPECT_EQ(compute_glcm(img, Direction::Deg0, 1, 8, true).p,
              compute_glcm(mirror_horizontal(img), Direction::Deg0, 1, 8, true).p);
    EXPECT_EQ(compute_glcm(img, Direction::Deg90, 1, 8, true).p,
              compute_glcm(mirror_vertical(img), Direction::Deg90, 1, 8, true).p);
  }
}

TEST(Features, DiagonalExample) {
  const auto f = glcm_features(make_glcm(2, {0.5, 0.0, 0.0, 0.5}));
  EXPECT_DOUBLE_EQ(f.contrast, 0.0);
  EXPECT_DOUBLE_EQ(f.asm_, 0.5);
  EXPECT_DOUBLE_EQ(f.homogeneity, 1.0);
  EXPECT_DOUBLE_EQ(f.idm, 1.0);
  EXPECT_DOUBLE_EQ(f.energy, 0.5);
  EXPECT_DOUBLE_EQ(f.entropy, 1.0);
  EXPECT_DOUBLE_EQ(f.variance, 0.25);
}

TEST(Features, UniformExample) {
  const auto f = glcm_features(make_glcm(2, {0.25, 0.25, 0.25, 0.25}));
  EXPECT_DOUBLE_EQ(f.contrast, 0.5);
  EXPECT_DOUBLE_EQ(f.asm_, 0.25);
  EXPECT_DOUBLE_EQ(f.homogeneity, 0.75);
  EXPECT_DOUBLE_EQ(f.idm, 0.75);
  EXPECT_DOUBLE_EQ(f.entropy, 2.0);
}

TEST(Features, ConstantImage) {
  const GrayImage img(6, 6, 256, std::vector<std::uint16_t>(36, 100));
  const auto f = extract_features(img, 8, 1);
  EXPECT_EQ(f.contrast, 0.0);
  EXPECT_EQ(f.energy, 1.0);
  EXPECT_EQ(f.entropy, 0.0);
}

TEST(Features, UnnormalizedMatrixThrows) {
  EXPECT_THROW(glcm_features(make_glcm(2, {0.5, 0.0, 0.0, 0.4})), std::invalid_argument);
}

TEST(Features, HorizontalStripes) {
  // Rows alternate 0,1: horizontal pairs never change level, every other
  // direction crosses a row boundary and always does.
  const GrayImage img(4, 4, 2, {0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1});
  const double c0 = glcm_features(compute_glcm(img, Direction::Deg0, 1, 2, true)).contrast;
  const double c45 = glcm_features(compute_glcm(img, Direction::Deg45, 1, 2, true)).contrast;
  const double c90 = glcm_features(compute_glcm(img, Direction::Deg90, 1, 2, true)).contrast;
  const double c135 = glcm_features(compute_glcm(img, Direction::Deg135, 1, 2, true)).contrast;
  EXPECT_EQ(c0, 0.0);
  EXPECT_EQ(c90, 1.0);
  EXPECT_EQ(c45, 1.0);
  EXPECT_EQ(c135, 1.0);
  EXPECT_DOUBLE_EQ(extract_features(img, 2, 1).contrast, 0.75);
}

TEST(Features, BoundsAndMeanOfDirections) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const auto img = random_gray(rng, 8 + trial % 20, 8 + trial % 13, 256);
    const auto avg = extract_features(img, 8, 1 + trial % 2);
    std::array<std::array<double, kFeatureCount>, 4> per{};
    for (std::size_t d = 0; d < 4; ++d) {
      const auto f = glcm_features(compute_glcm(img, kAllDirections[d], 1 + trial % 2, 8, true));
      per[d] = f.values();
      EXPECT_GE(f.contrast, 0.0);
      EXPECT_GE(f.asm_, 0.0);
      EXPECT_LE(f.asm_, 1.0);
      EXPECT_GE(f.homogeneity, 0.0);
      EXPECT_LE(f.homogeneity, 1.0);
      EXPECT_GE(f.idm, 0.0);
      EXPECT_LE(f.idm, 1.0 + 1e-15);
      EXPECT_GE(f.entropy, 0.0);
      EXPECT_GE(f.variance, 0.0);
      EXPECT_NEAR(f.asm_, f.energy, 1e-15);
    }
    const auto v = avg.values();
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      double lo = per[0][k], hi = per[0][k];
      for (const auto& p : per) {
        lo = std::min(lo, p[k]);
        hi = std::max(hi, p[k]);
      }
      EXPECT_GE(v[k], lo - 1e-12);
      EXPECT_LE(v[k], hi + 1e-12);
    }
  }
}

TEST(FeatureCsv, RoundTripIsExact) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  FeatureTable t;
  t.metadata = {{"fingerprint", "abc"}, {"ng", "8"}};
  for (int i = 0; i < 10; ++i) {
    std::array<double, kFeatureCount> v{};
    for (auto& x : v) x = u(rng);
    t.rows.push_back({FeatureVector::from_values(v), 1 + i % 4});
  }
  std::stringstream ss;
  write_feature_csv(ss, t);
  const std::string text = ss.str();
  EXPECT_NE(text.find("contrast,asm,homogeneity,idm,energy,entropy,variance,label\n"), std::string::npos);
  const auto back = read_feature_csv(ss);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].label, t.rows[i].label);
    EXPECT_EQ(back.rows[i].features.values(), t.rows[i].features.values());
  }
  ASSERT_NE(back.find_metadata("ng"), nullptr);
  EXPECT_EQ(*back.find_metadata("ng"), "8");
  EXPECT_EQ(back.find_metadata("missing"), nullptr);
}

TEST(FeatureCsv, RejectsMalformedRows) {
  std::stringstream bad_header("a,b\n");
  EXPECT_THROW(read_feature_csv(bad_header), std::exception);
  std::stringstream short_row("contrast,asm,homogeneity,idm,energy,entropy,variance,label\n1,2,3\n");
  EXPECT_THROW(read_feature_csv(short_row), std::exception);
}
