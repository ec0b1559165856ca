#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "texfis/evaluate.hpp"

using namespace texfis::eval;

TEST(Confusion, Examples) {
  const std::vector<int> a{1, 1, 2, 2};
  EXPECT_EQ(confusion(a, a, 1), (ConfusionCounts{2, 2, 0, 0}));
  const std::vector<int> t{1, 2}, p{2, 1};
  EXPECT_EQ(confusion(t, p, 1), (ConfusionCounts{0, 0, 1, 1}));
  EXPECT_THROW(confusion(t, a, 1), std::invalid_argument);
  EXPECT_THROW(confusion(std::vector<int>{}, std::vector<int>{}, 1), std::invalid_argument);
}

TEST(Confusion, CountsPartitionCases) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> lab(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> t(1 + trial), p(1 + trial);
    for (auto& v : t) v = lab(rng);
    for (auto& v : p) v = lab(rng);
    EXPECT_EQ(confusion(t, p, lab(rng)).total(), t.size());
  }
}

TEST(Metrics, Examples) {
  const auto m = metrics({9, 9, 1, 1});
  EXPECT_EQ(*m.sensitivity, 90.0);
  EXPECT_EQ(*m.specificity, 90.0);
  EXPECT_EQ(*m.accuracy, 90.0);
  const auto perfect = metrics({5, 7, 0, 0});
  EXPECT_EQ(*perfect.sensitivity, 100.0);
  EXPECT_EQ(*perfect.specificity, 100.0);
  EXPECT_EQ(*perfect.accuracy, 100.0);
  EXPECT_DOUBLE_EQ(*metrics({29, 0, 0, 1}).sensitivity, 2900.0 / 30.0);
}

TEST(Metrics, ZeroDenominatorIsUndefined) {
  const auto m = metrics({0, 4, 1, 0});
  EXPECT_FALSE(m.sensitivity.has_value());
  EXPECT_EQ(*m.specificity, 80.0);
  EXPECT_FALSE(metrics({3, 0, 0, 1}).specificity.has_value());
}

TEST(Multiclass, PerfectPredictions) {
  const std::vector<int> y{1, 2, 3, 1, 2, 3};
  const auto r = multiclass_report(y, y, 3);
  EXPECT_EQ(*r.sensitivity, 100.0);
  EXPECT_EQ(*r.specificity, 100.0);
  EXPECT_EQ(r.accuracy, 100.0);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Multiclass, ClassNeverPredicted) {
  const std::vector<int> t{1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4};
  const std::vector<int> p{1, 1, 1, 2, 2, 2, 1, 2, 4, 4, 4, 4};
  const auto r = multiclass_report(t, p, 4);
  ASSERT_EQ(r.per_class.size(), 4u);
  EXPECT_EQ(*r.per_class[2].metrics.sensitivity, 0.0);
  EXPECT_EQ(*r.per_class[0].metrics.sensitivity, 100.0);
  EXPECT_EQ(*r.per_class[1].metrics.sensitivity, 100.0);
  EXPECT_EQ(*r.per_class[3].metrics.sensitivity, 100.0);
  EXPECT_DOUBLE_EQ(*r.sensitivity, 75.0);
  EXPECT_DOUBLE_EQ(*r.specificity, (800.0 / 9 + 800.0 / 9 + 100.0 + 800.0 / 9) / 4);
  EXPECT_DOUBLE_EQ(r.accuracy, 75.0);
}

TEST(Multiclass, SingleClassTruthWarns) {
  const std::vector<int> t{2, 2, 2}, p{2, 2, 1};
  const auto r = multiclass_report(t, p, 2);
  EXPECT_FALSE(r.per_class[1].metrics.specificity.has_value());
  EXPECT_FALSE(r.per_class[0].metrics.sensitivity.has_value());
  EXPECT_EQ(r.warnings.size(), 2u);
  EXPECT_DOUBLE_EQ(*r.specificity, 100.0 * 2 / 3); // class 1 only
  EXPECT_DOUBLE_EQ(*r.sensitivity, 100.0 * 2 / 3); // class 2 only
}

TEST(Multiclass, AccuracyIsFractionCorrect) {
  std::mt19937_64 rng(72);
  std::uniform_int_distribution<int> lab(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> t(3 + trial), p(3 + trial);
    for (auto& v : t) v = lab(rng);
    for (auto& v : p) v = lab(rng);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < t.size(); ++i) correct += t[i] == p[i];
    EXPECT_EQ(multiclass_report(t, p, 5).accuracy, static_cast<double>(correct) / t.size() * 100.0);
  }
}

TEST(Properties, SwappingPositiveClassSwapsRates) {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> lab(1, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> t(10), p(10);
    for (auto& v : t) v = lab(rng);
    for (auto& v : p) v = lab(rng);
    const auto a = confusion(t, p, 1), b = confusion(t, p, 2);
    EXPECT_EQ(a.tp, b.tn);
    EXPECT_EQ(a.tn, b.tp);
    EXPECT_EQ(a.fp, b.fn);
    EXPECT_EQ(a.fn, b.fp);
    EXPECT_EQ(metrics(a).sensitivity, metrics(b).specificity);
    EXPECT_EQ(metrics(a).specificity, metrics(b).sensitivity);
  }
}

TEST(Properties, PermutationInvariant) {
  std::mt19937_64 rng(74);
  std::uniform_int_distribution<int> lab(1, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> t(15), p(15);
    for (auto& v : t) v = lab(rng);
    for (auto& v : p) v = lab(rng);
    std::vector<std::size_t> idx(15);
    for (std::size_t i = 0; i < 15; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<int> t2, p2;
    for (auto i : idx) {
      t2.push_back(t[i]);
      p2.push_back(p[i]);
    }
    std::stringstream a, b;
    write_report(a, multiclass_report(t, p, 3));
    write_report(b, multiclass_report(t2, p2, 3));
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(Report, FormatsAndUndefined) {
  const std::vector<int> t{2, 2}, p{2, 1};
  auto r = multiclass_report(t, p, 2);
  r.method = "knn";
  r.fingerprint = "0123";
  std::stringstream ss;
  write_report(ss, r);
  const std::string text = ss.str();
  EXPECT_NE(text.find("method=knn\n"), std::string::npos);
  EXPECT_NE(text.find("fingerprint=0123\n"), std::string::npos);
  EXPECT_NE(text.find("accuracy=50\n"), std::string::npos);
  EXPECT_NE(text.find("class.1.sensitivity=undefined\n"), std::string::npos);
  EXPECT_NE(text.find("warning.0="), std::string::npos);

  std::stringstream csv;
  std::vector<MetricsReport> reps{r};
  write_comparison_csv(csv, reps);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "method,sensitivity,specificity,accuracy");
}

TEST(Published, AnfisRow) {
  const auto rows = published_results();
  const auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return std::string(r.method) == "ANFIS"; });
  ASSERT_NE(it, rows.end());
  EXPECT_EQ(it->sensitivity, 96.6);
  EXPECT_EQ(it->specificity, 95.3);
  EXPECT_EQ(it->accuracy, 98.67);
}
