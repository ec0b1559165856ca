#include "texfis/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "texfis/simd/kernels.hpp"

namespace texfis::baselines {
namespace {

std::size_t check_matrix(const Matrix& X, const char* who) {
  if (X.empty()) throw std::invalid_argument(std::string(who) + ": empty data");
  const std::size_t d = X.front().size();
  if (d == 0) throw std::invalid_argument(std::string(who) + ": zero-dimensional data");
  for (const auto& row : X)
    if (row.size() != d) throw std::invalid_argument(std::string(who) + ": ragged data");
  return d;
}

} // namespace

double fcm_objective(const Matrix& X, const Matrix& centers, const Matrix& memberships, double m) {
  double j = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t k = 0; k < X.size(); ++k)
      j += std::pow(memberships[i][k], m) * simd::squared_distance(X[k], centers[i]);
  return j;
}

FcmState fcm(const Matrix& X, std::size_t c, const FcmParams& params) {
  const std::size_t d = check_matrix(X, "fcm");
  const std::size_t n = X.size();
  if (c < 1) throw std::invalid_argument("fcm: cluster count must be positive");
  if (n < c) throw std::invalid_argument("fcm: fewer samples than clusters");
  if (!(params.m > 1.0)) throw std::invalid_argument("fcm: fuzzifier m must be > 1");
  if (params.max_iter < 1) throw std::invalid_argument("fcm: max_iter must be positive");

  FcmState s;
  s.c = c;
  s.m = params.m;
  s.memberships.assign(c, std::vector<double>(n));
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) total += s.memberships[i][k] = unit(rng) + 1e-12;
    for (std::size_t i = 0; i < c; ++i) s.memberships[i][k] /= total;
  }

  const double exponent = 1.0 / (params.m - 1.0);
  s.centers.assign(c, std::vector<double>(d, 0.0));
  std::vector<double> dist2(c);
  for (int iter = 0; iter < params.max_iter; ++iter) {
    for (std::size_t i = 0; i < c; ++i) {
      std::vector<double> acc(d, 0.0);
      double weight = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double w = std::pow(s.memberships[i][k], params.m);
        weight += w;
        for (std::size_t j = 0; j < d; ++j) acc[j] += w * X[k][j];
      }
      if (weight > 0.0)
        for (std::size_t j = 0; j < d; ++j) s.centers[i][j] = acc[j] / weight;
    }

    double max_delta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t coincident = c;
      for (std::size_t i = 0; i < c; ++i) {
        dist2[i] = simd::squared_distance(X[k], s.centers[i]);
        if (dist2[i] == 0.0 && coincident == c) coincident = i;
      }
      for (std::size_t i = 0; i < c; ++i) {
        double u;
        if (coincident < c) {
          u = i == coincident ? 1.0 : 0.0;
        } else {
          double denom = 0.0;
          for (std::size_t j = 0; j < c; ++j) denom += std::pow(dist2[i] / dist2[j], exponent);
          u = 1.0 / denom;
        }
        max_delta = std::max(max_delta, std::abs(u - s.memberships[i][k]));
        s.memberships[i][k] = u;
      }
    }
    s.iterations = iter + 1;
    s.objective = fcm_objective(X, s.centers, s.memberships, params.m);
    s.objective_history.push_back(s.objective);
    if (max_delta < params.tol) break;
  }
  return s;
}

KMeansResult kmeans(const Matrix& X, std::size_t c, const KMeansParams& params) {
  const std::size_t d = check_matrix(X, "kmeans");
  const std::size_t n = X.size();
  if (c < 1) throw std::invalid_argument("kmeans: cluster count must be positive");
  if (n < c) throw std::invalid_argument("kmeans: fewer samples than clusters");
  if (params.max_iter < 1) throw std::invalid_argument("kmeans: max_iter must be positive");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(params.seed);
  std::shuffle(order.begin(), order.end(), rng);

  KMeansResult res;
  for (std::size_t i = 0; i < c; ++i) res.centers.push_back(X[order[i]]);
  res.assignment.assign(n, 0);
  std::vector<double> own_dist(n);

  for (int iter = 0; iter < params.max_iter; ++iter) {
    bool changed = iter == 0;
    double wcss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < c; ++i) {
        const double dd = simd::squared_distance(X[k], res.centers[i]);
        if (dd < best_d) {
          best_d = dd;
          best = i;
        }
      }
      changed = changed || best != res.assignment[k];
      res.assignment[k] = best;
      own_dist[k] = best_d;
      wcss += best_d;
    }
    res.wcss = wcss;
    res.wcss_history.push_back(wcss);
    res.iterations = iter + 1;
    if (!changed) break;

    Matrix sums(c, std::vector<double>(d, 0.0));
    std::vector<std::size_t> counts(c, 0);
    for (std::size_t k = 0; k < n; ++k) {
      ++counts[res.assignment[k]];
      for (std::size_t j = 0; j < d; ++j) sums[res.assignment[k]][j] += X[k][j];
    }
    double shift = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      if (counts[i] == 0) {
        const auto far = static_cast<std::size_t>(
            std::max_element(own_dist.begin(), own_dist.end()) - own_dist.begin());
        res.centers[i] = X[far];
        own_dist[far] = 0.0;
        shift = std::numeric_limits<double>::infinity();
        continue;
      }
      std::vector<double> next(d);
      for (std::size_t j = 0; j < d; ++j) next[j] = sums[i][j] / static_cast<double>(counts[i]);
      shift = std::max(shift, simd::squared_distance(next, res.centers[i]));
      res.centers[i] = std::move(next);
    }
    if (shift < params.tol * params.tol) {
      // Centers are stationary; the next assignment pass would repeat this one.
      break;
    }
  }
  return res;
}

void LabeledDataset::validate(int n_classes) const {
  if (x.size() != y.size()) throw std::invalid_argument("LabeledDataset: X rows != labels");
  if (!ids.empty() && ids.size() != y.size()) throw std::invalid_argument("LabeledDataset: ids != labels");
  for (int label : y)
    if (label < 1 || (n_classes > 0 && label > n_classes))
      throw std::invalid_argument("LabeledDataset: label " + std::to_string(label) + " out of range");
}

MinMaxScaler MinMaxScaler::fit(const Matrix& x) {
  const std::size_t d = check_matrix(x, "MinMaxScaler");
  MinMaxScaler s;
  s.lo = x.front();
  s.hi = x.front();
  for (const auto& row : x)
    for (std::size_t j = 0; j < d; ++j) {
      s.lo[j] = std::min(s.lo[j], row[j]);
      s.hi[j] = std::max(s.hi[j], row[j]);
    }
  return s;
}

std::vector<double> MinMaxScaler::apply(const std::vector<double>& v) const {
  if (v.size() != lo.size()) throw std::invalid_argument("MinMaxScaler: dimension mismatch");
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double range = hi[j] - lo[j];
    out[j] = range > 0.0 ? (v[j] - lo[j]) / range : 0.0;
  }
  return out;
}

Matrix MinMaxScaler::apply(const Matrix& x) const {
  Matrix out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(apply(row));
  return out;
}

CenterClassifier CenterClassifier::fit(const LabeledDataset& train, const Params& params) {
  train.validate();
  if (train.x.empty()) throw std::invalid_argument("CenterClassifier: empty training set");
  if (params.centers_per_class < 1) throw std::invalid_argument("CenterClassifier: need >= 1 center per class");
  CenterClassifier cc;
  cc.scaler_ = MinMaxScaler::fit(train.x);
  std::map<int, Matrix> by_class;
  for (std::size_t i = 0; i < train.x.size(); ++i) by_class[train.y[i]].push_back(cc.scaler_.apply(train.x[i]));
  for (const auto& [label, rows] : by_class) {
    if (rows.size() < params.centers_per_class)
      throw std::invalid_argument("CenterClassifier: class " + std::to_string(label) + " has " +
                                  std::to_string(rows.size()) + " samples, fewer than " +
                                  std::to_string(params.centers_per_class) + " centers");
    const Matrix centers = params.clustering == Clustering::Fcm
                               ? fcm(rows, params.centers_per_class, params.fcm).centers
                               : kmeans(rows, params.centers_per_class, params.kmeans).centers;
    for (const auto& ctr : centers) {
      cc.centers_.push_back(ctr);
      cc.labels_.push_back(label);
    }
  }
  return cc;
}

int CenterClassifier::predict(const std::vector<double>& x) const {
  const auto v = scaler_.apply(x);
  double best = std::numeric_limits<double>::infinity();
  int label = 0;
  // Centers are grouped by ascending label, so strict < keeps the lowest label on ties.
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double dd = simd::squared_distance(v, centers_[i]);
    if (dd < best) {
      best = dd;
      label = labels_[i];
    }
  }
  return label;
}

int fcm_classify(const LabeledDataset& train, const std::vector<double>& test_x, std::size_t c_per_class,
                 const FcmParams& params) {
  CenterClassifier::Params p;
  p.clustering = CenterClassifier::Clustering::Fcm;
  p.centers_per_class = c_per_class;
  p.fcm = params;
  return CenterClassifier::fit(train, p).predict(test_x);
}

KnnClassifier KnnClassifier::fit(const LabeledDataset& train, std::size_t k) {
  train.validate();
  if (train.x.empty()) throw std::invalid_argument("knn: empty training set");
  if (k < 1 || k > train.x.size()) throw std::invalid_argument("knn: k must be in [1, N]");
  KnnClassifier knn;
  knn.scaler_ = MinMaxScaler::fit(train.x);
  knn.x_ = knn.scaler_.apply(train.x);
  knn.y_ = train.y;
  knn.k_ = k;
  return knn;
}

int KnnClassifier::predict(const std::vector<double>& x) const {
  const auto v = scaler_.apply(x);
  std::vector<std::pair<double, std::size_t>> dist(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) dist[i] = {std::sqrt(simd::squared_distance(v, x_[i])), i};
  std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k_), dist.end());

  struct Vote {
    std::size_t count = 0;
    double dist_sum = 0.0;
  };
  std::map<int, Vote> votes;
  for (std::size_t i = 0; i < k_; ++i) {
    auto& vote = votes[y_[dist[i].second]];
    ++vote.count;
    vote.dist_sum += dist[i].first;
  }
  int best_label = 0;
  const Vote* best = nullptr;
  for (const auto& [label, vote] : votes) { // ascending label
    if (!best || vote.count > best->count ||
        (vote.count == best->count &&
         vote.dist_sum / static_cast<double>(vote.count) < best->dist_sum / static_cast<double>(best->count))) {
      best = &vote;
      best_label = label;
    }
  }
  return best_label;
}

int knn_classify(const LabeledDataset& train, const std::vector<double>& test_x, std::size_t k) {
  return KnnClassifier::fit(train, k).predict(test_x);
}

} // namespace texfis::baselines
