#include "texfis/anfis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "texfis/simd/kernels.hpp"

namespace texfis::anfis {

std::vector<double> AnfisModel::normalize(std::span<const double> x) const {
  if (x.size() != n_inputs())
    throw std::invalid_argument("ANFIS: expected " + std::to_string(n_inputs()) + " inputs, got " +
                                std::to_string(x.size()));
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - norm_min[j]) / (norm_max[j] - norm_min[j]);
  return out;
}

void AnfisModel::validate() const {
  rulebase.validate();
  if (n_classes < 1) throw std::invalid_argument("ANFIS: n_classes must be positive");
  if (norm_min.size() != n_inputs() || norm_max.size() != n_inputs())
    throw std::invalid_argument("ANFIS: normalization size != n_inputs");
  for (std::size_t j = 0; j < n_inputs(); ++j)
    if (!(norm_min[j] < norm_max[j])) throw std::invalid_argument("ANFIS: normalization min >= max");
  if (!input_names.empty() && input_names.size() != n_inputs())
    throw std::invalid_argument("ANFIS: input name count != n_inputs");
}

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("TrainConfig: learning_rate must be finite and non-negative");
  if (!(min_improvement >= 0.0)) throw std::invalid_argument("TrainConfig: min_improvement must be >= 0");
}

ForwardTrace forward_trace(const AnfisModel& model, std::span<const double> x) {
  ForwardTrace t;
  t.normalized_input = model.normalize(x);
  t.firing = fuzzy::firing_strengths(model.rulebase, t.normalized_input);
  double total = 0.0;
  for (double w : t.firing) total += w;
  const auto& k = simd::active();
  const std::size_t d = model.n_inputs();
  t.normalized_firing.resize(t.firing.size());
  t.rule_outputs.resize(t.firing.size());
  t.consequents.resize(t.firing.size());
  double out = 0.0;
  for (std::size_t r = 0; r < t.firing.size(); ++r) {
    const auto& coef = model.rulebase.rules[r].consequent;
    const double g = k.dot(std::span(coef).first(d), t.normalized_input) + coef[d];
    t.consequents[r] = g;
    t.normalized_firing[r] = t.firing[r] / total;
    t.rule_outputs[r] = t.normalized_firing[r] * g;
    out += t.rule_outputs[r];
  }
  t.output = out;
  return t;
}

double forward(const AnfisModel& model, std::span<const double> x) { return forward_trace(model, x).output; }

int decode_class(double output, int n_classes) {
  if (std::isnan(output)) throw std::runtime_error("ANFIS: output is NaN");
  const double rounded = std::floor(output + 0.5);
  if (rounded <= 1.0) return 1;
  if (rounded >= static_cast<double>(n_classes)) return n_classes;
  return static_cast<int>(rounded);
}

int predict_class(const AnfisModel& model, std::span<const double> x) {
  return decode_class(forward(model, x), model.n_classes);
}

namespace {

void check_dataset(const AnfisModel& model, const Matrix& X, std::span<const double> y) {
  if (X.empty()) throw std::invalid_argument("ANFIS: empty training set");
  if (X.size() != y.size()) throw std::invalid_argument("ANFIS: X rows != y length");
  for (const auto& row : X)
    if (row.size() != model.n_inputs()) throw std::invalid_argument("ANFIS: feature row has wrong width");
}

} // namespace

AnfisModel make_model(const Matrix& X, int n_classes, std::vector<std::string> input_names,
                      std::size_t max_rules) {
  if (X.size() < 2) throw std::invalid_argument("make_model: need at least 2 samples");
  if (n_classes < 1) throw std::invalid_argument("make_model: n_classes must be positive");
  const std::size_t d = X.front().size();
  AnfisModel m;
  m.n_classes = n_classes;
  m.norm_min.assign(d, std::numeric_limits<double>::infinity());
  m.norm_max.assign(d, -std::numeric_limits<double>::infinity());
  for (const auto& row : X) {
    if (row.size() != d) throw std::invalid_argument("make_model: ragged feature rows");
    for (std::size_t j = 0; j < d; ++j) {
      m.norm_min[j] = std::min(m.norm_min[j], row[j]);
      m.norm_max[j] = std::max(m.norm_max[j], row[j]);
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!(m.norm_min[j] < m.norm_max[j])) {
      const std::string name = j < input_names.size() ? input_names[j] : "input " + std::to_string(j);
      throw fuzzy::DegenerateFeatureError(name, "make_model: feature '" + name +
                                                    "' is constant across the training set");
    }
  }

  m.rulebase.n_inputs = d;
  Matrix scaled;
  scaled.reserve(X.size());
  for (const auto& row : X) scaled.push_back(m.normalize(row));
  m.rulebase = fuzzy::init_grid_partition(scaled, input_names);
  if (max_rules > 0) m.rulebase = fuzzy::select_top_rules(m.rulebase, scaled, max_rules);
  m.input_names = std::move(input_names);
  return m;
}

double mse(const AnfisModel& model, const Matrix& X, std::span<const double> y) {
  check_dataset(model, X, y);
  double s = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double e = forward(model, X[i]) - y[i];
    s += e * e;
  }
  return s / static_cast<double>(X.size());
}

AnfisModel lse_consequents(const AnfisModel& model, const Matrix& X, std::span<const double> y, double lambda) {
  check_dataset(model, X, y);
  const std::size_t n = X.size();
  const std::size_t d = model.n_inputs();
  const std::size_t rules = model.rulebase.rules.size();
  const std::size_t p = rules * (d + 1);

  Eigen::MatrixXd A(n, p);
  Eigen::VectorXd target(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = forward_trace(model, X[i]);
    for (std::size_t r = 0; r < rules; ++r) {
      const double wn = t.normalized_firing[r];
      for (std::size_t j = 0; j < d; ++j) A(i, r * (d + 1) + j) = wn * t.normalized_input[j];
      A(i, r * (d + 1) + d) = wn;
    }
    target(i) = y[i];
  }

  // Columns are scaled to unit norm before damping so that lambda acts as a
  // relative ridge; rules that barely fire would otherwise be shrunk to zero.
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j)
    if (!(scale(j) > 0.0)) scale(j) = 1.0;
  A = A * scale.cwiseInverse().asDiagonal();

  // Damped solve of min |A delta - r|^2 + lambda |delta|^2, factorized once.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> damped_solve;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr;
  Eigen::LDLT<Eigen::MatrixXd> ldlt;
  if (n >= p) {
    // Stacked [A; sqrt(lambda) I] keeps the conditioning of A itself.
    Eigen::MatrixXd stacked(n + p, p);
    stacked.topRows(n) = A;
    stacked.bottomRows(p) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(p, p);
    qr.compute(stacked);
    damped_solve = [&](const Eigen::VectorXd& r) {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + p);
      rhs.head(n) = r;
      return Eigen::VectorXd(qr.solve(rhs));
    };
  } else {
    // Dual form: A^T (A A^T + lambda I)^-1 r, an n x n system.
    Eigen::MatrixXd gram = A * A.transpose();
    gram.diagonal().array() += lambda;
    ldlt.compute(gram);
    damped_solve = [&](const Eigen::VectorXd& r) { return Eigen::VectorXd(A.transpose() * ldlt.solve(r)); };
  }

  // Iterated refinement converges to the minimum-norm least-squares solution
  // along every direction the damping does not swamp.
  Eigen::VectorXd phi = damped_solve(target);
  double sse = (target - A * phi).squaredNorm();
  for (int it = 0; it < kLseRefineSteps; ++it) {
    const Eigen::VectorXd next = phi + damped_solve(target - A * phi);
    const double next_sse = (target - A * next).squaredNorm();
    if (!(next_sse < sse)) break;
    phi = next;
    sse = next_sse;
  }
  const Eigen::VectorXd theta = phi.cwiseQuotient(scale);

  AnfisModel out = model;
  for (std::size_t r = 0; r < rules; ++r)
    for (std::size_t j = 0; j <= d; ++j) out.rulebase.rules[r].consequent[j] = theta(r * (d + 1) + j);
  return out;
}

std::vector<double> premise_parameters(const AnfisModel& model) {
  std::vector<double> theta;
  for (const auto& per_input : model.rulebase.mfs)
    for (const auto& mf : per_input) theta.insert(theta.end(), {mf.a, mf.b, mf.c});
  return theta;
}

void set_premise_parameters(AnfisModel& model, std::span<const double> theta) {
  std::size_t k = 0;
  const std::size_t expected = 3 * model.rulebase.n_inputs * model.rulebase.mfs_per_input;
  if (theta.size() != expected) throw std::invalid_argument("set_premise_parameters: wrong parameter count");
  for (auto& per_input : model.rulebase.mfs) {
    for (auto& mf : per_input) {
      mf.a = theta[k++];
      mf.b = theta[k++];
      mf.c = theta[k++];
    }
  }
}

namespace {

struct BellPartials {
  double da = 0.0, db = 0.0, dc = 0.0;
};

BellPartials bell_partials(const fuzzy::BellMF& mf, double x) {
  const double t = (x - mf.c) / mf.a;
  const double at = std::abs(t);
  BellPartials p;
  if (at == 0.0) return p;
  const double u = std::pow(at, 2.0 * mf.b);
  const double mu = 1.0 / (1.0 + u);
  const double mu2 = mu * mu;
  p.da = 2.0 * mf.b * u * mu2 / mf.a;
  p.dc = 2.0 * mf.b * mu2 * (u / at) * (t > 0.0 ? 1.0 : -1.0) / mf.a;
  p.db = -2.0 * std::log(at) * u * mu2;
  return p;
}

} // namespace

std::vector<double> premise_gradient(const AnfisModel& model, const Matrix& X, std::span<const double> y) {
  check_dataset(model, X, y);
  const auto& rb = model.rulebase;
  const std::size_t d = rb.n_inputs;
  const std::size_t nm = rb.mfs_per_input;
  std::vector<double> grad(3 * d * nm, 0.0);
  std::vector<double> mu(d * nm);
  std::vector<double> df_dmu(d * nm);

  for (std::size_t i = 0; i < X.size(); ++i) {
    const auto t = forward_trace(model, X[i]);
    const double err = t.output - y[i];
    double total = 0.0;
    for (double w : t.firing) total += w;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < nm; ++m) mu[j * nm + m] = rb.mfs[j][m](t.normalized_input[j]);

    std::fill(df_dmu.begin(), df_dmu.end(), 0.0);
    for (std::size_t r = 0; r < rb.rules.size(); ++r) {
      const auto& ante = rb.rules[r].antecedent;
      const double df_dw = (t.consequents[r] - t.output) / total;
      for (std::size_t j = 0; j < d; ++j) {
        // dw_r / dmu_j = product of the rule's other memberships.
        double others = 1.0;
        for (std::size_t k = 0; k < d; ++k)
          if (k != j) others *= mu[k * nm + ante[k]];
        df_dmu[j * nm + ante[j]] += df_dw * others;
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t m = 0; m < nm; ++m) {
        const auto p = bell_partials(rb.mfs[j][m], t.normalized_input[j]);
        const double s = 2.0 * err * df_dmu[j * nm + m];
        const std::size_t base = 3 * (j * nm + m);
        grad[base] += s * p.da;
        grad[base + 1] += s * p.db;
        grad[base + 2] += s * p.dc;
      }
    }
  }
  for (double& g : grad) g /= static_cast<double>(X.size());
  return grad;
}

std::vector<double> consequent_gradient(const AnfisModel& model, const Matrix& X, std::span<const double> y) {
  check_dataset(model, X, y);
  const std::size_t d = model.n_inputs();
  const std::size_t rules = model.rulebase.rules.size();
  std::vector<double> grad(rules * (d + 1), 0.0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    const auto t = forward_trace(model, X[i]);
    const double s = 2.0 * (t.output - y[i]);
    for (std::size_t r = 0; r < rules; ++r) {
      const double wn = s * t.normalized_firing[r];
      for (std::size_t j = 0; j < d; ++j) grad[r * (d + 1) + j] += wn * t.normalized_input[j];
      grad[r * (d + 1) + d] += wn;
    }
  }
  for (double& g : grad) g /= static_cast<double>(X.size());
  return grad;
}

TrainResult train(AnfisModel model, const Matrix& X, std::span<const double> y, const TrainConfig& cfg) {
  cfg.validate();
  model.validate();
  check_dataset(model, X, y);
  for (double label : y)
    if (!(label >= 1.0 && label <= static_cast<double>(model.n_classes)))
      throw std::invalid_argument("train: label " + std::to_string(label) + " outside 1.." +
                                  std::to_string(model.n_classes));

  TrainResult result;
  const std::size_t d = model.n_inputs();
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.use_lse) model = lse_consequents(model, X, y);
    const double loss = mse(model, X, y);
    result.loss_history.push_back(loss);
    const auto n = result.loss_history.size();
    if (n >= 2 && result.loss_history[n - 2] - loss < cfg.min_improvement) break;
    if (epoch + 1 == cfg.epochs) break;

    auto theta = premise_parameters(model);
    const auto grad = premise_gradient(model, X, y);
    for (std::size_t k = 0; k < theta.size(); ++k) {
      theta[k] -= cfg.learning_rate * grad[k];
      if (k % 3 != 2) theta[k] = std::max(theta[k], kMinShapeParam); // a and b
    }
    if (!cfg.use_lse) {
      const auto cgrad = consequent_gradient(model, X, y);
      for (std::size_t r = 0; r < model.rulebase.rules.size(); ++r)
        for (std::size_t j = 0; j <= d; ++j)
          model.rulebase.rules[r].consequent[j] -= cfg.learning_rate * cgrad[r * (d + 1) + j];
    }
    set_premise_parameters(model, theta);
  }
  result.model = std::move(model);
  return result;
}

} // namespace texfis::anfis
