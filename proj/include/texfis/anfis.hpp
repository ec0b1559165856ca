#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "texfis/fuzzy.hpp"

namespace texfis::anfis {

using Matrix = std::vector<std::vector<double>>; // row per sample

/// First-order Takagi-Sugeno network. Inputs are min/max scaled to [0,1]
/// with the training-time ranges before both premise and consequent layers.
struct AnfisModel {
  fuzzy::RuleBase rulebase;
  int n_classes = 1;
  std::vector<double> norm_min;
  std::vector<double> norm_max;
  std::vector<std::string> input_names;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t n_inputs() const noexcept { return rulebase.n_inputs; }
  std::vector<double> normalize(std::span<const double> x) const;
  void validate() const;
};

struct TrainConfig {
  int epochs = 100;
  double learning_rate = 0.01;
  bool use_lse = true;
  std::uint64_t seed = 0;
  double min_improvement = 1e-7;

  void validate() const;
};

inline constexpr double kRidgeLambda = 1e-8;
/// Upper bound on refinement passes of the damped least-squares solve.
inline constexpr int kLseRefineSteps = 200;
inline constexpr double kMinShapeParam = 1e-6;

/// Layer outputs for one input.
struct ForwardTrace {
  std::vector<double> normalized_input;
  std::vector<double> firing;            // layer 2
  std::vector<double> normalized_firing; // layer 3
  std::vector<double> consequents;       // per-rule linear output before weighting
  std::vector<double> rule_outputs;      // layer 4
  double output = 0.0;                   // layer 5
};

ForwardTrace forward_trace(const AnfisModel& model, std::span<const double> x);
double forward(const AnfisModel& model, std::span<const double> x);

/// clamp(round-half-up(forward(x)), 1, n_classes)
int predict_class(const AnfisModel& model, std::span<const double> x);
int decode_class(double output, int n_classes);

/// Normalization ranges from X, a two-MF grid partition on the scaled data,
/// and (when max_rules > 0) the max_rules strongest rules over X.
AnfisModel make_model(const Matrix& X, int n_classes, std::vector<std::string> input_names = {},
                      std::size_t max_rules = 0);

double mse(const AnfisModel& model, const Matrix& X, std::span<const double> y);

/// Least-squares consequents with premises held fixed. The design columns are
/// scaled to unit norm, solved with ridge damping `lambda`, then refined
/// against the residual until the squared error stops falling; the result
/// approaches the minimum-norm least-squares solution.
AnfisModel lse_consequents(const AnfisModel& model, const Matrix& X, std::span<const double> y,
                           double lambda = kRidgeLambda);

/// Premise parameters flattened as (a, b, c) per MF, input-major.
std::vector<double> premise_parameters(const AnfisModel& model);
void set_premise_parameters(AnfisModel& model, std::span<const double> theta);

/// Analytic d(MSE)/d(premise parameters), same layout as premise_parameters.
std::vector<double> premise_gradient(const AnfisModel& model, const Matrix& X, std::span<const double> y);

/// d(MSE)/d(consequents), rule-major, n_inputs+1 entries per rule.
std::vector<double> consequent_gradient(const AnfisModel& model, const Matrix& X, std::span<const double> y);

struct TrainResult {
  AnfisModel model;
  std::vector<double> loss_history;
};

/// Hybrid training. Each epoch: least-squares consequents (if use_lse),
/// record the MSE, then one gradient step on the premises (and on the
/// consequents when use_lse is off).
TrainResult train(AnfisModel model, const Matrix& X, std::span<const double> y, const TrainConfig& cfg);

class ModelFormatError : public std::runtime_error {
public:
  enum class Kind { Io, Version, Corrupt };
  ModelFormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

inline constexpr const char* kModelMagic = "ANFIS/1";

void write_model(std::ostream& out, const AnfisModel& model);
AnfisModel read_model(std::istream& in);
void save_model(const AnfisModel& model, const std::filesystem::path& path);
AnfisModel load_model(const std::filesystem::path& path);

} // namespace texfis::anfis
