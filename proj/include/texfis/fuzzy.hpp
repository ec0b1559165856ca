#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace texfis::fuzzy {

/// Generalized bell: mu(x) = 1 / (1 + |(x - c) / a|^(2b)).
struct BellMF {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;

  BellMF() = default;
  BellMF(double a, double b, double c);

  double operator()(double x) const noexcept;
};

double bell_eval(const BellMF& mf, double x) noexcept;

struct Rule {
  std::vector<std::size_t> antecedent; // MF index per input
  std::vector<double> consequent;      // n_inputs linear coefficients, then the constant
};

struct RuleBase {
  std::size_t n_inputs = 0;
  std::size_t mfs_per_input = 0;
  std::vector<std::vector<BellMF>> mfs; // [input][mf]
  std::vector<Rule> rules;

  /// Throws std::invalid_argument when the structure is inconsistent.
  void validate() const;
};

class DegenerateFeatureError : public std::invalid_argument {
public:
  DegenerateFeatureError(std::string feature, const std::string& what)
      : std::invalid_argument(what), feature_(std::move(feature)) {}
  const std::string& feature() const noexcept { return feature_; }

private:
  std::string feature_;
};

/// Two MFs per input ("low" centered at the column minimum, "high" at the
/// maximum; a = half-range, b = 2) and the full Cartesian product of rules
/// with zero consequents. `names` labels columns in error messages.
RuleBase init_grid_partition(std::span<const std::vector<double>> rows,
                             std::span<const std::string> names = {});

/// Product t-norm over each rule's antecedent MFs.
std::vector<double> firing_strengths(const RuleBase& rb, std::span<const double> x);

/// Keeps the `keep` rules with the largest summed firing strength over
/// `rows`; ties keep the lower rule index. Rule order is preserved.
RuleBase select_top_rules(const RuleBase& rb, std::span<const std::vector<double>> rows,
                          std::size_t keep);

} // namespace texfis::fuzzy
