#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace texfis::eval {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred, int positive_class);

/// Percentages; nullopt where the denominator is zero.
struct Metrics {
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> accuracy;
};

Metrics metrics(const ConfusionCounts& c);

struct ClassReport {
  int label = 0;
  ConfusionCounts counts;
  Metrics metrics;
};

struct MetricsReport {
  std::string method;
  std::string fingerprint;
  std::optional<double> sensitivity; // macro average over classes where defined
  std::optional<double> specificity;
  double accuracy = 0.0; // overall fraction correct, percent
  std::vector<ClassReport> per_class;
  std::vector<std::string> warnings;
};

/// One-vs-rest counts per class with macro-averaged sensitivity and
/// specificity; accuracy is the plain fraction of correct predictions.
MetricsReport multiclass_report(std::span<const int> y_true, std::span<const int> y_pred, int n_classes);

/// Key-value report document.
void write_report(std::ostream& out, const MetricsReport& report);

/// Comparison table: method,sensitivity,specificity,accuracy.
void write_comparison_csv(std::ostream& out, std::span<const MetricsReport> reports);

struct ReportedResult {
  const char* method;
  double sensitivity;
  double specificity;
  double accuracy;
};

/// Published comparison figures, kept for side-by-side display only.
std::span<const ReportedResult> published_results() noexcept;

} // namespace texfis::eval
