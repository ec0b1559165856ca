#include "texfis/evaluate.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace texfis::eval {

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred, int positive_class) {
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("confusion: length mismatch");
  if (y_true.empty()) throw std::invalid_argument("confusion: empty input");
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool actual = y_true[i] == positive_class;
    const bool predicted = y_pred[i] == positive_class;
    if (actual && predicted) ++c.tp;
    else if (!actual && !predicted) ++c.tn;
    else if (predicted) ++c.fp;
    else ++c.fn;
  }
  return c;
}

namespace {

std::optional<double> percent(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den) * 100.0;
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

} // namespace

Metrics metrics(const ConfusionCounts& c) {
  return {percent(c.tp, c.tp + c.fn), percent(c.tn, c.tn + c.fp), percent(c.tp + c.tn, c.total())};
}

MetricsReport multiclass_report(std::span<const int> y_true, std::span<const int> y_pred, int n_classes) {
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("multiclass_report: length mismatch");
  if (y_true.empty()) throw std::invalid_argument("multiclass_report: empty input");
  if (n_classes < 1) throw std::invalid_argument("multiclass_report: n_classes must be positive");
  for (std::size_t i = 0; i < y_true.size(); ++i)
    if (y_true[i] < 1 || y_true[i] > n_classes || y_pred[i] < 1 || y_pred[i] > n_classes)
      throw std::invalid_argument("multiclass_report: label outside 1.." + std::to_string(n_classes));

  MetricsReport rep;
  double sens_sum = 0.0, spec_sum = 0.0;
  int sens_n = 0, spec_n = 0;
  std::uint64_t correct = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) correct += y_true[i] == y_pred[i];
  for (int k = 1; k <= n_classes; ++k) {
    ClassReport cr;
    cr.label = k;
    cr.counts = confusion(y_true, y_pred, k);
    cr.metrics = metrics(cr.counts);
    if (cr.metrics.sensitivity) {
      sens_sum += *cr.metrics.sensitivity;
      ++sens_n;
    } else {
      rep.warnings.push_back("class " + std::to_string(k) + ": sensitivity undefined (no positive cases)");
    }
    if (cr.metrics.specificity) {
      spec_sum += *cr.metrics.specificity;
      ++spec_n;
    } else {
      rep.warnings.push_back("class " + std::to_string(k) + ": specificity undefined (no negative cases)");
    }
    rep.per_class.push_back(cr);
  }
  if (sens_n) rep.sensitivity = sens_sum / sens_n;
  if (spec_n) rep.specificity = spec_sum / spec_n;
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size()) * 100.0;
  return rep;
}

void write_report(std::ostream& out, const MetricsReport& r) {
  out << "method=" << r.method << '\n';
  out << "fingerprint=" << r.fingerprint << '\n';
  out << "sensitivity=" << fmt(r.sensitivity) << '\n';
  out << "specificity=" << fmt(r.specificity) << '\n';
  out << "accuracy=" << fmt(r.accuracy) << '\n';
  for (const auto& c : r.per_class) {
    const std::string p = "class." + std::to_string(c.label) + '.';
    out << p << "tp=" << c.counts.tp << '\n'
        << p << "tn=" << c.counts.tn << '\n'
        << p << "fp=" << c.counts.fp << '\n'
        << p << "fn=" << c.counts.fn << '\n'
        << p << "sensitivity=" << fmt(c.metrics.sensitivity) << '\n'
        << p << "specificity=" << fmt(c.metrics.specificity) << '\n';
  }
  for (std::size_t i = 0; i < r.warnings.size(); ++i) out << "warning." << i << '=' << r.warnings[i] << '\n';
}

void write_comparison_csv(std::ostream& out, std::span<const MetricsReport> reports) {
  out << "method,sensitivity,specificity,accuracy\n";
  for (const auto& r : reports)
    out << r.method << ',' << fmt(r.sensitivity) << ',' << fmt(r.specificity) << ',' << fmt(r.accuracy) << '\n';
}

std::span<const ReportedResult> published_results() noexcept {
  static constexpr std::array<ReportedResult, 8> kRows{{
      {"DWT+SOM", 95.13, 92.2, 94.72},
      {"DWT+PCA+KNN", 96.2, 95.3, 97.2},
      {"Second order+ANN", 91.42, 90.1, 92.22},
      {"Texture Combined+ANN", 95.4, 96.1, 97.22},
      {"Texture Combined+SVM", 97.8, 96.6, 97.9},
      {"FCM", 96.0, 93.3, 86.6},
      {"K-Mean", 80.0, 93.12, 83.3},
      {"ANFIS", 96.6, 95.3, 98.67},
  }};
  return kRows;
}

} // namespace texfis::eval
