#pragma once

#include <set>
#include <utility>

#include "texfis/image.hpp"

namespace texfis::preprocess {

/// Set of (row, col) displacements; always contains the origin.
class StructuringElement {
public:
  using Offset = std::pair<int, int>;

  explicit StructuringElement(std::set<Offset> offsets);

  /// Odd-sided square centered at the origin, e.g. size 3 -> 3x3.
  static StructuringElement square(int size);

  const std::set<Offset>& offsets() const noexcept { return offsets_; }
  StructuringElement reflected() const;

private:
  std::set<Offset> offsets_;
};

struct ThresholdParams {
  enum class Source { MeanOfIntensities, UserSupplied };
  double t = 0.0;
  Source source = Source::UserSupplied;
};

/// Maps v -> round((L-1) * CDF(v)) with round-half-up.
GrayImage equalize_histogram(const GrayImage& img);

ThresholdParams mean_threshold(const GrayImage& img);

/// Foreground iff f(x,y) >= t.
BinaryImage binarize(const GrayImage& img, double t);

/// Out-of-bounds pixels count as background for both operators.
BinaryImage erode(const BinaryImage& a, const StructuringElement& b);
BinaryImage dilate(const BinaryImage& a, const StructuringElement& b);

BinaryImage open(const BinaryImage& a, const StructuringElement& b);
/// Computed on a copy padded by the element radius, so the result always
/// contains `a`.
BinaryImage close(const BinaryImage& a, const StructuringElement& b);

BinaryImage complement(const BinaryImage& a);

/// Mean-threshold binarization followed by opening, and closing when
/// open_then_close is set.
BinaryImage extract_mask(const GrayImage& img, bool open_then_close,
                         const StructuringElement& element);

} // namespace texfis::preprocess
