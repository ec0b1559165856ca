#include "texfis/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "texfis/simd/kernels.hpp"

namespace texfis::preprocess {

StructuringElement::StructuringElement(std::set<Offset> offsets) : offsets_(std::move(offsets)) {
  if (!offsets_.contains({0, 0}))
    throw std::invalid_argument("StructuringElement: offsets must include the origin");
}

StructuringElement StructuringElement::square(int size) {
  if (size < 1 || size % 2 == 0)
    throw std::invalid_argument("StructuringElement::square: size must be a positive odd number");
  const int r = size / 2;
  std::set<Offset> offs;
  for (int dr = -r; dr <= r; ++dr)
    for (int dc = -r; dc <= r; ++dc) offs.insert({dr, dc});
  return StructuringElement(std::move(offs));
}

StructuringElement StructuringElement::reflected() const {
  std::set<Offset> offs;
  for (auto [dr, dc] : offsets_) offs.insert({-dr, -dc});
  return StructuringElement(std::move(offs));
}

GrayImage equalize_histogram(const GrayImage& img) {
  if (img.empty()) throw std::invalid_argument("equalize_histogram: empty image");
  const auto h = histogram(img);
  const std::uint64_t n = img.size();
  const std::uint64_t top = img.levels() - 1;
  std::vector<std::uint16_t> lut(img.levels());
  std::uint64_t cum = 0;
  for (std::size_t v = 0; v < lut.size(); ++v) {
    cum += h.counts[v];
    // round((L-1) * cum / n), half-up, in exact integer arithmetic
    lut[v] = static_cast<std::uint16_t>((2 * top * cum + n) / (2 * n));
  }
  std::vector<std::uint16_t> out(img.size());
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) out[i] = lut[px[i]];
  return GrayImage(img.width(), img.height(), img.levels(), std::move(out));
}

ThresholdParams mean_threshold(const GrayImage& img) {
  if (img.empty()) throw std::invalid_argument("mean_threshold: empty image");
  const auto px = img.pixels();
  const std::uint64_t sum = std::accumulate(px.begin(), px.end(), std::uint64_t{0});
  return {static_cast<double>(sum) / static_cast<double>(px.size()),
          ThresholdParams::Source::MeanOfIntensities};
}

BinaryImage binarize(const GrayImage& img, double t) {
  // Integer pixels: v >= t  <=>  v >= ceil(t).
  std::uint32_t threshold = 0;
  if (std::isnan(t)) throw std::invalid_argument("binarize: threshold is NaN");
  if (t > 65536.0)
    threshold = 65536;
  else if (t > 0.0)
    threshold = static_cast<std::uint32_t>(std::ceil(t));
  BinaryImage out(img.width(), img.height());
  simd::active().threshold_ge(img.pixels(), threshold, out.mutable_pixels());
  return out;
}

namespace {

// dst(r, c) = src(r + dr, c + dc), zero outside the source bounds.
void shifted_copy(const BinaryImage& src, int dr, int dc, std::span<std::uint8_t> dst) {
  const auto w = static_cast<long>(src.width());
  const auto h = static_cast<long>(src.height());
  const auto px = src.pixels();
  std::fill(dst.begin(), dst.end(), std::uint8_t{0});
  const long c0 = std::max(0L, -static_cast<long>(dc));
  const long c1 = std::min(w, w - dc);
  if (c1 <= c0) return;
  for (long r = 0; r < h; ++r) {
    const long sr = r + dr;
    if (sr < 0 || sr >= h) continue;
    const auto* from = px.data() + sr * w + c0 + dc;
    std::copy(from, from + (c1 - c0), dst.data() + r * w + c0);
  }
}

} // namespace

BinaryImage erode(const BinaryImage& a, const StructuringElement& b) {
  const auto& k = simd::active();
  BinaryImage out(a.width(), a.height(), std::vector<std::uint8_t>(a.size(), 1));
  std::vector<std::uint8_t> scratch(a.size());
  for (auto [dr, dc] : b.offsets()) {
    shifted_copy(a, dr, dc, scratch);
    k.and_inplace(out.mutable_pixels(), scratch);
  }
  return out;
}

BinaryImage dilate(const BinaryImage& a, const StructuringElement& b) {
  const auto& k = simd::active();
  BinaryImage out(a.width(), a.height());
  std::vector<std::uint8_t> scratch(a.size());
  for (auto [dr, dc] : b.offsets()) {
    shifted_copy(a, -dr, -dc, scratch);
    k.or_inplace(out.mutable_pixels(), scratch);
  }
  return out;
}

BinaryImage open(const BinaryImage& a, const StructuringElement& b) { return dilate(erode(a, b), b); }

BinaryImage close(const BinaryImage& a, const StructuringElement& b) {
  int pad = 0;
  for (auto [dr, dc] : b.offsets()) pad = std::max({pad, std::abs(dr), std::abs(dc)});
  const std::size_t p = static_cast<std::size_t>(pad);
  BinaryImage big(a.width() + 2 * p, a.height() + 2 * p);
  for (std::size_t r = 0; r < a.height(); ++r)
    for (std::size_t c = 0; c < a.width(); ++c) big.set(r + p, c + p, a.at(r, c));
  const BinaryImage closed = erode(dilate(big, b), b);
  BinaryImage out(a.width(), a.height());
  for (std::size_t r = 0; r < a.height(); ++r)
    for (std::size_t c = 0; c < a.width(); ++c) out.set(r, c, closed.at(r + p, c + p));
  return out;
}

BinaryImage complement(const BinaryImage& a) {
  std::vector<std::uint8_t> px(a.pixels().begin(), a.pixels().end());
  for (auto& v : px) v ^= 1;
  return BinaryImage(a.width(), a.height(), std::move(px));
}

BinaryImage extract_mask(const GrayImage& img, bool open_then_close, const StructuringElement& element) {
  auto mask = open(binarize(img, mean_threshold(img).t), element);
  if (open_then_close) mask = close(mask, element);
  return mask;
}

} // namespace texfis::preprocess
