#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace texfis {

/// Grayscale raster, row-major with the origin at the top-left pixel.
/// Every pixel lies in [0, levels-1].
class GrayImage {
public:
  GrayImage() = default;
  GrayImage(std::size_t width, std::size_t height, std::uint32_t levels = 256);
  GrayImage(std::size_t width, std::size_t height, std::uint32_t levels,
            std::vector<std::uint16_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::uint32_t levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint16_t at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
  void set(std::size_t row, std::size_t col, std::uint16_t v);

  std::span<const std::uint16_t> pixels() const noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::uint32_t levels_ = 256;
  std::vector<std::uint16_t> pixels_;
};

/// Two-valued raster; pixels are 0 (background) or 1 (foreground).
class BinaryImage {
public:
  BinaryImage() = default;
  BinaryImage(std::size_t width, std::size_t height);
  BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
  void set(std::size_t row, std::size_t col, bool on) { pixels_[row * width_ + col] = on ? 1 : 0; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> mutable_pixels() noexcept { return pixels_; }

  std::size_t count() const noexcept;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

struct Histogram {
  std::vector<std::uint64_t> counts;
};

class PgmError : public std::runtime_error {
public:
  enum class Kind { Io, MalformedHeader, MalformedPayload, ValueOutOfRange, TruncatedPayload };

  PgmError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

enum class PgmEncoding { Ascii, Binary };

GrayImage load_pgm(const std::filesystem::path& path);
GrayImage parse_pgm(std::string_view bytes);
void save_pgm(const GrayImage& img, const std::filesystem::path& path,
              PgmEncoding encoding = PgmEncoding::Binary);
std::string encode_pgm(const GrayImage& img, PgmEncoding encoding = PgmEncoding::Binary);

Histogram histogram(const GrayImage& img);

/// Uniform floor binning: v -> min(floor(v * new_levels / L), new_levels - 1).
GrayImage quantize(const GrayImage& img, std::uint32_t new_levels);

} // namespace texfis
