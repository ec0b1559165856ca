#include "texfis/image.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

namespace texfis {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::uint32_t levels)
    : GrayImage(width, height, levels, std::vector<std::uint16_t>(width * height, 0)) {}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::uint32_t levels,
                     std::vector<std::uint16_t> pixels)
    : width_(width), height_(height), levels_(levels), pixels_(std::move(pixels)) {
  if (levels_ == 0 || levels_ > 65536)
    throw std::invalid_argument("GrayImage: level count must be in [1, 65536]");
  if (pixels_.size() != width_ * height_)
    throw std::invalid_argument("GrayImage: pixel count does not match width x height");
  for (auto v : pixels_)
    if (v >= levels_)
      throw std::invalid_argument("GrayImage: pixel value " + std::to_string(v) +
                                  " outside [0, " + std::to_string(levels_ - 1) + "]");
}

void GrayImage::set(std::size_t row, std::size_t col, std::uint16_t v) {
  if (v >= levels_) throw std::invalid_argument("GrayImage::set: value exceeds level count");
  pixels_[row * width_ + col] = v;
}

BinaryImage::BinaryImage(std::size_t width, std::size_t height)
    : width_(width), height_(height), pixels_(width * height, 0) {}

BinaryImage::BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width_ * height_)
    throw std::invalid_argument("BinaryImage: pixel count does not match width x height");
  for (auto v : pixels_)
    if (v > 1) throw std::invalid_argument("BinaryImage: pixel values must be 0 or 1");
}

std::size_t BinaryImage::count() const noexcept {
  return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

namespace {

class HeaderReader {
public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns false at end of input; throws on a token that is not an unsigned integer.
  bool next_uint(std::uint64_t& out, PgmError::Kind bad_kind, const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return false;
    const char* first = bytes_.data() + pos_;
    const char* last = bytes_.data() + bytes_.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} ||
        (ptr != last && !std::isspace(static_cast<unsigned char>(*ptr)) && *ptr != '#'))
      throw PgmError(bad_kind, std::string("PGM: invalid ") + what);
    pos_ += static_cast<std::size_t>(ptr - first);
    return true;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

} // namespace

GrayImage parse_pgm(std::string_view bytes) {
  using Kind = PgmError::Kind;
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw PgmError(Kind::MalformedHeader, "PGM: missing P2/P5 magic");
  const bool ascii = bytes[1] == '2';
  if (bytes.size() > 2 && !std::isspace(static_cast<unsigned char>(bytes[2])) && bytes[2] != '#')
    throw PgmError(Kind::MalformedHeader, "PGM: magic not followed by whitespace");

  HeaderReader reader(bytes);
  reader.advance(2);
  std::uint64_t width = 0, height = 0, maxval = 0;
  if (!reader.next_uint(width, Kind::MalformedHeader, "width") ||
      !reader.next_uint(height, Kind::MalformedHeader, "height") ||
      !reader.next_uint(maxval, Kind::MalformedHeader, "maxval"))
    throw PgmError(Kind::MalformedHeader, "PGM: incomplete header");
  if (width == 0 || height == 0)
    throw PgmError(Kind::MalformedHeader, "PGM: zero image dimension");
  if (maxval == 0 || maxval > 65535)
    throw PgmError(Kind::MalformedHeader, "PGM: maxval must be in [1, 65535]");
  if (width > (1u << 20) || height > (1u << 20))
    throw PgmError(Kind::MalformedHeader, "PGM: image dimensions too large");

  const std::size_t n = static_cast<std::size_t>(width * height);
  std::vector<std::uint16_t> pixels(n);

  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t v = 0;
      if (!reader.next_uint(v, Kind::MalformedPayload, "pixel value"))
        throw PgmError(Kind::TruncatedPayload, "PGM: payload holds " + std::to_string(i) +
                                                   " of " + std::to_string(n) + " pixels");
      if (v > maxval)
        throw PgmError(Kind::ValueOutOfRange, "PGM: pixel value " + std::to_string(v) +
                                                  " exceeds maxval " + std::to_string(maxval));
      pixels[i] = static_cast<std::uint16_t>(v);
    }
  } else {
    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t pos = reader.pos();
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
      throw PgmError(Kind::TruncatedPayload, "PGM: missing raster");
    ++pos;
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (bytes.size() - pos < n * bpp)
      throw PgmError(Kind::TruncatedPayload, "PGM: payload holds " +
                                                 std::to_string((bytes.size() - pos) / bpp) +
                                                 " of " + std::to_string(n) + " pixels");
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + pos);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t v =
          bpp == 2 ? (std::uint32_t{raw[2 * i]} << 8) | raw[2 * i + 1] : std::uint32_t{raw[i]};
      if (v > maxval)
        throw PgmError(Kind::ValueOutOfRange, "PGM: pixel value " + std::to_string(v) +
                                                  " exceeds maxval " + std::to_string(maxval));
      pixels[i] = static_cast<std::uint16_t>(v);
    }
  }
  return GrayImage(width, height, static_cast<std::uint32_t>(maxval + 1), std::move(pixels));
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError(PgmError::Kind::Io, "PGM: cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw PgmError(PgmError::Kind::Io, "PGM: read failed for " + path.string());
  return parse_pgm(bytes);
}

std::string encode_pgm(const GrayImage& img, PgmEncoding encoding) {
  if (img.levels() < 2) throw std::invalid_argument("PGM: cannot encode an image with L < 2");
  const std::uint32_t maxval = img.levels() - 1;
  std::string out;
  out += encoding == PgmEncoding::Ascii ? "P2\n" : "P5\n";
  out += std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
         std::to_string(maxval) + "\n";
  const auto px = img.pixels();
  if (encoding == PgmEncoding::Ascii) {
    for (std::size_t r = 0; r < img.height(); ++r) {
      for (std::size_t c = 0; c < img.width(); ++c) {
        if (c) out += ' ';
        out += std::to_string(px[r * img.width() + c]);
      }
      out += '\n';
    }
  } else if (maxval > 255) {
    out.reserve(out.size() + 2 * px.size());
    for (auto v : px) {
      out += static_cast<char>(v >> 8);
      out += static_cast<char>(v & 0xff);
    }
  } else {
    out.reserve(out.size() + px.size());
    for (auto v : px) out += static_cast<char>(v);
  }
  return out;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path, PgmEncoding encoding) {
  const std::string bytes = encode_pgm(img, encoding);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PgmError(PgmError::Kind::Io, "PGM: cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw PgmError(PgmError::Kind::Io, "PGM: write failed for " + path.string());
}

Histogram histogram(const GrayImage& img) {
  Histogram h;
  h.counts.assign(img.levels(), 0);
  for (auto v : img.pixels()) ++h.counts[v];
  return h;
}

GrayImage quantize(const GrayImage& img, std::uint32_t new_levels) {
  if (new_levels < 2) throw std::invalid_argument("quantize: new_levels must be >= 2");
  if (new_levels > 65536) throw std::invalid_argument("quantize: new_levels must be <= 65536");
  const std::uint64_t L = img.levels();
  std::vector<std::uint16_t> lut(L);
  for (std::uint64_t v = 0; v < L; ++v)
    lut[v] = static_cast<std::uint16_t>(std::min<std::uint64_t>(v * new_levels / L, new_levels - 1));
  std::vector<std::uint16_t> out(img.size());
  std::transform(img.pixels().begin(), img.pixels().end(), out.begin(),
                 [&](std::uint16_t v) { return lut[v]; });
  return GrayImage(img.width(), img.height(), new_levels, std::move(out));
}

} // namespace texfis
