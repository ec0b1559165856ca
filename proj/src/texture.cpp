#include "texfis/texture.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "texfis/simd/kernels.hpp"

namespace texfis::texture {

std::pair<int, int> offset(Direction d) noexcept {
  switch (d) {
  case Direction::Deg0: return {0, 1};
  case Direction::Deg45: return {-1, 1};
  case Direction::Deg90: return {-1, 0};
  case Direction::Deg135: return {-1, -1};
  }
  return {0, 1};
}

std::array<double, kFeatureCount> FeatureVector::values() const noexcept {
  return {contrast, asm_, homogeneity, idm, energy, entropy, variance};
}

FeatureVector FeatureVector::from_values(const std::array<double, kFeatureCount>& v) noexcept {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

Glcm compute_glcm(const GrayImage& img, Direction direction, int distance, std::size_t levels,
                  bool symmetric) {
  if (levels < 2) throw std::invalid_argument("compute_glcm: need at least 2 gray levels");
  if (distance < 1) throw std::invalid_argument("compute_glcm: distance must be positive");
  const GrayImage q =
      img.levels() == levels ? img : quantize(img, static_cast<std::uint32_t>(levels));

  const auto [ur, uc] = offset(direction);
  const long dr = static_cast<long>(ur) * distance;
  const long dc = static_cast<long>(uc) * distance;
  const long h = static_cast<long>(q.height());
  const long w = static_cast<long>(q.width());
  const long r0 = std::max(0L, -dr), r1 = std::min(h, h - dr);
  const long c0 = std::max(0L, -dc), c1 = std::min(w, w - dc);
  if (r1 <= r0 || c1 <= c0)
    throw std::invalid_argument("compute_glcm: image too small for offset (" + std::to_string(dr) +
                                ", " + std::to_string(dc) + ")");

  std::vector<std::uint64_t> counts(levels * levels, 0);
  for (long r = r0; r < r1; ++r) {
    for (long c = c0; c < c1; ++c) {
      const std::size_t a = q.at(r, c);
      const std::size_t b = q.at(r + dr, c + dc);
      ++counts[a * levels + b];
      if (symmetric) ++counts[b * levels + a];
    }
  }
  std::uint64_t total = 0;
  for (auto n : counts) total += n;

  Glcm m;
  m.levels = levels;
  m.direction = direction;
  m.distance = distance;
  m.symmetric = symmetric;
  m.p.resize(counts.size());
  const double inv = 1.0 / static_cast<double>(total);
  for (std::size_t k = 0; k < counts.size(); ++k) m.p[k] = static_cast<double>(counts[k]) * inv;
  return m;
}

FeatureVector glcm_features(const Glcm& m) {
  const std::size_t ng = m.levels;
  if (m.p.size() != ng * ng) throw std::invalid_argument("glcm_features: matrix shape mismatch");
  double sum = 0.0;
  for (double v : m.p) {
    if (!(v >= 0.0)) throw std::invalid_argument("glcm_features: negative or NaN entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("glcm_features: matrix is not normalized (sum = " +
                                std::to_string(sum) + ")");

  // Weight tables turn the difference-based sums into plain dot products.
  std::vector<double> w_contrast(ng * ng), w_hom(ng * ng), w_idm(ng * ng);
  for (std::size_t i = 0; i < ng; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      const double d = std::abs(static_cast<double>(i) - static_cast<double>(j));
      w_contrast[i * ng + j] = d * d;
      w_hom[i * ng + j] = 1.0 / (1.0 + d);
      w_idm[i * ng + j] = 1.0 / (1.0 + d * d);
    }
  }

  const auto& k = simd::active();
  FeatureVector f;
  f.contrast = k.dot(m.p, w_contrast);
  f.asm_ = k.dot(m.p, m.p);
  f.energy = f.asm_;
  f.homogeneity = k.dot(m.p, w_hom);
  f.idm = k.dot(m.p, w_idm);

  double entropy = 0.0;
  for (double v : m.p)
    if (v > 0.0) entropy -= v * std::log2(v);
  f.entropy = entropy;

  std::vector<double> row_marginal(ng, 0.0);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < ng; ++j) row_marginal[i] += m.p[i * ng + j];
  double mu = 0.0;
  for (std::size_t i = 0; i < ng; ++i) mu += static_cast<double>(i) * row_marginal[i];
  double var = 0.0;
  for (std::size_t i = 0; i < ng; ++i) {
    const double d = static_cast<double>(i) - mu;
    var += d * d * row_marginal[i];
  }
  f.variance = var;
  return f;
}

FeatureVector extract_features(const GrayImage& img, std::size_t levels, int distance, bool symmetric) {
  const GrayImage q =
      img.levels() == levels ? img : quantize(img, static_cast<std::uint32_t>(levels));
  std::array<double, kFeatureCount> acc{};
  for (Direction d : kAllDirections) {
    const auto v = glcm_features(compute_glcm(q, d, distance, levels, symmetric)).values();
    for (std::size_t i = 0; i < kFeatureCount; ++i) acc[i] += v[i];
  }
  for (double& v : acc) v /= static_cast<double>(kAllDirections.size());
  return FeatureVector::from_values(acc);
}

const std::string* FeatureTable::find_metadata(std::string_view key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return &v;
  return nullptr;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string header_line() {
  std::string h;
  for (auto name : kFeatureNames) {
    h += name;
    h += ',';
  }
  return h + "label";
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("feature CSV line " + std::to_string(line) + ": bad number '" +
                             std::string(s) + "'");
  return v;
}

} // namespace

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  for (const auto& [k, v] : table.metadata) out << "# " << k << '=' << v << '\n';
  out << header_line() << '\n';
  for (const auto& row : table.rows) {
    for (double v : row.features.values()) out << format_double(v) << ',';
    out << row.label << '\n';
  }
}

FeatureTable read_feature_csv(std::istream& in) {
  FeatureTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen && line[0] == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw std::runtime_error("feature CSV line " + std::to_string(lineno) + ": bad metadata");
      table.metadata.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
      continue;
    }
    if (!header_seen) {
      if (line != header_line())
        throw std::runtime_error("feature CSV: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::array<double, kFeatureCount> v{};
    std::string_view rest(line);
    for (std::size_t i = 0; i <= kFeatureCount; ++i) {
      const auto comma = rest.find(',');
      const bool last = i == kFeatureCount;
      if (last != (comma == std::string_view::npos))
        throw std::runtime_error("feature CSV line " + std::to_string(lineno) +
                                 ": expected 8 columns");
      const auto field = rest.substr(0, comma);
      if (last) {
        FeatureRow row{FeatureVector::from_values(v), 0};
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), row.label);
        if (ec != std::errc{} || ptr != field.data() + field.size())
          throw std::runtime_error("feature CSV line " + std::to_string(lineno) + ": bad label");
        table.rows.push_back(row);
      } else {
        v[i] = parse_double(field, lineno);
        rest.remove_prefix(comma + 1);
      }
    }
  }
  if (!header_seen) throw std::runtime_error("feature CSV: missing header");
  return table;
}

} // namespace texfis::texture
