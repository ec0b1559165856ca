#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "texfis/pipeline.hpp"

namespace texfis::pipeline {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("config: bad value '" + value + "' for " + key);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean '" + value + "' for " + key);
}

// Field accessors; the map order is the canonical order.
struct Field {
  std::function<std::string(const PipelineConfig&)> get;
  std::function<void(PipelineConfig&, const std::string&, const std::string&)> set;
};

template <typename T>
Field number_field(T PipelineConfig::*member) {
  return {[member](const PipelineConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return fmt_double(c.*member);
            else return std::to_string(c.*member);
          },
          [member](PipelineConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_number<T>(k, v);
          }};
}

template <typename T>
Field train_field(T anfis::TrainConfig::*member) {
  return {[member](const PipelineConfig& c) {
            if constexpr (std::is_same_v<T, bool>) return std::string(c.train.*member ? "true" : "false");
            else if constexpr (std::is_floating_point_v<T>) return fmt_double(c.train.*member);
            else return std::to_string(c.train.*member);
          },
          [member](PipelineConfig& c, const std::string& k, const std::string& v) {
            if constexpr (std::is_same_v<T, bool>) c.train.*member = parse_bool(k, v);
            else c.train.*member = parse_number<T>(k, v);
          }};
}

Field bool_field(bool PipelineConfig::*member) {
  return {[member](const PipelineConfig& c) { return std::string(c.*member ? "true" : "false"); },
          [member](PipelineConfig& c, const std::string& k, const std::string& v) { c.*member = parse_bool(k, v); }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> kFields{
      {"ng", number_field(&PipelineConfig::ng)},
      {"glcm_distance", number_field(&PipelineConfig::glcm_distance)},
      {"symmetric", bool_field(&PipelineConfig::symmetric)},
      {"se_size", number_field(&PipelineConfig::se_size)},
      {"mask_close", bool_field(&PipelineConfig::mask_close)},
      {"epochs", train_field(&anfis::TrainConfig::epochs)},
      {"learning_rate", train_field(&anfis::TrainConfig::learning_rate)},
      {"use_lse", train_field(&anfis::TrainConfig::use_lse)},
      {"min_improvement", train_field(&anfis::TrainConfig::min_improvement)},
      {"max_rules", number_field(&PipelineConfig::max_rules)},
      {"knn_k", number_field(&PipelineConfig::knn_k)},
      {"fcm_centers_per_class", number_field(&PipelineConfig::fcm_centers_per_class)},
      {"fcm_m", number_field(&PipelineConfig::fcm_m)},
      {"fcm_tol", number_field(&PipelineConfig::fcm_tol)},
      {"fcm_max_iter", number_field(&PipelineConfig::fcm_max_iter)},
      {"kmeans_centers_per_class", number_field(&PipelineConfig::kmeans_centers_per_class)},
      {"kmeans_max_iter", number_field(&PipelineConfig::kmeans_max_iter)},
      {"synth_per_class", number_field(&PipelineConfig::synth_per_class)},
      {"synth_size", number_field(&PipelineConfig::synth_size)},
      {"seed", number_field(&PipelineConfig::seed)},
      {"out_dir", {[](const PipelineConfig& c) { return c.out_dir; },
                   [](PipelineConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }}},
  };
  return kFields;
}

} // namespace

void PipelineConfig::validate() const {
  if (ng < 2 || ng > 65536) throw ConfigError("config: ng must be in [2, 65536]");
  if (glcm_distance < 1) throw ConfigError("config: glcm_distance must be >= 1");
  if (se_size < 1 || se_size % 2 == 0) throw ConfigError("config: se_size must be a positive odd number");
  try {
    train.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (knn_k < 1) throw ConfigError("config: knn_k must be >= 1");
  if (fcm_centers_per_class < 1 || kmeans_centers_per_class < 1)
    throw ConfigError("config: centers per class must be >= 1");
  if (!(fcm_m > 1.0)) throw ConfigError("config: fcm_m must be > 1");
  if (!(fcm_tol > 0.0)) throw ConfigError("config: fcm_tol must be > 0");
  if (fcm_max_iter < 1 || kmeans_max_iter < 1) throw ConfigError("config: iteration limits must be >= 1");
  if (synth_per_class < 1) throw ConfigError("config: synth_per_class must be >= 1");
  if (synth_size < 8) throw ConfigError("config: synth_size must be >= 8");
}

std::string PipelineConfig::canonical() const {
  std::string out;
  for (const auto& [key, field] : fields()) {
    if (key == "out_dir") continue;
    out += key + "=" + field.get(*this) + "\n";
  }
  return out;
}

std::string PipelineConfig::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PipelineConfig PipelineConfig::parse(std::istream& in) {
  PipelineConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = fields().find(key);
    if (it == fields().end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second.set(cfg, key, value);
  }
  cfg.train.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  return parse(in);
}

void PipelineConfig::write(std::ostream& out) const {
  for (const auto& [key, field] : fields()) out << key << " = " << field.get(*this) << '\n';
}

} // namespace texfis::pipeline
