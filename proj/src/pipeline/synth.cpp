#include <algorithm>
#include <array>
#include <fstream>
#include <random>

#include "texfis/pipeline.hpp"

namespace texfis::pipeline {

GrayImage synth_texture(int label, std::size_t size, std::uint64_t seed) {
  if (label < 1 || label > kSynthClasses) throw std::invalid_argument("synth_texture: label must be in 1..4");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> jitter(-30, 30);
  std::uniform_int_distribution<int> level(0, 255);
  std::vector<int> raw(size * size);

  switch (label) {
  case 1:
  case 2: {
    const std::size_t cell = label == 1 ? 1 : 4;
    std::uniform_int_distribution<std::size_t> phase(0, 2 * cell - 1);
    const std::size_t pr = phase(rng), pc = phase(rng);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) {
        const bool on = (((r + pr) / cell) + ((c + pc) / cell)) % 2 == 1;
        raw[r * size + c] = (on ? 192 : 64) + jitter(rng);
      }
    break;
  }
  case 3: {
    // 3x3 box-smoothed white noise (toroidal borders).
    std::vector<int> white(size * size);
    for (auto& v : white) v = level(rng);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) {
        int sum = 0;
        for (std::size_t dr = 0; dr < 3; ++dr)
          for (std::size_t dc = 0; dc < 3; ++dc)
            sum += white[((r + size + dr - 1) % size) * size + (c + size + dc - 1) % size];
        raw[r * size + c] = sum / 9;
      }
    break;
  }
  default:
    for (auto& v : raw) v = level(rng);
    break;
  }

  std::vector<std::uint16_t> px(raw.size());
  std::transform(raw.begin(), raw.end(), px.begin(),
                 [](int v) { return static_cast<std::uint16_t>(std::clamp(v, 0, 255)); });
  return GrayImage(size, size, 256, std::move(px));
}

CommandResult cmd_synth(const PipelineConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  CommandResult res;
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (ec) {
    res.exit_code = 1;
    res.errors.push_back("synth: cannot create " + (out_dir / "images").string() + ": " + ec.message());
    return res;
  }

  Manifest manifest;
  manifest.n_classes = kSynthClasses;
  for (Split split : {Split::Train, Split::Test}) {
    const char* tag = split == Split::Train ? "train" : "test";
    for (int label = 1; label <= kSynthClasses; ++label) {
      for (std::size_t i = 0; i < cfg.synth_per_class; ++i) {
        std::seed_seq seq{cfg.seed, std::uint64_t(split == Split::Train ? 0 : 1), std::uint64_t(label),
                          std::uint64_t(i)};
        std::array<std::uint32_t, 2> words{};
        seq.generate(words.begin(), words.end());
        const std::uint64_t image_seed = (std::uint64_t{words[0]} << 32) | words[1];
        const std::string name = std::string(tag) + "_c" + std::to_string(label) + "_" + std::to_string(i) + ".pgm";
        const fs::path path = out_dir / "images" / name;
        try {
          save_pgm(synth_texture(label, cfg.synth_size, image_seed), path);
        } catch (const std::exception& e) {
          res.exit_code = 1;
          res.errors.push_back(e.what());
          return res;
        }
        ManifestEntry e;
        e.raw_path = "images/" + name;
        e.path = path;
        e.label = label;
        e.split = split;
        manifest.entries.push_back(std::move(e));
      }
    }
  }

  const fs::path manifest_path = out_dir / "manifest.csv";
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) {
    res.exit_code = 1;
    res.errors.push_back("synth: cannot write " + manifest_path.string());
    return res;
  }
  manifest.write(out);
  res.outputs.push_back(manifest_path);
  return res;
}

} // namespace texfis::pipeline
