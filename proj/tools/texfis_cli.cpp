// texfis: texture features, neuro-fuzzy classification, and evaluation.

#include <CLI11.hpp>
#include <iostream>

#include "texfis/pipeline.hpp"
#include "texfis/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace texfis::pipeline;

namespace {

int report(const CommandResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& e : r.errors) std::cerr << "error: " << e << '\n';
  for (const auto& p : r.outputs) std::cout << p.string() << '\n';
  return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Texture-feature neuro-fuzzy image classifier"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string manifest;
  std::string features;
  std::string model;
  std::string image;
  std::string methods = "anfis,fcm,knn,kmeans";
  bool allow_mismatch = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Key-value config file");
    sub->add_option("--seed", seed, "Override the config seed");
  };

  auto* synth = app.add_subcommand("synth", "Generate the synthetic 4-class texture corpus and its manifest");
  add_common(synth);
  synth->add_option("--out", out, "Output directory")->required();

  auto* feat = app.add_subcommand("features", "Equalize each manifest image and write the GLCM feature table");
  add_common(feat);
  feat->add_option("--manifest", manifest, "Manifest CSV (path,label,split)")->required()->check(CLI::ExistingFile);
  feat->add_option("--out", out, "Feature CSV to write")->required();

  auto* train = app.add_subcommand("train", "Train the ANFIS classifier on the train split");
  add_common(train);
  train->add_option("--features", features, "Feature CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--manifest", manifest, "Manifest CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--out", out, "Output directory for model.anfis and loss_history.csv")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Score ANFIS and baselines on the test split");
  add_common(evaluate);
  evaluate->add_option("--features", features, "Feature CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--manifest", manifest, "Manifest CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--model", model, "ANFIS/1 model file");
  evaluate->add_option("--methods", methods, "Comma list of anfis,fcm,knn,kmeans");
  evaluate->add_flag("--allow-fingerprint-mismatch", allow_mismatch,
                     "Evaluate even if the model was trained on a different feature table");
  evaluate->add_option("--out", out, "Output directory for reports")->required();

  auto* segment = app.add_subcommand("segment", "Threshold + morphology mask for one image");
  add_common(segment);
  segment->add_option("--image", image, "Input PGM")->required()->check(CLI::ExistingFile);
  segment->add_option("--out", out, "Output directory")->required();

  auto* info = app.add_subcommand("info", "Print the active SIMD kernel set and the effective config");
  add_common(info);

  CLI11_PARSE(app, argc, argv);

  PipelineConfig cfg;
  try {
    if (!config_path.empty()) cfg = PipelineConfig::load(config_path);
    if (seed) cfg.seed = *seed;
    cfg.train.seed = cfg.seed;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (*synth) return report(cmd_synth(cfg, out));
  if (*feat) return report(cmd_features(manifest, cfg, out));
  if (*train) return report(cmd_train(features, manifest, cfg, out));
  if (*evaluate) {
    EvaluateOptions opts;
    try {
      opts.methods = parse_methods(methods);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    opts.allow_fingerprint_mismatch = allow_mismatch;
    const bool needs_model = std::find(opts.methods.begin(), opts.methods.end(), Method::Anfis) != opts.methods.end();
    if (needs_model && model.empty()) {
      std::cerr << "error: --model is required when evaluating anfis\n";
      return 2;
    }
    return report(cmd_evaluate(features, manifest, model, cfg, out, opts));
  }
  if (*segment) return report(cmd_segment(image, cfg, out));
  if (*info) {
    std::cout << "simd=" << texfis::simd::isa_name(texfis::simd::active().isa) << '\n'
              << "fingerprint=" << cfg.fingerprint() << '\n';
    cfg.write(std::cout);
    return 0;
  }
  return 0;
}
