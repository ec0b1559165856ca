#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "texfis/baselines.hpp"
#include "texfis/pipeline.hpp"
#include "texfis/preprocess.hpp"
#include "texfis/texture.hpp"

namespace texfis::pipeline {
namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

CommandResult failure(std::string message) {
  CommandResult r;
  r.exit_code = 1;
  r.errors.push_back(std::move(message));
  return r;
}

std::vector<std::string> feature_names() {
  return {texture::kFeatureNames.begin(), texture::kFeatureNames.end()};
}

std::vector<double> as_vector(const texture::FeatureVector& f) {
  const auto v = f.values();
  return {v.begin(), v.end()};
}

struct SplitData {
  baselines::LabeledDataset train;
  baselines::LabeledDataset test;
};

// Pairs feature-table rows with manifest entries; rows follow manifest order.
SplitData split_rows(const texture::FeatureTable& table, const Manifest& manifest) {
  if (table.rows.size() != manifest.entries.size())
    throw std::runtime_error("feature table has " + std::to_string(table.rows.size()) + " rows but manifest has " +
                             std::to_string(manifest.entries.size()) + " entries");
  SplitData s;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& e = manifest.entries[i];
    if (table.rows[i].label != e.label)
      throw std::runtime_error("feature row " + std::to_string(i + 1) + " label " +
                               std::to_string(table.rows[i].label) + " disagrees with manifest entry " + e.raw_path);
    auto& ds = e.split == Split::Train ? s.train : s.test;
    ds.x.push_back(as_vector(table.rows[i].features));
    ds.y.push_back(e.label);
    ds.ids.push_back(e.raw_path);
  }
  return s;
}

texture::FeatureTable read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature table " + path.string());
  return texture::read_feature_csv(in);
}

std::string metadata_value(const std::vector<std::pair<std::string, std::string>>& meta, std::string_view key) {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return {};
}

} // namespace

CommandResult cmd_features(const fs::path& manifest_path, const PipelineConfig& cfg, const fs::path& out_csv) {
  Manifest manifest;
  try {
    cfg.validate();
    manifest = Manifest::load(manifest_path);
  } catch (const std::exception& e) {
    return failure(e.what());
  }

  const std::size_t n = manifest.entries.size();
  std::vector<std::optional<texture::FeatureVector>> features(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const auto& entry = manifest.entries[i];
      try {
        const GrayImage img = preprocess::equalize_histogram(load_pgm(entry.path));
        features[i] = texture::extract_features(img, cfg.ng, cfg.glcm_distance, cfg.symmetric);
      } catch (const std::exception& e) {
        errors[i] = entry.path.string() + ": " + e.what();
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::min(n_threads, n); ++t) pool.emplace_back(worker);
    worker();
  }

  CommandResult res;
  for (const auto& e : errors)
    if (!e.empty()) res.errors.push_back(e);
  if (!res.errors.empty()) {
    res.exit_code = 1;
    return res;
  }

  texture::FeatureTable table;
  table.metadata = {{"fingerprint", cfg.fingerprint()},
                    {"ng", std::to_string(cfg.ng)},
                    {"glcm_distance", std::to_string(cfg.glcm_distance)},
                    {"symmetric", cfg.symmetric ? "true" : "false"},
                    {"preprocess", "equalize_histogram"},
                    {"directions", "0,45,90,135 (mean)"}};
  for (std::size_t i = 0; i < n; ++i) table.rows.push_back({*features[i], manifest.entries[i].label});

  if (out_csv.has_parent_path()) fs::create_directories(out_csv.parent_path());
  std::ofstream out(out_csv, std::ios::trunc);
  if (!out) return failure("cannot write " + out_csv.string());
  texture::write_feature_csv(out, table);
  if (!out) return failure("write failed for " + out_csv.string());
  res.outputs.push_back(out_csv);
  return res;
}

CommandResult cmd_train(const fs::path& features_csv, const fs::path& manifest_path, const PipelineConfig& cfg,
                        const fs::path& out_dir) {
  CommandResult res;
  try {
    cfg.validate();
    const auto table = read_table(features_csv);
    const auto manifest = Manifest::load(manifest_path);
    const auto data = split_rows(table, manifest);
    if (data.train.x.empty()) return failure("train: the train split is empty");

    anfis::TrainConfig tc = cfg.train;
    tc.seed = cfg.seed;
    std::vector<double> y(data.train.y.begin(), data.train.y.end());
    auto model = anfis::make_model(data.train.x, manifest.n_classes, feature_names(), cfg.max_rules);
    auto trained = anfis::train(std::move(model), data.train.x, y, tc);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.train.x.size(); ++i)
      correct += anfis::predict_class(trained.model, data.train.x[i]) == data.train.y[i];
    const double train_acc = 100.0 * static_cast<double>(correct) / static_cast<double>(data.train.x.size());

    auto& m = trained.model;
    m.metadata = {{"fingerprint", cfg.fingerprint()},
                  {"features_fingerprint", metadata_value(table.metadata, "fingerprint")},
                  {"epochs", std::to_string(tc.epochs)},
                  {"learning_rate", fmt(tc.learning_rate)},
                  {"use_lse", tc.use_lse ? "true" : "false"},
                  {"min_improvement", fmt(tc.min_improvement)},
                  {"seed", std::to_string(tc.seed)},
                  {"max_rules", std::to_string(cfg.max_rules)},
                  {"epochs_run", std::to_string(trained.loss_history.size())},
                  {"final_mse", fmt(trained.loss_history.back())},
                  {"train_accuracy", fmt(train_acc)}};

    fs::create_directories(out_dir);
    const fs::path model_path = out_dir / "model.anfis";
    anfis::save_model(m, model_path);
    const fs::path loss_path = out_dir / "loss_history.csv";
    std::ofstream loss(loss_path, std::ios::trunc);
    if (!loss) return failure("cannot write " + loss_path.string());
    loss << "# fingerprint=" << cfg.fingerprint() << '\n' << "epoch,mse\n";
    for (std::size_t e = 0; e < trained.loss_history.size(); ++e)
      loss << e + 1 << ',' << fmt(trained.loss_history[e]) << '\n';
    res.outputs = {model_path, loss_path};
  } catch (const fuzzy::DegenerateFeatureError& e) {
    return failure("train: degenerate feature '" + e.feature() + "': " + e.what());
  } catch (const std::exception& e) {
    return failure(std::string("train: ") + e.what());
  }
  return res;
}

std::string method_name(Method m) {
  switch (m) {
  case Method::Anfis: return "anfis";
  case Method::Fcm: return "fcm";
  case Method::Knn: return "knn";
  case Method::KMeans: return "kmeans";
  }
  return "unknown";
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Method m;
    if (tok == "anfis") m = Method::Anfis;
    else if (tok == "fcm") m = Method::Fcm;
    else if (tok == "knn") m = Method::Knn;
    else if (tok == "kmeans") m = Method::KMeans;
    else throw std::invalid_argument("unknown method '" + tok + "' (expected anfis, fcm, knn, kmeans)");
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw std::invalid_argument("no methods selected");
  return out;
}

CommandResult cmd_evaluate(const fs::path& features_csv, const fs::path& manifest_path, const fs::path& model_path,
                           const PipelineConfig& cfg, const fs::path& out_dir, const EvaluateOptions& opts) {
  CommandResult res;
  try {
    cfg.validate();
    const auto table = read_table(features_csv);
    const auto manifest = Manifest::load(manifest_path);
    const auto data = split_rows(table, manifest);
    if (data.test.x.empty()) return failure("evaluate: the test split is empty");
    const int k_classes = manifest.n_classes;

    std::optional<anfis::AnfisModel> model;
    if (std::find(opts.methods.begin(), opts.methods.end(), Method::Anfis) != opts.methods.end()) {
      model = anfis::load_model(model_path);
      if (model->n_inputs() != texture::kFeatureCount)
        return failure("evaluate: model expects " + std::to_string(model->n_inputs()) + " inputs, features have " +
                       std::to_string(texture::kFeatureCount));
      const std::string trained_on = metadata_value(model->metadata, "features_fingerprint");
      const std::string features_fp = metadata_value(table.metadata, "fingerprint");
      if (trained_on != features_fp) {
        const std::string msg = "model was trained on features with fingerprint '" + trained_on +
                                "' but the feature table has '" + features_fp + "'";
        if (!opts.allow_fingerprint_mismatch) return failure("evaluate: " + msg);
        res.warnings.push_back(msg);
      }
    }
    if (!data.train.x.empty()) data.train.validate(k_classes);

    std::vector<eval::MetricsReport> reports;
    for (Method method : opts.methods) {
      std::vector<int> pred;
      pred.reserve(data.test.x.size());
      if (method == Method::Anfis) {
        for (const auto& x : data.test.x) pred.push_back(anfis::predict_class(*model, x));
      } else {
        if (data.train.x.empty()) return failure("evaluate: baselines need a non-empty train split");
        if (method == Method::Knn) {
          const auto knn = baselines::KnnClassifier::fit(data.train, std::min(cfg.knn_k, data.train.x.size()));
          for (const auto& x : data.test.x) pred.push_back(knn.predict(x));
        } else {
          baselines::CenterClassifier::Params p;
          p.clustering =
              method == Method::Fcm ? baselines::CenterClassifier::Clustering::Fcm : baselines::CenterClassifier::Clustering::KMeans;
          p.centers_per_class = method == Method::Fcm ? cfg.fcm_centers_per_class : cfg.kmeans_centers_per_class;
          p.fcm = {cfg.fcm_m, cfg.fcm_tol, cfg.fcm_max_iter, cfg.seed};
          p.kmeans.max_iter = cfg.kmeans_max_iter;
          p.kmeans.seed = cfg.seed;
          const auto cc = baselines::CenterClassifier::fit(data.train, p);
          for (const auto& x : data.test.x) pred.push_back(cc.predict(x));
        }
      }
      auto rep = eval::multiclass_report(data.test.y, pred, k_classes);
      rep.method = method_name(method);
      rep.fingerprint = cfg.fingerprint();
      reports.push_back(std::move(rep));
    }

    fs::create_directories(out_dir);
    for (const auto& rep : reports) {
      const fs::path p = out_dir / ("report_" + rep.method + ".txt");
      std::ofstream out(p, std::ios::trunc);
      if (!out) return failure("cannot write " + p.string());
      eval::write_report(out, rep);
      res.outputs.push_back(p);
      for (const auto& w : rep.warnings) res.warnings.push_back(rep.method + ": " + w);
    }
    const fs::path cmp = out_dir / "comparison.csv";
    {
      std::ofstream out(cmp, std::ios::trunc);
      if (!out) return failure("cannot write " + cmp.string());
      eval::write_comparison_csv(out, reports);
    }
    res.outputs.push_back(cmp);
    const fs::path published = out_dir / "published_results.csv";
    {
      std::ofstream out(published, std::ios::trunc);
      if (!out) return failure("cannot write " + published.string());
      out << "method,sensitivity,specificity,accuracy\n";
      for (const auto& r : eval::published_results())
        out << r.method << ',' << fmt(r.sensitivity) << ',' << fmt(r.specificity) << ',' << fmt(r.accuracy) << '\n';
    }
    res.outputs.push_back(published);
    const fs::path chart = out_dir / "comparison_chart.pgm";
    save_pgm(render_bar_chart(reports), chart);
    res.outputs.push_back(chart);
  } catch (const std::exception& e) {
    return failure(std::string("evaluate: ") + e.what());
  }
  return res;
}

CommandResult cmd_segment(const fs::path& image_path, const PipelineConfig& cfg, const fs::path& out_dir) {
  CommandResult res;
  try {
    cfg.validate();
    const GrayImage img = load_pgm(image_path);
    const auto element = preprocess::StructuringElement::square(cfg.se_size);
    const BinaryImage mask = preprocess::extract_mask(img, cfg.mask_close, element);
    if (mask.count() == mask.size())
      res.warnings.push_back("segment: mask covers the whole image (no contrast to separate)");
    else if (mask.count() == 0)
      res.warnings.push_back("segment: mask is empty");

    std::vector<std::uint16_t> mask_px(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) mask_px[i] = mask.pixels()[i] ? 255 : 0;

    const BinaryImage inner = preprocess::erode(mask, preprocess::StructuringElement::square(3));
    std::vector<std::uint16_t> overlay(img.pixels().begin(), img.pixels().end());
    const auto top = static_cast<std::uint16_t>(img.levels() - 1);
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask.pixels()[i] && !inner.pixels()[i]) overlay[i] = top;

    fs::create_directories(out_dir);
    const std::string stem = image_path.stem().string();
    const fs::path mask_path = out_dir / (stem + "_mask.pgm");
    const fs::path overlay_path = out_dir / (stem + "_overlay.pgm");
    save_pgm(GrayImage(img.width(), img.height(), 256, std::move(mask_px)), mask_path);
    save_pgm(GrayImage(img.width(), img.height(), img.levels(), std::move(overlay)), overlay_path);
    res.outputs = {mask_path, overlay_path};
  } catch (const std::exception& e) {
    return failure(std::string("segment: ") + e.what());
  }
  return res;
}

} // namespace texfis::pipeline
