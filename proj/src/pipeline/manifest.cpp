#include <fstream>
#include <set>
#include <sstream>

#include "texfis/pipeline.hpp"

namespace texfis::pipeline {

Manifest Manifest::parse(std::istream& in, const fs::path& base_dir) {
  Manifest m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line == "path,label,split") continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      throw ManifestError("manifest line " + std::to_string(lineno) + ": expected path,label,split");
    ManifestEntry e;
    e.raw_path = line.substr(0, c1);
    const std::string label = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string split = line.substr(c2 + 1);
    try {
      std::size_t used = 0;
      e.label = std::stoi(label, &used);
      if (used != label.size()) throw std::invalid_argument(label);
    } catch (const std::exception&) {
      throw ManifestError("manifest line " + std::to_string(lineno) + ": bad label '" + label + "'");
    }
    if (split == "train") e.split = Split::Train;
    else if (split == "test") e.split = Split::Test;
    else throw ManifestError("manifest line " + std::to_string(lineno) + ": split must be train or test");
    const fs::path p(e.raw_path);
    e.path = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    m.n_classes = std::max(m.n_classes, e.label);
    m.entries.push_back(std::move(e));
  }
  m.validate();
  return m;
}

Manifest Manifest::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("manifest: cannot open " + path.string());
  return parse(in, path.parent_path());
}

void Manifest::write(std::ostream& out) const {
  out << "path,label,split\n";
  for (const auto& e : entries)
    out << e.raw_path << ',' << e.label << ',' << (e.split == Split::Train ? "train" : "test") << '\n';
}

void Manifest::validate() const {
  if (entries.empty()) throw ManifestError("manifest: no entries");
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (e.label < 1 || e.label > n_classes)
      throw ManifestError("manifest: label " + std::to_string(e.label) + " outside 1.." + std::to_string(n_classes));
    if (!seen.insert(e.path.lexically_normal().string()).second)
      throw ManifestError("manifest: duplicate path " + e.raw_path);
  }
}

} // namespace texfis::pipeline
