#include <charconv>
#include <fstream>
#include <sstream>

#include "texfis/anfis.hpp"

// ANFIS/1 text layout, one record per line:
//
//   ANFIS/1
//   meta <key> <value...>          (zero or more)
//   inputs <n_inputs> <mfs_per_input> <n_rules>
//   classes <n_classes>
//   input <j> <name|-> <min> <max>
//   mf <j> <m> <a> <b> <c>
//   rule <r> <antecedent...> : <coefficients...>
//   end
//
// Floats use the shortest representation that round-trips exactly.

namespace texfis::anfis {
namespace {

using Kind = ModelFormatError::Kind;

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

[[noreturn]] void corrupt(const std::string& why) { throw ModelFormatError(Kind::Corrupt, "model file: " + why); }

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::istringstream next(std::string_view expected_tag) {
    std::string line;
    if (!std::getline(in_, line)) corrupt("unexpected end of file (wanted '" + std::string(expected_tag) + "')");
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != expected_tag) corrupt("expected '" + std::string(expected_tag) + "', found '" + tag + "'");
    return ss;
  }

  std::string peek_tag() {
    const auto pos = in_.tellg();
    std::string line;
    if (!std::getline(in_, line)) return {};
    in_.seekg(pos);
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    return tag;
  }

private:
  std::istream& in_;
};

double read_double(std::istringstream& ss) {
  std::string tok;
  if (!(ss >> tok)) corrupt("missing number");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) corrupt("bad number '" + tok + "'");
  return v;
}

template <typename T>
T read_int(std::istringstream& ss) {
  T v{};
  if (!(ss >> v)) corrupt("missing integer");
  return v;
}

} // namespace

void write_model(std::ostream& out, const AnfisModel& model) {
  model.validate();
  const auto& rb = model.rulebase;
  out << kModelMagic << '\n';
  for (const auto& [k, v] : model.metadata) out << "meta " << k << ' ' << v << '\n';
  out << "inputs " << rb.n_inputs << ' ' << rb.mfs_per_input << ' ' << rb.rules.size() << '\n';
  out << "classes " << model.n_classes << '\n';
  for (std::size_t j = 0; j < rb.n_inputs; ++j) {
    const std::string name = model.input_names.empty() ? "-" : model.input_names[j];
    out << "input " << j << ' ' << name << ' ' << fmt(model.norm_min[j]) << ' ' << fmt(model.norm_max[j]) << '\n';
  }
  for (std::size_t j = 0; j < rb.n_inputs; ++j)
    for (std::size_t m = 0; m < rb.mfs_per_input; ++m) {
      const auto& mf = rb.mfs[j][m];
      out << "mf " << j << ' ' << m << ' ' << fmt(mf.a) << ' ' << fmt(mf.b) << ' ' << fmt(mf.c) << '\n';
    }
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    out << "rule " << r;
    for (auto idx : rb.rules[r].antecedent) out << ' ' << idx;
    out << " :";
    for (double c : rb.rules[r].consequent) out << ' ' << fmt(c);
    out << '\n';
  }
  out << "end\n";
}

AnfisModel read_model(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic)) throw ModelFormatError(Kind::Corrupt, "model file: empty");
  if (magic != kModelMagic)
    throw ModelFormatError(Kind::Version, "model file: expected '" + std::string(kModelMagic) + "', found '" +
                                              magic.substr(0, 32) + "'");
  LineReader reader(in);
  AnfisModel model;
  while (reader.peek_tag() == "meta") {
    auto ss = reader.next("meta");
    std::string key, value;
    ss >> key;
    std::getline(ss >> std::ws, value);
    model.metadata.emplace_back(key, value);
  }

  auto& rb = model.rulebase;
  std::size_t n_rules = 0;
  {
    auto ss = reader.next("inputs");
    rb.n_inputs = read_int<std::size_t>(ss);
    rb.mfs_per_input = read_int<std::size_t>(ss);
    n_rules = read_int<std::size_t>(ss);
    if (rb.n_inputs == 0 || rb.n_inputs > 64 || rb.mfs_per_input == 0 || n_rules == 0 || n_rules > (1u << 24))
      corrupt("implausible dimensions");
  }
  {
    auto ss = reader.next("classes");
    model.n_classes = read_int<int>(ss);
  }
  bool named = false;
  for (std::size_t j = 0; j < rb.n_inputs; ++j) {
    auto ss = reader.next("input");
    if (read_int<std::size_t>(ss) != j) corrupt("input records out of order");
    std::string name;
    ss >> name;
    if (name != "-") named = true;
    model.input_names.push_back(name);
    model.norm_min.push_back(read_double(ss));
    model.norm_max.push_back(read_double(ss));
  }
  if (!named) model.input_names.clear();

  rb.mfs.assign(rb.n_inputs, std::vector<fuzzy::BellMF>(rb.mfs_per_input));
  for (std::size_t j = 0; j < rb.n_inputs; ++j)
    for (std::size_t m = 0; m < rb.mfs_per_input; ++m) {
      auto ss = reader.next("mf");
      if (read_int<std::size_t>(ss) != j || read_int<std::size_t>(ss) != m) corrupt("mf records out of order");
      auto& mf = rb.mfs[j][m];
      mf.a = read_double(ss);
      mf.b = read_double(ss);
      mf.c = read_double(ss);
    }

  rb.rules.resize(n_rules);
  for (std::size_t r = 0; r < n_rules; ++r) {
    auto ss = reader.next("rule");
    if (read_int<std::size_t>(ss) != r) corrupt("rule records out of order");
    auto& rule = rb.rules[r];
    for (std::size_t j = 0; j < rb.n_inputs; ++j) rule.antecedent.push_back(read_int<std::size_t>(ss));
    std::string sep;
    if (!(ss >> sep) || sep != ":") corrupt("rule record missing ':'");
    for (std::size_t j = 0; j <= rb.n_inputs; ++j) rule.consequent.push_back(read_double(ss));
    std::string extra;
    if (ss >> extra) corrupt("trailing data in rule record");
  }
  reader.next("end");

  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    corrupt(e.what());
  }
  return model;
}

void save_model(const AnfisModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ModelFormatError(Kind::Io, "cannot open " + path.string() + " for writing");
  write_model(out, model);
  if (!out) throw ModelFormatError(Kind::Io, "write failed for " + path.string());
}

AnfisModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError(Kind::Io, "cannot open " + path.string());
  return read_model(in);
}

} // namespace texfis::anfis
