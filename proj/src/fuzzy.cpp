#include "texfis/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace texfis::fuzzy {

BellMF::BellMF(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("BellMF: a and b must be positive");
}

double BellMF::operator()(double x) const noexcept {
  const double t = std::abs((x - c) / a);
  return 1.0 / (1.0 + std::pow(t, 2.0 * b));
}

double bell_eval(const BellMF& mf, double x) noexcept { return mf(x); }

void RuleBase::validate() const {
  if (mfs.size() != n_inputs) throw std::invalid_argument("RuleBase: MF table size != n_inputs");
  for (const auto& per_input : mfs) {
    if (per_input.size() != mfs_per_input)
      throw std::invalid_argument("RuleBase: wrong MF count for an input");
    for (const auto& mf : per_input)
      if (!(mf.a > 0.0) || !(mf.b > 0.0)) throw std::invalid_argument("RuleBase: MF with a or b <= 0");
  }
  if (rules.empty()) throw std::invalid_argument("RuleBase: no rules");
  for (const auto& r : rules) {
    if (r.antecedent.size() != n_inputs)
      throw std::invalid_argument("RuleBase: antecedent length != n_inputs");
    for (auto idx : r.antecedent)
      if (idx >= mfs_per_input) throw std::invalid_argument("RuleBase: antecedent MF index out of range");
    if (r.consequent.size() != n_inputs + 1)
      throw std::invalid_argument("RuleBase: consequent length != n_inputs + 1");
  }
}

RuleBase init_grid_partition(std::span<const std::vector<double>> rows, std::span<const std::string> names) {
  if (rows.size() < 2) throw std::invalid_argument("init_grid_partition: need at least 2 samples");
  const std::size_t d = rows.front().size();
  if (d == 0) throw std::invalid_argument("init_grid_partition: zero-dimensional input");
  if (d > 20) throw std::invalid_argument("init_grid_partition: too many inputs for a grid partition");
  for (const auto& r : rows)
    if (r.size() != d) throw std::invalid_argument("init_grid_partition: ragged feature rows");

  RuleBase rb;
  rb.n_inputs = d;
  rb.mfs_per_input = 2;
  rb.mfs.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    double lo = rows.front()[j], hi = lo;
    for (const auto& r : rows) {
      lo = std::min(lo, r[j]);
      hi = std::max(hi, r[j]);
    }
    if (!(hi > lo)) {
      const std::string name = j < names.size() ? names[j] : "input " + std::to_string(j);
      throw DegenerateFeatureError(name, "init_grid_partition: feature '" + name +
                                             "' is constant across the training set");
    }
    const double half = (hi - lo) / 2.0;
    rb.mfs[j] = {BellMF(half, 2.0, lo), BellMF(half, 2.0, hi)};
  }

  const std::size_t n_rules = std::size_t{1} << d;
  rb.rules.reserve(n_rules);
  for (std::size_t code = 0; code < n_rules; ++code) {
    Rule r;
    r.antecedent.resize(d);
    // Input 0 varies slowest, matching the usual grid enumeration.
    for (std::size_t j = 0; j < d; ++j) r.antecedent[j] = (code >> (d - 1 - j)) & 1u;
    r.consequent.assign(d + 1, 0.0);
    rb.rules.push_back(std::move(r));
  }
  return rb;
}

std::vector<double> firing_strengths(const RuleBase& rb, std::span<const double> x) {
  if (x.size() != rb.n_inputs)
    throw std::invalid_argument("firing_strengths: expected " + std::to_string(rb.n_inputs) +
                                " inputs, got " + std::to_string(x.size()));
  std::vector<double> mu(rb.n_inputs * rb.mfs_per_input);
  for (std::size_t j = 0; j < rb.n_inputs; ++j)
    for (std::size_t m = 0; m < rb.mfs_per_input; ++m) mu[j * rb.mfs_per_input + m] = rb.mfs[j][m](x[j]);

  std::vector<double> w(rb.rules.size());
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    double prod = 1.0;
    const auto& ante = rb.rules[r].antecedent;
    for (std::size_t j = 0; j < rb.n_inputs; ++j) prod *= mu[j * rb.mfs_per_input + ante[j]];
    w[r] = prod;
  }
  return w;
}

RuleBase select_top_rules(const RuleBase& rb, std::span<const std::vector<double>> rows, std::size_t keep) {
  if (keep == 0) throw std::invalid_argument("select_top_rules: keep must be positive");
  if (keep >= rb.rules.size()) return rb;
  std::vector<double> total(rb.rules.size(), 0.0);
  for (const auto& x : rows) {
    const auto w = firing_strengths(rb, x);
    for (std::size_t r = 0; r < w.size(); ++r) total[r] += w[r];
  }
  std::vector<std::size_t> order(rb.rules.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return total[a] > total[b]; });
  order.resize(keep);
  std::sort(order.begin(), order.end());

  RuleBase out = rb;
  out.rules.clear();
  for (auto idx : order) out.rules.push_back(rb.rules[idx]);
  return out;
}

} // namespace texfis::fuzzy
