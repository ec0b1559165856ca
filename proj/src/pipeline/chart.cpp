#include <algorithm>
#include <cmath>

#include "texfis/pipeline.hpp"

namespace texfis::pipeline {

GrayImage render_bar_chart(const std::vector<eval::MetricsReport>& reports) {
  constexpr std::size_t kMargin = 10, kBar = 12, kGap = 10, kPlot = 100;
  constexpr std::uint16_t kShades[3] = {40, 110, 180};
  const std::size_t groups = std::max<std::size_t>(reports.size(), 1);
  const std::size_t width = 2 * kMargin + groups * 3 * kBar + (groups - 1) * kGap;
  const std::size_t height = kPlot + 2 * kMargin;
  GrayImage img(width, height, 256, std::vector<std::uint16_t>(width * height, 255));

  const std::size_t baseline = kMargin + kPlot;
  for (std::size_t c = kMargin / 2; c < width - kMargin / 2; ++c) img.set(baseline, c, 0);
  // Faint gridlines every 25%.
  for (std::size_t pct = 25; pct <= 100; pct += 25)
    for (std::size_t c = kMargin; c < width - kMargin; c += 2) img.set(baseline - pct, c, 200);

  for (std::size_t g = 0; g < reports.size(); ++g) {
    const auto& r = reports[g];
    const std::optional<double> values[3] = {r.sensitivity, r.specificity, r.accuracy};
    for (std::size_t m = 0; m < 3; ++m) {
      const double v = values[m] ? std::clamp(*values[m], 0.0, 100.0) : 0.0;
      const auto bar = static_cast<std::size_t>(std::lround(v * kPlot / 100.0));
      const std::size_t x0 = kMargin + g * (3 * kBar + kGap) + m * kBar;
      for (std::size_t row = baseline - bar; row < baseline; ++row)
        for (std::size_t c = x0 + 1; c < x0 + kBar - 1; ++c) img.set(row, c, kShades[m]);
    }
  }
  return img;
}

} // namespace texfis::pipeline
