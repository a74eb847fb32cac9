#include "aggvote/spectro.hpp"

#include <algorithm>

#include "aggvote/learners.hpp"

namespace aggvote {

SpectrumPrepResult spectro_prep(const Dataset& raw,
                                const SpectrumPrepOptions& options) {
  if (raw.kind() != FeatureKind::Curve) {
    throw DataError("spectrum prep expects curve data");
  }
  if (!(options.lo < options.hi)) {
    throw ConfigError("spectrum prep: lo must be below hi");
  }
  if (options.grid_size < 2) {
    throw ConfigError("spectrum prep: grid_size must be at least 2");
  }
  const std::vector<double>& grid = raw.grid();
  if (grid.front() > options.lo || grid.back() < options.hi) {
    throw DataError("input grid [" + std::to_string(grid.front()) + ", " +
                    std::to_string(grid.back()) + "] does not cover [" +
                    std::to_string(options.lo) + ", " +
                    std::to_string(options.hi) + "]");
  }

  // Restriction: keep the grid points inside [lo, hi].
  std::size_t first = 0;
  while (grid[first] < options.lo) ++first;
  std::size_t last = grid.size();
  while (grid[last - 1] > options.hi) --last;
  if (last - first < 2) {
    throw DataError("fewer than 2 input grid points fall inside [" +
                    std::to_string(options.lo) + ", " +
                    std::to_string(options.hi) + "]");
  }
  const std::vector<double> in_grid(grid.begin() + first, grid.begin() + last);

  std::vector<double> out_grid(options.grid_size);
  for (std::size_t i = 0; i < options.grid_size; ++i) {
    out_grid[i] = options.lo + (options.hi - options.lo) *
                                   static_cast<double>(i) /
                                   static_cast<double>(options.grid_size - 1);
  }
  const std::vector<std::vector<double>> weights =
      nw_weight_matrix(in_grid, out_grid, options.bandwidth);

  SpectrumPrepResult result;
  std::vector<LabeledPoint> kept;
  for (std::size_t row = 0; row < raw.size(); ++row) {
    const LabeledPoint& p = raw[row];
    const FeatureObject restricted = make_curve(
        in_grid, std::vector<double>(p.x.values.begin() + first,
                                     p.x.values.begin() + last));
    FeatureObject smoothed = nw_apply(weights, out_grid, restricted);
    const double peak =
        *std::max_element(smoothed.values.begin(), smoothed.values.end());
    if (!(peak > 0.0)) {
      result.rejected.push_back(row);
      result.warnings.push_back("row " + std::to_string(row) +
                                " dropped: no positive maximum after "
                                "restriction and smoothing");
      continue;
    }
    for (double& v : smoothed.values) v /= peak;
    kept.push_back({std::move(smoothed), p.y});
  }
  if (kept.empty()) {
    throw DataError("spectrum prep dropped every input row");
  }
  result.data = Dataset(std::move(kept));
  return result;
}

}  // namespace aggvote
