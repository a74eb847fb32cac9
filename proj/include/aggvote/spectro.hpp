#pragma once

#include <string>
#include <vector>

#include "aggvote/core.hpp"

namespace aggvote {

// Spectrum preprocessing: restrict every curve to [lo, hi], kernel-smooth it
// onto a common equispaced grid, and divide by its maximum so every output
// curve peaks at exactly 1.
struct SpectrumPrepOptions {
  double lo = 7000.0;
  double hi = 9500.0;
  double bandwidth = 25.0;  // kernel width in grid units
  std::size_t grid_size = 300;
};

struct SpectrumPrepResult {
  Dataset data;                       // surviving rows, input order
  std::vector<std::size_t> rejected;  // input row indices that were dropped
  std::vector<std::string> warnings;  // one message per rejected row
};

// The shared input grid must cover [lo, hi]; rows whose restricted curve has
// no positive maximum are dropped with a warning. Dropping every row is an
// error.
SpectrumPrepResult spectro_prep(const Dataset& raw,
                                const SpectrumPrepOptions& options);

}  // namespace aggvote
