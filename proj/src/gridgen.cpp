#include "fcgrid/gridgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "fcgrid/errors.hpp"

namespace fcgrid {

std::uint64_t SeededRng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) return lo;
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + x % range;
}

double SeededRng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SeededRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double SeededRng::log_uniform(double lo, double hi) {
  const double v = std::exp(uniform(std::log(lo), std::log(hi)));
  return std::clamp(v, lo, hi);
}

void check_spec(const GenSpec& spec) {
  if (spec.k < 1) throw InvalidArgument("k must be at least 1");
  if (spec.size_min < 1) throw InvalidArgument("size_min must be at least 1");
  if (spec.size_min > spec.size_max) throw InvalidArgument("size_min exceeds size_max");
  if (!(spec.energy_min > 0.0) || !(spec.energy_min < spec.energy_max) || !std::isfinite(spec.energy_max))
    throw InvalidArgument("energy range must satisfy 0 < energy_min < energy_max");
  if (!(spec.duplicate_fraction >= 0.0 && spec.duplicate_fraction <= 1.0))
    throw InvalidArgument("duplicate_fraction must lie in [0, 1]");
}

GeneratedGrids generate_gridset(const GenSpec& spec) {
  check_spec(spec);
  SeededRng rng(spec.seed);
  GeneratedGrids out;
  out.grids.grids.resize(spec.k);
  if (spec.with_sigma) out.sigma.emplace(spec.k);

  for (std::size_t g = 0; g < spec.k; ++g) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(spec.size_min, spec.size_max));
    auto duplicates = static_cast<std::size_t>(std::llround(spec.duplicate_fraction * static_cast<double>(n)));
    duplicates = std::min(duplicates, n - 1);

    std::set<double> distinct;
    for (std::size_t draws = 0; distinct.size() < n - duplicates; ++draws) {
      if (draws > 64 * n) throw InvalidArgument("energy range too narrow for " + std::to_string(n) + " distinct points");
      distinct.insert(rng.log_uniform(spec.energy_min, spec.energy_max));
    }
    std::vector<double> values(distinct.begin(), distinct.end());
    const std::size_t base = values.size();
    for (std::size_t d = 0; d < duplicates; ++d) values.push_back(values[rng.uniform_int(0, base - 1)]);
    std::sort(values.begin(), values.end());
    out.grids.grids[g].values = std::move(values);

    if (out.sigma) {
      std::vector<double>& column = (*out.sigma)[g];
      column.resize(n);
      for (double& s : column) s = rng.log_uniform(0.1, 1e4);
    }
  }
  return out;
}

GridSet paper_example_gridset() {
  return GridSet{{
      EnergyGrid{{1.0, 2.0, 3.0, 4.0, 5.0}},
      EnergyGrid{{1.5, 2.5, 3.5, 4.5, 5.5, 6.5}},
      EnergyGrid{{0.5, 1.5, 2.5, 3.5}},
  }};
}

std::vector<double> paper_example_keys() { return {0.0, 1.4, 2.0, 3.2, 4.7, 6.0, 7.0}; }

std::vector<std::vector<std::size_t>> adversarial_shapes() {
  std::vector<std::vector<std::size_t>> shapes;
  for (std::size_t k = 1; k <= 8; ++k) shapes.emplace_back(k, 1);
  shapes.push_back({1, 1, 1, 1, 3});
  shapes.push_back({10, 9, 8, 7, 6, 5, 4, 3, 2, 1});
  shapes.push_back({64, 32, 16, 8, 4, 2, 1});
  shapes.push_back({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  shapes.push_back({1, 2, 4, 8, 16, 32, 64, 128});
  shapes.push_back({1000, 1, 1, 1, 1, 1, 1, 1});
  shapes.push_back({1, 1, 1, 1, 1, 1, 1, 1000});
  shapes.push_back({1, 3, 1, 3, 1, 3, 1, 3});
  shapes.push_back({257});
  return shapes;
}

GridSet gridset_with_sizes(const std::vector<std::size_t>& sizes) {
  GridSet grids;
  const auto k = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    EnergyGrid grid;
    for (std::size_t t = 0; t < sizes[i]; ++t)
      grid.values.push_back(static_cast<double>(t + 1) + static_cast<double>(i) / (k + 1.0));
    grids.grids.push_back(std::move(grid));
  }
  return grids;
}

GenSpec fuzz_spec(std::uint64_t seed, std::size_t index) {
  SeededRng rng(seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1));
  GenSpec spec;
  spec.k = static_cast<std::size_t>(rng.uniform_int(1, 16));
  spec.size_max = static_cast<std::size_t>(rng.uniform_int(1, 1024));
  spec.size_min = static_cast<std::size_t>(rng.uniform_int(1, spec.size_max));
  spec.duplicate_fraction = index % 2 == 0 ? 0.0 : 0.05;
  spec.seed = rng.next();
  return spec;
}

}  // namespace fcgrid
