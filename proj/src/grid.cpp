#include "fcgrid/grid.hpp"

#include <cmath>
#include <numeric>

#include "fcgrid/errors.hpp"
#include "fcgrid/search.hpp"

namespace fcgrid {

std::size_t GridSet::total_points() const noexcept {
  return std::accumulate(grids.begin(), grids.end(), std::size_t{0},
                         [](std::size_t acc, const EnergyGrid& g) { return acc + g.size(); });
}

double GridSet::mean_size() const noexcept {
  return grids.empty() ? 0.0 : static_cast<double>(total_points()) / static_cast<double>(grids.size());
}

void check_gridset(const GridSet& grids) {
  if (grids.grids.empty()) throw BuildError("grid set is empty", BuildError::npos, BuildError::npos);
  for (std::size_t g = 0; g < grids.k(); ++g) {
    const auto& values = grids.grids[g].values;
    const std::string name = "grid " + std::to_string(g + 1);
    if (values.empty()) throw BuildError(name + " is empty", g, BuildError::npos);
    for (std::size_t t = 0; t < values.size(); ++t) {
      if (!std::isfinite(values[t]))
        throw BuildError(name + " has a non-finite value at position " + std::to_string(t), g, t);
      if (t > 0 && values[t] < values[t - 1])
        throw BuildError(name + " not sorted at position " + std::to_string(t), g, t);
    }
  }
}

Index strict_predecessor(std::span<const double> values, double key) {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  return detail::predecessor_fixed_depth(values, key, [] {});
}

Index strict_predecessor_counted(std::span<const double> values, double key, std::size_t& comparisons) {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  return detail::predecessor_fixed_depth(values, key, [&comparisons] { ++comparisons; });
}

}  // namespace fcgrid
