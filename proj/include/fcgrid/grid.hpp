#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fcgrid {

/// A sorted (non-decreasing) energy grid in eV. Duplicates are legal and
/// mark discontinuities in the tabulated data.
struct EnergyGrid {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  std::span<const double> view() const noexcept { return values; }

  friend bool operator==(const EnergyGrid&, const EnergyGrid&) = default;
};

/// The k original grids L_1..L_k. No ordering is required across grids.
struct GridSet {
  std::vector<EnergyGrid> grids;

  std::size_t k() const noexcept { return grids.size(); }
  std::size_t total_points() const noexcept;
  /// Mean grid length.
  double mean_size() const noexcept;

  friend bool operator==(const GridSet&, const GridSet&) = default;
};

/// Throws BuildError naming the first offending grid and index if `grids`
/// is empty, or any grid is empty, unsorted, or holds a non-finite value.
void check_gridset(const GridSet& grids);

}  // namespace fcgrid
