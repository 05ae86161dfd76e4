#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fcgrid/cascade.hpp"
#include "fcgrid/grid.hpp"

namespace fcgrid {

/// Microscopic cross section (barns) tabulated on an energy grid (eV).
struct NuclideTable {
  EnergyGrid grid;
  std::vector<double> sigma;

  friend bool operator==(const NuclideTable&, const NuclideTable&) = default;
};

/// Throws InvalidArgument if sigma and grid differ in length or a sigma
/// value is negative or non-finite.
void check_table(const NuclideTable& table);

/// Pairs each grid with its sigma column and checks every table.
std::vector<NuclideTable> make_tables(const GridSet& grids, const std::vector<std::vector<double>>& sigma);

GridSet grids_of(std::span<const NuclideTable> tables);

struct MaterialComponent {
  std::size_t nuclide;  ///< ordinal into the table set
  double density;       ///< atoms / (barn cm)
};

struct Material {
  std::vector<MaterialComponent> components;
};

/// Lin-lin interpolation of sigma at `key`, where `idx` is the clamped
/// predecessor of `key` in the table's grid. Constant clamp below the first
/// point, at the last point and across a duplicated (discontinuity) point.
double interp_sigma(const NuclideTable& table, std::size_t idx, double key);

/// sigma_i(key) for every table, indices taken from one cascade lookup.
std::vector<double> eval_micro_all(std::span<const NuclideTable> tables, const CascadeGrid& cascade, double key);

/// The same, from precomputed indices (e.g. naive_lookup).
std::vector<double> eval_micro_at(std::span<const NuclideTable> tables, const LookupResult& indices, double key);

/// Macroscopic cross section sum_j N_j sigma_j(key), in 1/cm.
double eval_macro(const Material& material, std::span<const NuclideTable> tables, const CascadeGrid& cascade,
                  double key);

}  // namespace fcgrid
