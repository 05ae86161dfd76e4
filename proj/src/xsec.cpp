#include "fcgrid/xsec.hpp"

#include <cmath>
#include <string>

#include "fcgrid/errors.hpp"

namespace fcgrid {

void check_table(const NuclideTable& table) {
  if (table.sigma.size() != table.grid.size())
    throw InvalidArgument("sigma has " + std::to_string(table.sigma.size()) + " values for a grid of " +
                          std::to_string(table.grid.size()));
  for (std::size_t t = 0; t < table.sigma.size(); ++t)
    if (!std::isfinite(table.sigma[t]) || table.sigma[t] < 0.0)
      throw InvalidArgument("sigma at position " + std::to_string(t) + " is negative or not finite");
}

std::vector<NuclideTable> make_tables(const GridSet& grids, const std::vector<std::vector<double>>& sigma) {
  if (sigma.size() != grids.k())
    throw InvalidArgument("expected " + std::to_string(grids.k()) + " sigma columns, got " +
                          std::to_string(sigma.size()));
  std::vector<NuclideTable> tables;
  tables.reserve(grids.k());
  for (std::size_t i = 0; i < grids.k(); ++i) {
    tables.push_back({grids.grids[i], sigma[i]});
    check_table(tables.back());
  }
  return tables;
}

GridSet grids_of(std::span<const NuclideTable> tables) {
  GridSet grids;
  grids.grids.reserve(tables.size());
  for (const NuclideTable& t : tables) grids.grids.push_back(t.grid);
  return grids;
}

double interp_sigma(const NuclideTable& table, std::size_t idx, double key) {
  const std::vector<double>& e = table.grid.values;
  if (idx >= e.size() || idx >= table.sigma.size())
    throw InvalidArgument("index " + std::to_string(idx) + " out of range for grid of " + std::to_string(e.size()));
  if (idx + 1 == e.size() || key <= e.front() || e[idx] == e[idx + 1]) return table.sigma[idx];
  const double fraction = (key - e[idx]) / (e[idx + 1] - e[idx]);
  return table.sigma[idx] + fraction * (table.sigma[idx + 1] - table.sigma[idx]);
}

namespace {

void check_tables_match(std::span<const NuclideTable> tables, const std::vector<std::size_t>& sizes) {
  if (tables.size() != sizes.size())
    throw StructureMismatch(std::to_string(tables.size()) + " tables for a cascade of " +
                            std::to_string(sizes.size()) + " levels");
  for (std::size_t i = 0; i < tables.size(); ++i)
    if (tables[i].grid.size() != sizes[i])
      throw StructureMismatch("table " + std::to_string(i + 1) + " grid size differs from the cascade");
}

}  // namespace

std::vector<double> eval_micro_at(std::span<const NuclideTable> tables, const LookupResult& indices, double key) {
  if (indices.indices.size() != tables.size())
    throw StructureMismatch(std::to_string(indices.indices.size()) + " indices for " + std::to_string(tables.size()) +
                            " tables");
  std::vector<double> out(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) out[i] = interp_sigma(tables[i], indices.indices[i], key);
  return out;
}

std::vector<double> eval_micro_all(std::span<const NuclideTable> tables, const CascadeGrid& cascade, double key) {
  check_tables_match(tables, cascade.grid_sizes());
  return eval_micro_at(tables, cascade.lookup(key), key);
}

double eval_macro(const Material& material, std::span<const NuclideTable> tables, const CascadeGrid& cascade,
                  double key) {
  check_tables_match(tables, cascade.grid_sizes());
  for (const MaterialComponent& c : material.components) {
    if (c.nuclide >= tables.size())
      throw InvalidArgument("unknown nuclide ordinal " + std::to_string(c.nuclide));
    if (!std::isfinite(c.density) || c.density < 0.0)
      throw InvalidArgument("density of nuclide " + std::to_string(c.nuclide) + " is negative or not finite");
  }
  const LookupResult at = cascade.lookup(key);
  double total = 0.0;
  for (const MaterialComponent& c : material.components)
    total += c.density * interp_sigma(tables[c.nuclide], at.indices[c.nuclide], key);
  return total;
}

}  // namespace fcgrid
