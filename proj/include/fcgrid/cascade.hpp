#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcgrid/grid.hpp"
#include "fcgrid/search.hpp"

namespace fcgrid {

/// One entry of an augmented grid M_i. Both bridges are defined by value:
/// p1 is the strict predecessor of `value` in L_i and p2 its strict
/// predecessor in M_{i+1} (-1 at the last level).
struct CascadeEntry {
  double value;
  std::int64_t p1;
  std::int64_t p2;

  friend bool operator==(const CascadeEntry&, const CascadeEntry&) = default;
};

/// Augmented grid M_i, stored column-wise so the first level can be
/// binary-searched directly over `values`.
struct CascadeLevel {
  std::vector<double> values;
  std::vector<std::int64_t> p1;
  std::vector<std::int64_t> p2;

  std::size_t size() const noexcept { return values.size(); }
  CascadeEntry entry(std::size_t t) const { return {values[t], p1[t], p2[t]}; }
  void push_back(const CascadeEntry& e);

  friend bool operator==(const CascadeLevel&, const CascadeLevel&) = default;
};

struct LookupResult {
  std::vector<std::size_t> indices;

  friend bool operator==(const LookupResult&, const LookupResult&) = default;
};

struct LookupTrace {
  std::size_t binary_searches = 0;
  std::size_t binary_search_comparisons = 0;
  /// One count per level 2..k.
  std::vector<std::size_t> per_level_comparisons;
  LookupResult result;

  std::size_t total_comparisons() const noexcept;

  friend bool operator==(const LookupTrace&, const LookupTrace&) = default;
};

/// Immutable fractional-cascading structure over k grids.
class CascadeGrid {
 public:
  CascadeGrid() = default;
  /// Assembles a cascade from raw parts without checking invariants; use
  /// validate_structure to check the result.
  CascadeGrid(std::vector<CascadeLevel> levels, std::vector<std::size_t> grid_sizes);

  std::size_t k() const noexcept { return levels_.size(); }
  const std::vector<CascadeLevel>& levels() const noexcept { return levels_; }
  const CascadeLevel& level(std::size_t i) const { return levels_.at(i); }
  const std::vector<std::size_t>& grid_sizes() const noexcept { return grid_sizes_; }
  std::size_t total_entries() const noexcept;

  /// k clamped predecessor indices of `key`. One binary search over M_1,
  /// then at most one comparison per subsequent level.
  LookupResult lookup(double key) const;
  LookupTrace lookup_traced(double key) const;

  friend bool operator==(const CascadeGrid&, const CascadeGrid&) = default;

 private:
  template <typename Tally>
  void descend(double key, std::vector<std::size_t>& out, Tally&& tally) const;

  std::vector<CascadeLevel> levels_;
  std::vector<std::size_t> grid_sizes_;
};

struct BuildOptions {
  /// Which entries of M_{i+1} are copied into M_i. Odd indices give
  /// |M_i| = |L_i| + floor(|M_{i+1}| / 2) and keep the 2 * sum |L_i| bound;
  /// even indices (ceil) can exceed it and exist only as a negative fixture.
  enum class Promotion { odd_indices, even_indices };
  /// Order of equal values during the merge. Bridges are by value, so this
  /// never changes lookup results.
  enum class TieBreak { grid_first, promoted_first };

  Promotion promotion = Promotion::odd_indices;
  TieBreak tie_break = TieBreak::grid_first;
};

/// Builds M_k down to M_1. Throws BuildError for invalid grids.
CascadeGrid build_cascade(const GridSet& grids, const BuildOptions& options = {});

/// Throws StructureMismatch unless `cascade` has the shape of `grids`.
void check_shape(const CascadeGrid& cascade, const GridSet& grids);

/// Throws InvalidArgument on NaN, StructureMismatch on shape disagreement.
LookupResult cascade_lookup(const CascadeGrid& cascade, const GridSet& grids, double key);
LookupTrace cascade_lookup_traced(const CascadeGrid& cascade, const GridSet& grids, double key);

/// Reference answer: an independent linear scan of every grid.
LookupResult naive_lookup(const GridSet& grids, double key);

/// k independent binary searches, with the total comparison count. This is
/// the baseline the cascade is benchmarked against.
LookupResult naive_binary_lookup(const GridSet& grids, double key, std::size_t* comparisons = nullptr);

struct Violation {
  static constexpr std::ptrdiff_t none = -1;

  std::ptrdiff_t level = none;  ///< 0-based level, or none for global checks
  std::ptrdiff_t entry = none;  ///< 0-based entry within the level, or none
  std::string invariant;        ///< short tag, e.g. "p2", "sorted", "bound"
  std::string detail;

  std::string to_string() const;
};

/// Every broken invariant of `cascade` relative to `grids`. Empty iff the
/// cascade is exactly what build_cascade would produce up to tie ordering.
std::vector<Violation> validate_structure(const CascadeGrid& cascade, const GridSet& grids);

/// Reconstructs L_1..L_k from a cascade alone (L_k = M_k, L_i = M_i minus
/// the odd-indexed values of M_{i+1}). nullopt if a promoted value is absent.
std::optional<GridSet> recover_grids(const CascadeGrid& cascade);

struct StructureStats {
  std::size_t k = 0;
  std::vector<std::size_t> level_sizes;
  std::size_t total_entries = 0;
  std::size_t total_grid_points = 0;
  double ratio = 0.0;
  std::size_t memory_bytes = 0;

  bool bound_holds() const noexcept { return total_entries <= 2 * total_grid_points; }
};

/// Bytes per entry: value plus both bridges.
inline constexpr std::size_t entry_width = sizeof(double) + 2 * sizeof(std::int64_t);

StructureStats structure_stats(const CascadeGrid& cascade);

}  // namespace fcgrid
