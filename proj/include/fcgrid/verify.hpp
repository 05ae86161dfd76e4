#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcgrid/cascade.hpp"
#include "fcgrid/gridgen.hpp"

namespace fcgrid {

/// Every distinct grid value, its neighbours one ulp either side, and the
/// global min - 1 and max + 1.
std::vector<double> boundary_keys(const GridSet& grids);

/// boundary_keys plus `random_keys` keys uniform over [global min, global max].
std::vector<double> verification_keys(const GridSet& grids, std::size_t random_keys, SeededRng& rng);

struct Mismatch {
  std::size_t gridset = 0;
  double key = 0.0;
  std::size_t level = 0;  ///< 0-based
  std::size_t expected = 0;
  std::size_t got = 0;
};

struct VerifyReport {
  std::size_t gridsets = 0;
  std::size_t keys = 0;  ///< total keys checked across all grid sets
  std::size_t random_keys_per_set = 0;
  std::size_t mismatches = 0;
  std::optional<Mismatch> first_mismatch;
  std::size_t structural_violations = 0;
  std::vector<std::string> violation_samples;  ///< first few, formatted
  std::size_t efficiency_violations = 0;
  std::optional<std::string> first_efficiency_violation;

  bool ok() const noexcept { return mismatches == 0 && structural_violations == 0 && efficiency_violations == 0; }

  /// Folds `other` in after this report; samples keep the earliest entries.
  void merge(const VerifyReport& other);
};

/// Checks the cascade's structure, then each key's traced lookup against
/// naive_lookup and the efficiency bounds. The differential part is skipped
/// when the structure is invalid, since bridges may then point anywhere.
VerifyReport verify_gridset(const GridSet& grids, const CascadeGrid& cascade, std::span<const double> keys,
                            std::size_t gridset_index = 0);

/// Runs `count` fuzz cases from fuzz_spec(seed, i), each with `random_keys`
/// random keys plus boundary keys, over `threads` workers. The report does
/// not depend on the thread count.
VerifyReport verify_random(std::size_t count, std::uint64_t seed, std::size_t random_keys, unsigned threads = 1);

void print_report(std::ostream& os, const VerifyReport& report, bool tsv);

struct BenchReport {
  std::size_t k = 0;
  std::size_t max_grid_size = 0;
  std::size_t queries = 0;
  double fc_seconds = 0.0;
  double naive_seconds = 0.0;
  double fc_mean_comparisons = 0.0;
  std::size_t fc_max_comparisons = 0;
  double naive_mean_comparisons = 0.0;
  std::size_t naive_max_comparisons = 0;
  /// floor(log2(2n)) + 1 + (k - 1), n the largest grid.
  std::size_t fc_bound = 0;
  /// k * (floor(log2 n) + 1).
  std::size_t naive_bound = 0;

  bool bound_holds() const noexcept { return fc_max_comparisons <= fc_bound; }
  double speedup() const noexcept { return fc_seconds > 0.0 ? naive_seconds / fc_seconds : 0.0; }
};

/// Times `queries` uniform keys through the cascade and through k binary
/// searches (same key stream, after an untimed warm-up pass), then counts
/// comparisons on both paths.
BenchReport run_bench(const GridSet& grids, std::size_t queries, std::uint64_t seed);

void print_bench(std::ostream& os, const BenchReport& report, bool tsv);

}  // namespace fcgrid
