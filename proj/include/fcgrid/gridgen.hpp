#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "fcgrid/grid.hpp"

namespace fcgrid {

/// Parameters for a synthetic grid set.
struct GenSpec {
  std::size_t k = 1;
  std::size_t size_min = 1;
  std::size_t size_max = 1;
  double energy_min = 1e-5;  // eV
  double energy_max = 2e7;   // eV
  double duplicate_fraction = 0.0;
  std::uint64_t seed = 0;
  bool with_sigma = false;
};

/// Throws InvalidArgument when a GenSpec invariant does not hold.
void check_spec(const GenSpec& spec);

struct GeneratedGrids {
  GridSet grids;
  /// One column per grid when GenSpec::with_sigma is set.
  std::optional<std::vector<std::vector<double>>> sigma;
};

/// Deterministic generator built on std::mt19937_64, whose output sequence
/// is fixed by the standard. Integer and real draws are mapped from raw
/// 64-bit words here rather than through the <random> distributions, whose
/// algorithms differ between standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi], by rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);
  /// exp(uniform(log lo, log hi)), clamped to [lo, hi].
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// k grids with sizes uniform in [size_min, size_max] and log-uniform
/// energies; about duplicate_fraction of each grid's points are doubled.
GeneratedGrids generate_gridset(const GenSpec& spec);

/// The three-grid fixture {1..5}, {1.5..6.5}, {0.5..3.5}.
GridSet paper_example_gridset();

/// The seven query keys paired with the fixture.
std::vector<double> paper_example_keys();

/// Grid-size vectors that stress the size bound.
std::vector<std::vector<std::size_t>> adversarial_shapes();

/// Strictly increasing grids 1, 2, 3, ... of the given sizes, each offset by
/// a fraction so that grids interleave.
GridSet gridset_with_sizes(const std::vector<std::size_t>& sizes);

/// Generation parameters for the `index`-th fuzz case derived from `seed`: k in [1, 16],
/// sizes within [1, 1024], duplicate fraction alternating 0 and 0.05.
GenSpec fuzz_spec(std::uint64_t seed, std::size_t index);

}  // namespace fcgrid
