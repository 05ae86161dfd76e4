#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fcgrid/cascade.hpp"
#include "fcgrid/grid.hpp"

namespace fcgrid {

/// Contents of a grid text document: the grids plus optional sigma columns.
///
/// Format (line oriented, `#` starts a comment that runs to end of line):
///
///     k
///     n_1
///     v_1 v_2 ... v_n1        values ascending, whitespace separated
///     ...
///     n_k
///     ...
///     sigma                   optional
///     n_1
///     s_1 ... s_n1
///     ...
struct GridDocument {
  GridSet grids;
  std::optional<std::vector<std::vector<double>>> sigma;

  friend bool operator==(const GridDocument&, const GridDocument&) = default;
};

/// Throws ParseError with the line and column of the first problem.
GridDocument parse_document(std::string_view text);
GridSet parse_gridset(std::string_view text);

/// Canonical text: shortest round-trip rendering of each value.
std::string write_document(const GridDocument& doc);
std::string write_gridset(const GridSet& grids);

inline constexpr char snapshot_magic[4] = {'F', 'C', 'G', '1'};
inline constexpr std::uint8_t snapshot_version = 1;

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { bad_magic, unsupported_version, truncated, malformed, invariant_violation };

  DecodeError(Kind kind, const std::string& what, std::vector<Violation> violations = {})
      : std::runtime_error(what), kind_(kind), violations_(std::move(violations)) {}

  Kind kind() const noexcept { return kind_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  Kind kind_;
  std::vector<Violation> violations_;
};

/// Snapshot layout, all little-endian:
///   "FCG1", version (u8), k (u64), k grid sizes (u64),
///   then per level: entry count (u64), entries as value (f64), p1 (i64), p2 (i64).
std::vector<std::uint8_t> encode_cascade(const CascadeGrid& cascade);

/// Parses a snapshot without checking cascade invariants.
CascadeGrid decode_cascade_unchecked(std::span<const std::uint8_t> bytes);

/// Parses a snapshot and runs validate_structure against the grids
/// recovered from it. Any violation raises DecodeError::invariant_violation.
CascadeGrid decode_cascade(std::span<const std::uint8_t> bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace fcgrid
