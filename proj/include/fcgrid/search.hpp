#pragma once

#include <bit>
#include <cstddef>
#include <span>

namespace fcgrid {

/// Index type for predecessor results. -1 means "no element is <= key".
using Index = std::ptrdiff_t;

inline constexpr Index no_predecessor = -1;

namespace detail {

// Fixed-depth predecessor search. Counts elements <= key with exactly
// floor(log2 n) + 1 comparisons regardless of the key: the first probe at
// n - bit_floor(n) picks a window of bit_floor(n) candidate counts, which
// the halving loop then resolves one bit at a time.
template <typename Counter>
inline Index predecessor_fixed_depth(std::span<const double> values, double key, Counter&& count) noexcept {
  const std::size_t n = values.size();
  if (n == 0) return no_predecessor;
  const std::size_t window = std::bit_floor(n);
  count();
  std::size_t below = (values[n - window] <= key) ? n - window + 1 : 0;
  for (std::size_t step = window / 2; step > 0; step /= 2) {
    count();
    below += (values[below + step - 1] <= key) ? step : 0;
  }
  return static_cast<Index>(below) - 1;
}

}  // namespace detail

/// max{t : values[t] <= key}, or -1 when key < values[0].
/// `values` must be non-decreasing. Throws InvalidArgument on a NaN key.
Index strict_predecessor(std::span<const double> values, double key);

/// As strict_predecessor, also adding the number of key comparisons made
/// (always floor(log2 |values|) + 1) to `comparisons`.
Index strict_predecessor_counted(std::span<const double> values, double key, std::size_t& comparisons);

/// floor(log2 n) + 1 for n >= 1; the comparison count of a search over n values.
constexpr std::size_t search_depth(std::size_t n) noexcept { return n == 0 ? 0 : std::bit_width(n); }

}  // namespace fcgrid
