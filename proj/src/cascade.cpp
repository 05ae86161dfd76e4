#include "fcgrid/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fcgrid/errors.hpp"

namespace fcgrid {

void CascadeLevel::push_back(const CascadeEntry& e) {
  values.push_back(e.value);
  p1.push_back(e.p1);
  p2.push_back(e.p2);
}

std::size_t LookupTrace::total_comparisons() const noexcept {
  return std::accumulate(per_level_comparisons.begin(), per_level_comparisons.end(), binary_search_comparisons);
}

CascadeGrid::CascadeGrid(std::vector<CascadeLevel> levels, std::vector<std::size_t> grid_sizes)
    : levels_(std::move(levels)), grid_sizes_(std::move(grid_sizes)) {}

std::size_t CascadeGrid::total_entries() const noexcept {
  return std::accumulate(levels_.begin(), levels_.end(), std::size_t{0},
                         [](std::size_t acc, const CascadeLevel& l) { return acc + l.size(); });
}

namespace {

struct NoTally {
  void search_probe() noexcept {}
  void level_probe(std::size_t) noexcept {}
};

struct TraceTally {
  LookupTrace* trace;
  void search_probe() noexcept { ++trace->binary_search_comparisons; }
  void level_probe(std::size_t level) noexcept { ++trace->per_level_comparisons[level]; }
};

}  // namespace

template <typename Tally>
void CascadeGrid::descend(double key, std::vector<std::size_t>& out, Tally&& tally) const {
  const std::size_t k = levels_.size();
  out.assign(k, 0);
  if (k == 0) return;

  Index j = detail::predecessor_fixed_depth(levels_.front().values, key, [&tally] { tally.search_probe(); });
  for (std::size_t i = 0; i < k; ++i) {
    const CascadeLevel& level = levels_[i];
    if (j >= 0) out[i] = static_cast<std::size_t>(std::max<std::int64_t>(0, level.p1[j]));
    if (i + 1 == k) break;

    // b is the predecessor of M_i[j] in M_{i+1}; the key's predecessor
    // there is b or b + 1.
    const Index bridge = j < 0 ? no_predecessor : static_cast<Index>(level.p2[j]);
    const CascadeLevel& next = levels_[i + 1];
    const auto up = static_cast<std::size_t>(bridge + 1);
    if (up < next.size()) {
      tally.level_probe(i);
      j = next.values[up] <= key ? bridge + 1 : bridge;
    } else {
      j = bridge;
    }
  }
}

LookupResult CascadeGrid::lookup(double key) const {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  LookupResult result;
  descend(key, result.indices, NoTally{});
  return result;
}

LookupTrace CascadeGrid::lookup_traced(double key) const {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  LookupTrace trace;
  if (!levels_.empty()) {
    trace.binary_searches = 1;
    trace.per_level_comparisons.assign(levels_.size() - 1, 0);
  }
  descend(key, trace.result.indices, TraceTally{&trace});
  return trace;
}

CascadeGrid build_cascade(const GridSet& grids, const BuildOptions& options) {
  check_gridset(grids);
  const std::size_t k = grids.k();
  const bool grid_first = options.tie_break == BuildOptions::TieBreak::grid_first;
  const std::size_t first_promoted = options.promotion == BuildOptions::Promotion::odd_indices ? 1 : 0;

  std::vector<CascadeLevel> levels(k);
  std::vector<std::size_t> sizes(k);
  for (std::size_t n = k; n-- > 0;) {
    const std::vector<double>& own = grids.grids[n].values;
    sizes[n] = own.size();

    std::vector<double> promoted;
    if (n + 1 < k) {
      const std::vector<double>& below = levels[n + 1].values;
      for (std::size_t t = first_promoted; t < below.size(); t += 2) promoted.push_back(below[t]);
    }

    std::vector<double> merged;
    merged.reserve(own.size() + promoted.size());
    std::size_t a = 0, b = 0;
    while (a < own.size() && b < promoted.size()) {
      const bool take_own = grid_first ? own[a] <= promoted[b] : own[a] < promoted[b];
      merged.push_back(take_own ? own[a++] : promoted[b++]);
    }
    merged.insert(merged.end(), own.begin() + static_cast<std::ptrdiff_t>(a), own.end());
    merged.insert(merged.end(), promoted.begin() + static_cast<std::ptrdiff_t>(b), promoted.end());

    // Bridges by value: count of elements <= value, minus one. Both sweeps
    // are monotone because `merged` is sorted.
    CascadeLevel& level = levels[n];
    level.values = std::move(merged);
    level.p1.resize(level.size());
    level.p2.assign(level.size(), -1);
    std::size_t in_own = 0;
    for (std::size_t t = 0; t < level.size(); ++t) {
      while (in_own < own.size() && own[in_own] <= level.values[t]) ++in_own;
      level.p1[t] = static_cast<std::int64_t>(in_own) - 1;
    }
    if (n + 1 < k) {
      const std::vector<double>& below = levels[n + 1].values;
      std::size_t in_below = 0;
      for (std::size_t t = 0; t < level.size(); ++t) {
        while (in_below < below.size() && below[in_below] <= level.values[t]) ++in_below;
        level.p2[t] = static_cast<std::int64_t>(in_below) - 1;
      }
    }
  }
  return CascadeGrid(std::move(levels), std::move(sizes));
}

void check_shape(const CascadeGrid& cascade, const GridSet& grids) {
  if (cascade.k() != grids.k())
    throw StructureMismatch("cascade has " + std::to_string(cascade.k()) + " levels but there are " +
                            std::to_string(grids.k()) + " grids");
  for (std::size_t i = 0; i < grids.k(); ++i) {
    const std::size_t stored = i < cascade.grid_sizes().size() ? cascade.grid_sizes()[i] : 0;
    if (stored != grids.grids[i].size())
      throw StructureMismatch("grid " + std::to_string(i + 1) + " has " + std::to_string(grids.grids[i].size()) +
                              " points but the cascade was built for " + std::to_string(stored));
  }
}

LookupResult cascade_lookup(const CascadeGrid& cascade, const GridSet& grids, double key) {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  check_shape(cascade, grids);
  return cascade.lookup(key);
}

LookupTrace cascade_lookup_traced(const CascadeGrid& cascade, const GridSet& grids, double key) {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  check_shape(cascade, grids);
  return cascade.lookup_traced(key);
}

LookupResult naive_lookup(const GridSet& grids, double key) {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  LookupResult result;
  result.indices.reserve(grids.k());
  for (const EnergyGrid& grid : grids.grids) {
    const std::vector<double>& v = grid.values;
    std::size_t idx = 0;
    while (idx + 1 < v.size() && v[idx + 1] <= key) ++idx;
    result.indices.push_back(idx);
  }
  return result;
}

LookupResult naive_binary_lookup(const GridSet& grids, double key, std::size_t* comparisons) {
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  std::size_t count = 0;
  LookupResult result;
  result.indices.reserve(grids.k());
  for (const EnergyGrid& grid : grids.grids) {
    const Index t = strict_predecessor_counted(grid.values, key, count);
    result.indices.push_back(t < 0 ? 0 : static_cast<std::size_t>(t));
  }
  if (comparisons) *comparisons += count;
  return result;
}

std::string Violation::to_string() const {
  std::ostringstream os;
  if (level != none) os << "level " << (level + 1);
  if (entry != none) os << (level != none ? ", " : "") << "entry " << entry;
  if (level != none || entry != none) os << ": ";
  os << invariant;
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

namespace {

// Splits sorted `whole` into the part matched by sorted `part` and the
// rest. Elements of `part` absent from `whole` are returned in `missing`.
void multiset_difference(const std::vector<double>& whole, const std::vector<double>& part,
                         std::vector<double>& rest, std::vector<double>& missing) {
  std::size_t p = 0;
  for (double v : whole) {
    while (p < part.size() && part[p] < v) missing.push_back(part[p++]);
    if (p < part.size() && part[p] == v)
      ++p;
    else
      rest.push_back(v);
  }
  missing.insert(missing.end(), part.begin() + static_cast<std::ptrdiff_t>(p), part.end());
}

std::vector<double> odd_indexed(const std::vector<double>& values) {
  std::vector<double> out;
  for (std::size_t t = 1; t < values.size(); t += 2) out.push_back(values[t]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string missing_value(const char* what, double v) {
  std::ostringstream os;
  os.precision(17);
  os << what << " " << v;
  return os.str();
}

template <typename T>
std::string describe(const char* label, T expected, T stored) {
  std::ostringstream os;
  os.precision(17);
  os << label << " expected " << expected << ", stored " << stored;
  return os.str();
}

}  // namespace

std::vector<Violation> validate_structure(const CascadeGrid& cascade, const GridSet& grids) {
  std::vector<Violation> out;
  auto report = [&out](std::ptrdiff_t level, std::ptrdiff_t entry, std::string invariant, std::string detail) {
    out.push_back({level, entry, std::move(invariant), std::move(detail)});
  };

  try {
    check_gridset(grids);
  } catch (const BuildError& e) {
    report(Violation::none, Violation::none, "grids", e.what());
    return out;
  }

  const std::size_t k = grids.k();
  if (cascade.k() != k) {
    report(Violation::none, Violation::none, "shape",
           describe("level count", k, cascade.k()));
    return out;
  }
  if (cascade.grid_sizes().size() != k) {
    report(Violation::none, Violation::none, "shape", describe("grid size count", k, cascade.grid_sizes().size()));
    return out;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const CascadeLevel& level = cascade.levels()[i];
    if (level.p1.size() != level.size() || level.p2.size() != level.size()) {
      report(static_cast<std::ptrdiff_t>(i), Violation::none, "shape", "bridge columns differ in length from values");
      return out;
    }
    if (cascade.grid_sizes()[i] != grids.grids[i].size())
      report(static_cast<std::ptrdiff_t>(i), Violation::none, "grid-size",
             describe("grid size", grids.grids[i].size(), cascade.grid_sizes()[i]));
  }

  // Everything below orders values, which is meaningless with NaN present.
  bool finite = true;
  for (std::size_t i = 0; i < k; ++i) {
    const std::vector<double>& values = cascade.levels()[i].values;
    for (std::size_t t = 0; t < values.size(); ++t)
      if (!std::isfinite(values[t])) {
        report(static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(t), "finite", "value is not finite");
        finite = false;
      }
  }
  if (!finite) return out;

  for (std::size_t i = 0; i < k; ++i) {
    const auto li = static_cast<std::ptrdiff_t>(i);
    const CascadeLevel& level = cascade.levels()[i];
    const std::vector<double>& own = grids.grids[i].values;
    const bool has_next = i + 1 < k;

    for (std::size_t t = 1; t < level.size(); ++t)
      if (level.values[t] < level.values[t - 1])
        report(li, static_cast<std::ptrdiff_t>(t), "sorted", "value below its predecessor");

    const std::size_t expected_size = own.size() + (has_next ? cascade.levels()[i + 1].size() / 2 : 0);
    if (level.size() != expected_size) report(li, Violation::none, "size", describe("entry count", expected_size, level.size()));

    std::vector<double> rest, missing;
    multiset_difference(sorted_copy(level.values), own, rest, missing);
    for (double v : missing) report(li, Violation::none, "grid-subset", missing_value("missing grid value", v));

    if (has_next) {
      std::vector<double> extra, unpromoted;
      multiset_difference(rest, odd_indexed(cascade.levels()[i + 1].values), extra, unpromoted);
      for (double v : unpromoted)
        report(li, Violation::none, "promotion", missing_value("missing promoted value", v));
      for (double v : extra) report(li, Violation::none, "extra-entry", missing_value("unexpected value", v));
    } else {
      for (double v : rest) report(li, Violation::none, "extra-entry", missing_value("unexpected value", v));
    }

    for (std::size_t t = 0; t < level.size(); ++t) {
      const auto lt = static_cast<std::ptrdiff_t>(t);
      const double v = level.values[t];
      const auto want_p1 = static_cast<std::int64_t>(strict_predecessor(own, v));
      if (level.p1[t] != want_p1) report(li, lt, "p1", describe("p1", want_p1, level.p1[t]));
      const std::int64_t want_p2 =
          has_next ? static_cast<std::int64_t>(strict_predecessor(cascade.levels()[i + 1].values, v)) : -1;
      if (level.p2[t] != want_p2) report(li, lt, "p2", describe("p2", want_p2, level.p2[t]));
    }
  }

  const std::size_t total = cascade.total_entries();
  const std::size_t bound = 2 * grids.total_points();
  if (total > bound) report(Violation::none, Violation::none, "bound", describe("total entries at most", bound, total));
  return out;
}

std::optional<GridSet> recover_grids(const CascadeGrid& cascade) {
  const std::size_t k = cascade.k();
  GridSet grids;
  grids.grids.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::vector<double> values = sorted_copy(cascade.levels()[i].values);
    if (i + 1 == k) {
      grids.grids[i].values = values;
      continue;
    }
    std::vector<double> missing;
    multiset_difference(values, odd_indexed(cascade.levels()[i + 1].values), grids.grids[i].values, missing);
    if (!missing.empty()) return std::nullopt;
  }
  return grids;
}

StructureStats structure_stats(const CascadeGrid& cascade) {
  StructureStats s;
  s.k = cascade.k();
  for (const CascadeLevel& level : cascade.levels()) s.level_sizes.push_back(level.size());
  s.total_entries = cascade.total_entries();
  s.total_grid_points = std::accumulate(cascade.grid_sizes().begin(), cascade.grid_sizes().end(), std::size_t{0});
  s.ratio = s.total_grid_points == 0 ? 0.0
                                     : static_cast<double>(s.total_entries) / static_cast<double>(s.total_grid_points);
  s.memory_bytes = s.total_entries * entry_width;
  return s;
}

}  // namespace fcgrid
