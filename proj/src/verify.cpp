#include "fcgrid/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

namespace fcgrid {

namespace {

constexpr std::size_t max_samples = 10;

std::string format_key(double key) {
  std::ostringstream os;
  os.precision(17);
  os << key;
  return os.str();
}

std::pair<double, double> value_span(const GridSet& grids) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const EnergyGrid& g : grids.grids)
    if (!g.values.empty()) {
      lo = std::min(lo, g.values.front());
      hi = std::max(hi, g.values.back());
    }
  return {lo, hi};
}

}  // namespace

std::vector<double> boundary_keys(const GridSet& grids) {
  std::vector<double> distinct;
  for (const EnergyGrid& g : grids.grids) distinct.insert(distinct.end(), g.values.begin(), g.values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.empty()) return {};

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> keys;
  keys.reserve(3 * distinct.size() + 2);
  for (double v : distinct) {
    keys.push_back(v);
    keys.push_back(std::nextafter(v, -inf));
    keys.push_back(std::nextafter(v, inf));
  }
  keys.push_back(distinct.front() - 1.0);
  keys.push_back(distinct.back() + 1.0);
  return keys;
}

std::vector<double> verification_keys(const GridSet& grids, std::size_t random_keys, SeededRng& rng) {
  std::vector<double> keys = boundary_keys(grids);
  if (keys.empty()) return keys;
  const auto [lo, hi] = value_span(grids);
  for (std::size_t i = 0; i < random_keys; ++i) keys.push_back(rng.uniform(lo, hi));
  return keys;
}

void VerifyReport::merge(const VerifyReport& other) {
  gridsets += other.gridsets;
  keys += other.keys;
  random_keys_per_set = std::max(random_keys_per_set, other.random_keys_per_set);
  mismatches += other.mismatches;
  if (!first_mismatch) first_mismatch = other.first_mismatch;
  structural_violations += other.structural_violations;
  for (const auto& s : other.violation_samples)
    if (violation_samples.size() < max_samples) violation_samples.push_back(s);
  efficiency_violations += other.efficiency_violations;
  if (!first_efficiency_violation) first_efficiency_violation = other.first_efficiency_violation;
}

VerifyReport verify_gridset(const GridSet& grids, const CascadeGrid& cascade, std::span<const double> keys,
                            std::size_t gridset_index) {
  VerifyReport report;
  report.gridsets = 1;

  const std::vector<Violation> violations = validate_structure(cascade, grids);
  report.structural_violations = violations.size();
  for (const Violation& v : violations) {
    if (report.violation_samples.size() == max_samples) break;
    report.violation_samples.push_back("grid set " + std::to_string(gridset_index) + ": " + v.to_string());
  }
  if (!violations.empty()) return report;

  const std::size_t depth_bound = search_depth(cascade.level(0).size());
  auto efficiency = [&](double key, const std::string& what) {
    ++report.efficiency_violations;
    if (!report.first_efficiency_violation)
      report.first_efficiency_violation =
          "grid set " + std::to_string(gridset_index) + ", key " + format_key(key) + ": " + what;
  };

  // Reference indices come from one linear sweep per grid over the keys in
  // ascending order: the naive scan, amortized across all keys.
  std::vector<double> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> cursor(grids.k(), 0);

  for (double key : sorted) {
    ++report.keys;
    const LookupTrace trace = cascade.lookup_traced(key);

    bool counted = false;
    for (std::size_t i = 0; i < grids.k(); ++i) {
      const std::vector<double>& v = grids.grids[i].values;
      while (cursor[i] + 1 < v.size() && v[cursor[i] + 1] <= key) ++cursor[i];
      if (trace.result.indices[i] == cursor[i]) continue;
      if (!counted) ++report.mismatches;
      counted = true;
      if (!report.first_mismatch)
        report.first_mismatch = Mismatch{gridset_index, key, i, cursor[i], trace.result.indices[i]};
    }

    if (trace.binary_searches != 1)
      efficiency(key, std::to_string(trace.binary_searches) + " binary searches");
    if (trace.binary_search_comparisons > depth_bound)
      efficiency(key, std::to_string(trace.binary_search_comparisons) + " binary-search comparisons exceed " +
                          std::to_string(depth_bound));
    for (std::size_t i = 0; i < trace.per_level_comparisons.size(); ++i)
      if (trace.per_level_comparisons[i] > 1)
        efficiency(key, "level " + std::to_string(i + 2) + " made " +
                            std::to_string(trace.per_level_comparisons[i]) + " comparisons");
  }
  return report;
}

VerifyReport verify_random(std::size_t count, std::uint64_t seed, std::size_t random_keys, unsigned threads) {
  std::vector<VerifyReport> per_set(count);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t s = first; s < count; s += stride) {
      const GenSpec spec = fuzz_spec(seed, s);
      const GridSet grids = generate_gridset(spec).grids;
      const CascadeGrid cascade = build_cascade(grids);
      SeededRng key_rng(spec.seed ^ 0x5DEECE66DULL);
      const std::vector<double> keys = verification_keys(grids, random_keys, key_rng);
      per_set[s] = verify_gridset(grids, cascade, keys, s);
      per_set[s].random_keys_per_set = random_keys;
    }
  };

  threads = std::max(1u, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  VerifyReport total;
  total.random_keys_per_set = random_keys;
  for (const VerifyReport& r : per_set) total.merge(r);
  return total;
}

void print_report(std::ostream& os, const VerifyReport& r, bool tsv) {
  if (tsv) {
    os << "gridsets\tkeys\trandom_keys_per_set\tmismatches\tstructural_violations\tefficiency_violations\t"
          "first_mismatch_gridset\tfirst_mismatch_key\tfirst_mismatch_level\texpected\tgot\n";
    os << r.gridsets << '\t' << r.keys << '\t' << r.random_keys_per_set << '\t' << r.mismatches << '\t'
       << r.structural_violations << '\t' << r.efficiency_violations;
    if (r.first_mismatch) {
      const Mismatch& m = *r.first_mismatch;
      os << '\t' << m.gridset << '\t' << format_key(m.key) << '\t' << (m.level + 1) << '\t' << m.expected << '\t'
         << m.got;
    } else {
      os << "\t-\t-\t-\t-\t-";
    }
    os << '\n';
    return;
  }

  os << "grid sets tested:       " << r.gridsets << '\n'
     << "keys checked:           " << r.keys << " (" << r.random_keys_per_set << " random per set + boundary keys)\n"
     << "mismatches:             " << r.mismatches << '\n';
  if (r.first_mismatch) {
    const Mismatch& m = *r.first_mismatch;
    os << "  first: grid set " << m.gridset << ", key " << format_key(m.key) << ", grid " << (m.level + 1)
       << ": expected " << m.expected << ", got " << m.got << '\n';
  }
  os << "structural violations:  " << r.structural_violations << '\n';
  for (const auto& s : r.violation_samples) os << "  " << s << '\n';
  os << "efficiency violations:  " << r.efficiency_violations << '\n';
  if (r.first_efficiency_violation) os << "  first: " << *r.first_efficiency_violation << '\n';
  os << (r.ok() ? "PASS" : "FAIL") << '\n';
}

BenchReport run_bench(const GridSet& grids, std::size_t queries, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  BenchReport report;
  report.k = grids.k();
  report.queries = queries;
  for (const EnergyGrid& g : grids.grids) report.max_grid_size = std::max(report.max_grid_size, g.size());
  report.fc_bound = search_depth(2 * report.max_grid_size) + (report.k - 1);
  report.naive_bound = report.k * search_depth(report.max_grid_size);

  const CascadeGrid cascade = build_cascade(grids);
  const auto [lo, hi] = value_span(grids);
  SeededRng rng(seed);
  std::vector<double> keys(queries);
  for (double& key : keys) key = rng.uniform(lo, hi);

  // Sum of indices keeps both loops from being optimized away.
  std::size_t sink = 0;
  auto run_fc = [&] {
    for (double key : keys)
      for (std::size_t idx : cascade.lookup(key).indices) sink += idx;
  };
  auto run_naive = [&] {
    for (double key : keys)
      for (std::size_t idx : naive_binary_lookup(grids, key).indices) sink += idx;
  };
  auto timed = [](auto&& body) {
    const auto start = clock::now();
    body();
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  run_fc();
  run_naive();
  report.fc_seconds = timed(run_fc);
  report.naive_seconds = timed(run_naive);

  std::size_t fc_total = 0, naive_total = 0;
  for (double key : keys) {
    const std::size_t fc = cascade.lookup_traced(key).total_comparisons();
    std::size_t naive = 0;
    naive_binary_lookup(grids, key, &naive);
    fc_total += fc;
    naive_total += naive;
    report.fc_max_comparisons = std::max(report.fc_max_comparisons, fc);
    report.naive_max_comparisons = std::max(report.naive_max_comparisons, naive);
  }
  if (queries > 0) {
    report.fc_mean_comparisons = static_cast<double>(fc_total) / static_cast<double>(queries);
    report.naive_mean_comparisons = static_cast<double>(naive_total) / static_cast<double>(queries);
  }
  volatile std::size_t keep = sink;
  (void)keep;
  return report;
}

void print_bench(std::ostream& os, const BenchReport& r, bool tsv) {
  if (tsv) {
    os << "k\tmax_grid_size\tqueries\tfc_seconds\tnaive_seconds\tspeedup\tfc_mean_comparisons\tfc_max_comparisons\t"
          "fc_bound\tnaive_mean_comparisons\tnaive_max_comparisons\tnaive_bound\tbound\n";
    os << r.k << '\t' << r.max_grid_size << '\t' << r.queries << '\t' << r.fc_seconds << '\t' << r.naive_seconds
       << '\t' << r.speedup() << '\t' << r.fc_mean_comparisons << '\t' << r.fc_max_comparisons << '\t' << r.fc_bound
       << '\t' << r.naive_mean_comparisons << '\t' << r.naive_max_comparisons << '\t' << r.naive_bound << '\t'
       << (r.bound_holds() ? "PASS" : "FAIL") << '\n';
    return;
  }
  const double q = r.queries > 0 ? static_cast<double>(r.queries) : 1.0;
  os << "grids: " << r.k << ", largest grid: " << r.max_grid_size << ", queries: " << r.queries << '\n'
     << "cascade:  " << r.fc_seconds << " s (" << 1e9 * r.fc_seconds / q << " ns/query), comparisons mean "
     << r.fc_mean_comparisons << ", max " << r.fc_max_comparisons << " (bound " << r.fc_bound << ")\n"
     << "naive:    " << r.naive_seconds << " s (" << 1e9 * r.naive_seconds / q << " ns/query), comparisons mean "
     << r.naive_mean_comparisons << ", max " << r.naive_max_comparisons << " (bound " << r.naive_bound << ")\n"
     << "speedup:  " << r.speedup() << "x\n"
     << "comparison bound: " << (r.bound_holds() ? "PASS" : "FAIL") << '\n';
}

}  // namespace fcgrid
