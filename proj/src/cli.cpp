#include "fcgrid/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "fcgrid/cascade.hpp"
#include "fcgrid/errors.hpp"
#include "fcgrid/grid_io.hpp"
#include "fcgrid/gridgen.hpp"
#include "fcgrid/verify.hpp"
#include "fcgrid/xsec.hpp"

namespace fcgrid {

namespace {

/// Failure that maps straight to an exit code, with a message for stderr.
struct CommandError {
  int code;
  std::string message;
};

double parse_key(const std::string& text) {
  double key = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, key);
  if (ec != std::errc{} || ptr != end) throw CommandError{exit_usage, "invalid key '" + text + "'"};
  if (std::isnan(key)) throw InvalidArgument("key is NaN");
  return key;
}

GridDocument load_document(const std::string& path) { return parse_document(read_file(path)); }

std::vector<std::uint8_t> load_bytes(const std::string& path) {
  const std::string raw = read_file(path);
  return {raw.begin(), raw.end()};
}

void print_stats(std::ostream& out, const StructureStats& s, bool tsv) {
  if (tsv) {
    out << "k\tlevel_sizes\ttotal_entries\tgrid_points\tratio\tmemory_bytes\tbound\n" << s.k << '\t';
    for (std::size_t i = 0; i < s.level_sizes.size(); ++i) out << (i ? "," : "") << s.level_sizes[i];
    out << '\t' << s.total_entries << '\t' << s.total_grid_points << '\t' << s.ratio << '\t' << s.memory_bytes
        << '\t' << (s.bound_holds() ? "PASS" : "FAIL") << '\n';
    return;
  }
  out << "grids:         " << s.k << '\n' << "level sizes:  ";
  for (std::size_t size : s.level_sizes) out << ' ' << size;
  out << '\n'
      << "total entries: " << s.total_entries << '\n'
      << "grid points:   " << s.total_grid_points << '\n'
      << "ratio:         " << s.ratio << '\n'
      << "memory:        " << s.memory_bytes << " bytes\n"
      << "bound:         " << (s.bound_holds() ? "PASS" : "FAIL") << " (" << s.total_entries
      << " <= " << 2 * s.total_grid_points << ")\n";
}

struct GenArgs {
  GenSpec spec{4, 64, 1024};
  bool paper_example = false;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GridDocument doc;
  if (a.paper_example) {
    doc.grids = paper_example_gridset();
  } else {
    GeneratedGrids g = generate_gridset(a.spec);
    doc.grids = std::move(g.grids);
    doc.sigma = std::move(g.sigma);
  }
  const std::string text = write_document(doc);
  if (a.out.empty())
    out << text;
  else
    write_file(a.out, text);
  return exit_ok;
}

struct BuildArgs {
  std::string grids;
  std::string out;
  bool tsv = false;
};

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  const GridSet grids = load_document(a.grids).grids;
  const CascadeGrid cascade = build_cascade(grids);
  const std::vector<Violation> violations = validate_structure(cascade, grids);
  print_stats(out, structure_stats(cascade), a.tsv);
  if (!violations.empty()) {
    for (const Violation& v : violations) err << "violation: " << v.to_string() << '\n';
    return exit_violation;
  }
  const std::vector<std::uint8_t> bytes = encode_cascade(cascade);
  write_file(a.out, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  return exit_ok;
}

struct QueryArgs {
  std::string grids;
  std::string cascade;
  std::string key;
  bool stats = false;
};

int cmd_query(const QueryArgs& a, std::ostream& out) {
  const double key = parse_key(a.key);
  const GridDocument doc = load_document(a.grids);
  const CascadeGrid cascade = a.cascade.empty() ? build_cascade(doc.grids) : decode_cascade(load_bytes(a.cascade));

  const LookupTrace trace = cascade_lookup_traced(cascade, doc.grids, key);
  const LookupResult naive = naive_lookup(doc.grids, key);
  std::vector<NuclideTable> tables;
  if (doc.sigma) tables = make_tables(doc.grids, *doc.sigma);

  bool agree = true;
  out.precision(17);
  for (std::size_t i = 0; i < doc.grids.k(); ++i) {
    const std::size_t fc = trace.result.indices[i];
    out << "grid " << (i + 1) << ": fc " << fc << ", naive " << naive.indices[i];
    if (!tables.empty()) out << ", sigma " << interp_sigma(tables[i], fc, key);
    out << '\n';
    agree = agree && fc == naive.indices[i];
  }
  if (a.stats) {
    out << "binary search comparisons: " << trace.binary_search_comparisons << '\n' << "level comparisons:";
    for (std::size_t c : trace.per_level_comparisons) out << ' ' << c;
    out << '\n' << "total comparisons: " << trace.total_comparisons() << '\n';
  }
  out << (agree ? "agreement" : "MISMATCH") << '\n';
  return agree ? exit_ok : exit_violation;
}

struct VerifyArgs {
  std::string grids;
  std::string cascade;
  std::size_t random = 0;
  std::uint64_t seed = 0;
  std::size_t keys = 1000;
  std::vector<std::string> extra_keys;
  unsigned threads = 1;
  bool tsv = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyReport report;
  if (!a.grids.empty()) {
    const GridSet grids = load_document(a.grids).grids;
    const CascadeGrid cascade =
        a.cascade.empty() ? build_cascade(grids) : decode_cascade_unchecked(load_bytes(a.cascade));
    SeededRng rng(a.seed);
    std::vector<double> keys = verification_keys(grids, a.keys, rng);
    for (const std::string& k : a.extra_keys) keys.push_back(parse_key(k));
    report = verify_gridset(grids, cascade, keys);
    report.random_keys_per_set = a.keys;
  } else {
    report = verify_random(a.random, a.seed, a.keys, a.threads);
  }
  print_report(out, report, a.tsv);
  return report.ok() ? exit_ok : exit_violation;
}

struct BenchArgs {
  std::string grids;
  std::size_t k = 8;
  std::size_t n = 1024;
  std::size_t queries = 100000;
  std::uint64_t seed = 0;
  bool tsv = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  GridSet grids;
  if (!a.grids.empty()) {
    grids = load_document(a.grids).grids;
  } else {
    GenSpec spec;
    spec.k = a.k;
    spec.size_min = spec.size_max = a.n;
    spec.seed = a.seed;
    grids = generate_gridset(spec).grids;
  }
  const BenchReport report = run_bench(grids, a.queries, a.seed);
  print_bench(out, report, a.tsv);
  return report.bound_holds() ? exit_ok : exit_violation;
}

struct StatsArgs {
  std::string grids;
  bool tsv = false;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const StructureStats stats = structure_stats(build_cascade(load_document(a.grids).grids));
  print_stats(out, stats, a.tsv);
  return stats.bound_holds() ? exit_ok : exit_violation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional-cascading cascade grid: build, query, verify and benchmark", "fcgrid"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a grid set document");
  gen_cmd->add_option("--k", gen.spec.k, "Number of grids")->capture_default_str();
  gen_cmd->add_option("--min-size", gen.spec.size_min, "Smallest grid length")->capture_default_str();
  gen_cmd->add_option("--max-size", gen.spec.size_max, "Largest grid length")->capture_default_str();
  gen_cmd->add_option("--energy-min", gen.spec.energy_min, "Lowest energy (eV)")->capture_default_str();
  gen_cmd->add_option("--energy-max", gen.spec.energy_max, "Highest energy (eV)")->capture_default_str();
  gen_cmd->add_option("--dup-fraction", gen.spec.duplicate_fraction, "Fraction of doubled points")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_flag("--sigma", gen.spec.with_sigma, "Emit a sigma block");
  gen_cmd->add_flag("--paper-example", gen.paper_example, "Emit the fixed three-grid example");
  gen_cmd->add_option("--out", gen.out, "Output path (stdout if omitted)");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build, validate and snapshot a cascade");
  build_cmd->add_option("--grids", build.grids, "Grid set document")->required();
  build_cmd->add_option("--out", build.out, "Snapshot path")->required();
  build_cmd->add_flag("--tsv", build.tsv, "Tab-separated output");

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Look up one key in every grid");
  query_cmd->add_option("--grids", query.grids, "Grid set document")->required();
  query_cmd->add_option("--cascade", query.cascade, "Snapshot to use instead of building");
  query_cmd->add_option("--key", query.key, "Energy (eV)")->required();
  query_cmd->add_flag("--stats", query.stats, "Print comparison counts");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Differential check of cascade against the naive oracle");
  auto* verify_grids = verify_cmd->add_option("--grids", verify.grids, "Grid set document");
  auto* verify_random = verify_cmd->add_option("--random", verify.random, "Number of generated grid sets");
  verify_grids->excludes(verify_random);
  verify_cmd->add_option("--cascade", verify.cascade, "Snapshot to verify (with --grids)")->needs(verify_grids);
  verify_cmd->add_option("--seed", verify.seed, "Seed for grid sets and keys")->capture_default_str();
  verify_cmd->add_option("--keys", verify.keys, "Random keys per grid set")->capture_default_str();
  verify_cmd->add_option("--key", verify.extra_keys, "Additional key (repeatable, with --grids)")
      ->needs(verify_grids);
  verify_cmd->add_option("--threads", verify.threads, "Worker threads")->capture_default_str();
  verify_cmd->add_flag("--tsv", verify.tsv, "Tab-separated report");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time and count comparisons, cascade vs k binary searches");
  auto* bench_grids = bench_cmd->add_option("--grids", bench.grids, "Grid set document");
  bench_cmd->add_option("--k", bench.k, "Generated grid count (without --grids)")->capture_default_str()->excludes(
      bench_grids);
  bench_cmd->add_option("--n", bench.n, "Generated grid length (without --grids)")->capture_default_str()->excludes(
      bench_grids);
  bench_cmd->add_option("--queries", bench.queries, "Number of queries")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Key stream seed")->capture_default_str();
  bench_cmd->add_flag("--tsv", bench.tsv, "Tab-separated report");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Structure statistics and the size bound");
  stats_cmd->add_option("--grids", stats.grids, "Grid set document")->required();
  stats_cmd->add_flag("--tsv", stats.tsv, "Tab-separated output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (verify_cmd->parsed() && verify.grids.empty() && verify.random == 0)
      throw CLI::ValidationError("verify", "one of --grids or --random N (N >= 1) is required");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (build_cmd->parsed()) return cmd_build(build, out, err);
    if (query_cmd->parsed()) return cmd_query(query, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
    if (stats_cmd->parsed()) return cmd_stats(stats, out);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const InvalidArgument& e) {
    err << "error: invalid argument: " << e.what() << '\n';
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return exit_usage;
  } catch (const DecodeError& e) {
    err << "error: snapshot: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace fcgrid
