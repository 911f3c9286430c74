// ksetlab: generate 3-decomposable point sets, count (<=k)-edges, tabulate
// the lower bounds and run the self-check suites.
//
// Exit status: 0 success, 1 verification failure, 2 usage or parse error.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ksetlab/harness.hpp"
#include "ksetlab/verify.hpp"

namespace {

using namespace ksetlab;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string show(const Direction& d) { return "(" + to_fraction_string(d.x) + ", " + to_fraction_string(d.y) + ")"; }

void print_witness(std::ostream& out, const DecompositionWitness& w) {
  for (std::size_t i = 0; i < w.directions.size(); ++i) out << "l" << i + 1 << " " << show(w.directions[i]) << "\n";
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string shape = "triangle-clusters";
  std::string out;
};

int run_gen(const GenArgs& a) {
  if (a.n == 0 || a.n % 3 != 0) throw UsageError("--n must be a positive multiple of 3, got " + std::to_string(a.n));
  const auto shape = parse_shape(a.shape);
  if (!shape) throw UsageError("unknown --shape '" + a.shape + "'");
  const PointSet s = generate(a.n, a.seed, *shape);
  const auto w = check_partition(s, *s.labels);
  if (!w) throw std::logic_error("generated set failed its own check");
  if (a.out.empty()) {
    std::cout << emit_point_set(s);
    print_witness(std::cerr, *w);
  } else {
    write_point_set(a.out, s);
    print_witness(std::cout, *w);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string in;
  std::optional<std::size_t> k_min, k_max;
  bool require_decomp = false;
  bool two_condition = false;
};

int run_analyze(const AnalyzeArgs& a) {
  const PointSet s = read_point_set(a.in);
  AnalyzeOptions opts;
  opts.k_min = a.k_min;
  opts.k_max = a.k_max;
  opts.mode = a.two_condition ? DecompositionMode::two_condition : DecompositionMode::three_condition;
  const AnalyzeResult r = analyze(s, opts);
  if (a.require_decomp && !r.witness)
    throw UsageError("refusing: " + a.in + " is not 3-decomposable (no partition passes the check)");
  if (r.witness) {
    std::cerr << (r.labels_used ? "3-decomposable with the file's labels\n" : "3-decomposable with a recovered partition\n");
    print_witness(std::cerr, *r.witness);
  } else {
    std::cerr << "not 3-decomposable; bound columns are n/a\n";
  }
  CsvWriter csv(std::cout);
  csv.row(report_header());
  for (const auto& row : r.rows) csv.row(row.cells());
  return r.all_satisfied() ? kOk : kFailure;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  std::optional<std::int64_t> n, n_min, n_max, k;
  bool coefficient = false;
};

int run_bounds(const BoundsArgs& a) {
  std::int64_t lo = 0, hi = -1;
  if (a.n) {
    if (a.n_min || a.n_max) throw UsageError("--n excludes --n-min/--n-max");
    lo = hi = *a.n;
  } else if (a.n_min || a.n_max) {
    if (!a.n_min || !a.n_max) throw UsageError("--n-min and --n-max go together");
    lo = *a.n_min;
    hi = *a.n_max;
  }
  const bool have_range = hi >= lo;
  if (!have_range && !a.coefficient) throw UsageError("give --n, --n-min/--n-max or --coefficient");

  if (a.coefficient && !have_range) {
    std::cout << decimal(cr_coefficient(), 12) << "\n";
    return kOk;
  }
  if (lo < 3) throw UsageError("n must be at least 3");
  if (lo == hi && lo % 3 != 0) throw UsageError("n must be a multiple of 3");

  CsvWriter csv(std::cout);
  if (a.coefficient) {
    csv.row(coefficient_header());
    for (std::int64_t n = lo; n <= hi; ++n)
      if (n % 3 == 0) csv.row(coefficient_row(n));
    return kOk;
  }
  csv.row(bounds_header());
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (n % 3 != 0) continue;
    if (a.k) {
      if (*a.k < 1 || 2 * *a.k >= n) throw UsageError("--k must satisfy 1 <= k < n/2");
      csv.row(bounds_row(n, *a.k));
      continue;
    }
    for (std::int64_t k = 1; 2 * k < n; ++k) csv.row(bounds_row(n, k));
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  VerifyOptions opts;
};

int run_verify(const VerifyArgs& a) {
  std::vector<std::string> names;
  if (a.suite == "all") names = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), a.suite) != suite_names().end()) names = {a.suite};
  else throw UsageError("unknown --suite '" + a.suite + "'");

  nlohmann::json out;
  out["suites"] = nlohmann::json::array();
  bool passed = true;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, a.opts);
    passed = passed && r.passed();
    out["suites"].push_back(to_json(r));
  }
  out["passed"] = passed;
  std::cout << out.dump(2) << "\n";
  return passed ? kOk : kFailure;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::vector<std::size_t> ns;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::string shape = "triangle-clusters";
  std::size_t workers = 1;
};

int run_sweep(const SweepArgs& a) {
  const auto shape = parse_shape(a.shape);
  if (!shape) throw UsageError("unknown --shape '" + a.shape + "'");
  for (std::size_t n : a.ns)
    if (n == 0 || n % 3 != 0) throw UsageError("every --n must be a positive multiple of 3");

  struct Instance {
    std::uint64_t seed;
    AnalyzeResult result;
  };
  CsvWriter csv(std::cout);
  std::vector<std::string> header{"seed", "instance"};
  header.insert(header.end(), report_header().begin(), report_header().end());
  csv.row(header);
  bool ok = true;
  for (std::size_t n : a.ns) {
    const auto instances = parallel_map<Instance>(a.count, a.workers, [&](std::size_t i) {
      const std::uint64_t seed = derive_seed(a.seed, n, i);
      return Instance{seed, analyze(generate(n, seed, *shape))};
    });
    for (std::size_t i = 0; i < instances.size(); ++i) {
      ok = ok && instances[i].result.all_satisfied() && instances[i].result.witness.has_value();
      for (const auto& row : instances[i].result.rows) {
        std::vector<std::string> cells{std::to_string(instances[i].seed), std::to_string(i)};
        const auto rest = row.cells();
        cells.insert(cells.end(), rest.begin(), rest.end());
        csv.row(cells);
      }
    }
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-set and crossing-number lower-bound toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a labeled 3-decomposable point set");
  gen_cmd->add_option("--n", gen.n, "number of points (multiple of 3)")->required();
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->required();
  gen_cmd->add_option("--shape", gen.shape, "triangle-clusters | near-optimal-template")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output file (stdout when omitted)");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "per-k counts and bounds for a point-set file");
  an_cmd->add_option("--in", an.in, "point-set JSON file")->required();
  an_cmd->add_option("--k-min", an.k_min, "smallest k");
  an_cmd->add_option("--k-max", an.k_max, "largest k");
  an_cmd->add_flag("--require-decomp", an.require_decomp, "refuse sets that are not 3-decomposable");
  an_cmd->add_flag("--two-condition", an.two_condition, "drop the third direction condition");

  BoundsArgs bd;
  auto* bd_cmd = app.add_subcommand("bounds", "tabulate Y, L, E and the crossing coefficient");
  bd_cmd->add_option("--n", bd.n, "single n (multiple of 3)");
  bd_cmd->add_option("--n-min", bd.n_min, "range start");
  bd_cmd->add_option("--n-max", bd.n_max, "range end (non-multiples of 3 are skipped)");
  bd_cmd->add_option("--k", bd.k, "single k");
  bd_cmd->add_flag("--coefficient", bd.coefficient, "crossing coefficient, or cr_lower(n)/C(n,4) over the range");

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "run self-check suites, JSON summary on stdout");
  vf_cmd->add_option("--suite", vf.suite, "all | oracle | residual | het | lower-bound | edges | claim1 | constant | series | decomp")
      ->capture_default_str();
  vf_cmd->add_option("--min-n", vf.opts.min_n, "smallest n for sampled suites")->capture_default_str();
  vf_cmd->add_option("--max-n", vf.opts.max_n, "largest n for sampled suites and edges")->capture_default_str();
  vf_cmd->add_option("--bounds-max-n", vf.opts.bounds_max_n, "largest n for the L - Y scan")->capture_default_str();
  vf_cmd->add_option("--max-b", vf.opts.max_b, "largest b in the f(b, r) scan")->capture_default_str();
  vf_cmd->add_option("--count", vf.opts.count, "instances per n")->capture_default_str();
  vf_cmd->add_option("--seed", vf.opts.seed, "base seed")->capture_default_str();
  vf_cmd->add_option("--parallel", vf.opts.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "analyze many generated sets, one CSV");
  sw_cmd->add_option("--n", sw.ns, "comma-separated sizes")->required()->delimiter(',');
  sw_cmd->add_option("--count", sw.count, "instances per n")->capture_default_str();
  sw_cmd->add_option("--seed", sw.seed, "base seed")->required();
  sw_cmd->add_option("--shape", sw.shape, "triangle-clusters | near-optimal-template")->capture_default_str();
  sw_cmd->add_option("--parallel", sw.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*an_cmd) return run_analyze(an);
    if (*bd_cmd) return run_bounds(bd);
    if (*vf_cmd) return run_verify(vf);
    if (*sw_cmd) return run_sweep(sw);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
