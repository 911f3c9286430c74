#pragma once

// Self-check suites behind `ksetlab verify`. Each suite reports the number of
// checks run and the first few failures; nothing here throws on a failed
// check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "ksetlab/harness.hpp"

namespace ksetlab {

struct SuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::vector<std::string> failures;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return failures.empty(); }
  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 20) failures.push_back(what);
    else if (!ok) failures.back() = "(further failures truncated) " + what;
  }
};

struct VerifyOptions {
  std::size_t min_n = 4;
  std::size_t max_n = 12;
  std::size_t bounds_max_n = 300;
  std::int64_t max_b = 1000;
  std::size_t count = 20;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

inline nlohmann::json to_json(const SuiteResult& r) {
  return {{"name", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", r.failures},
          {"details", r.details}};
}

// Halfperiod (<=k)-counts against the pair-line oracle.
inline SuiteResult verify_oracle(const VerifyOptions& o) {
  SuiteResult r{"oracle"};
  const std::size_t cap = default_oracle_cap();
  for (std::size_t n = std::max<std::size_t>(o.min_n, 1); n <= o.max_n; ++n) {
    if (n > cap) {
      r.check(false, "n=" + std::to_string(n) + " exceeds the oracle cap " + std::to_string(cap));
      break;
    }
    const auto outcomes = parallel_map<std::string>(o.count + (n % 3 == 0 ? o.count : 0), o.workers, [&](std::size_t i) {
      const bool generated = i >= o.count;
      const PointSet s = generated ? generate(n, derive_seed(o.seed, n, i)) : random_point_set(n, derive_seed(o.seed, n, i));
      const bool ok = kset_vector_from_halfperiod(build_halfperiod(s)) == k_set_oracle(s, cap);
      return ok ? std::string() : "n=" + std::to_string(n) + " instance " + std::to_string(i);
    });
    for (const auto& f : outcomes) r.check(f.empty(), f);
  }
  return r;
}

// cr(S) - sum_k (n-2k-1) e_{<=k}(S) depends on n only.
inline SuiteResult verify_residual(const VerifyOptions& o) {
  SuiteResult r{"residual"};
  for (std::size_t n = std::max<std::size_t>(o.min_n, 5); n <= o.max_n; ++n) {
    const auto residuals = parallel_map<std::int64_t>(o.count, o.workers, [&](std::size_t i) {
      const PointSet s = random_point_set(n, derive_seed(o.seed, n, i));
      const KSetVector ks = kset_vector_from_halfperiod(build_halfperiod(s));
      std::int64_t sum = 0;
      for (std::size_t k = 1; 2 * k < n; ++k) sum += static_cast<std::int64_t>(n - 2 * k - 1) * ks.e_le(k);
      return crossing_number(s) - sum;
    });
    const bool constant = std::all_of(residuals.begin(), residuals.end(), [&](auto v) { return v == residuals.front(); });
    r.check(constant, "residual varies for n=" + std::to_string(n));
    if (!residuals.empty()) r.details[std::to_string(n)] = residuals.front();
  }
  return r;
}

inline std::vector<std::size_t> multiples_of_three(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t n = std::max<std::size_t>(3, (lo + 2) / 3 * 3); n <= hi; n += 3) out.push_back(n);
  return out;
}

// Expected number of heterogeneous i-critical swaps (positions i and n-i) in
// a 3-decomposable halfperiod, 1 <= i <= n/2.
inline std::int64_t expected_het_i_critical(std::int64_t i, std::int64_t n) {
  const std::int64_t s = n / 3;
  if (i <= s) return 3 * i;
  if (2 * i == n) return 2 * n - 3 * i;
  return (2 * n - 3 * i) + (2 * n - 3 * (n - i));
}

// Heterogeneous exactness and the ceil(Y) and L bounds on generated sets.
inline SuiteResult verify_generated(const VerifyOptions& o, const std::string& which) {
  SuiteResult r{which};
  for (std::size_t n : multiples_of_three(std::max<std::size_t>(o.min_n, 6), o.max_n)) {
    const auto ni = static_cast<std::int64_t>(n);
    const auto outcomes = parallel_map<std::vector<std::string>>(o.count, o.workers, [&](std::size_t i) {
      std::vector<std::string> bad;
      const std::string tag = "n=" + std::to_string(n) + " instance " + std::to_string(i);
      const PointSet s = generate(n, derive_seed(o.seed, n, i));
      const Halfperiod h = build_halfperiod(s);
      const KSetVector ks = kset_vector_from_halfperiod(h);
      for (std::size_t k = 1; 2 * k < n; ++k) {
        const auto ki = static_cast<std::int64_t>(k);
        const auto rep = critical_counts(h, k, *s.labels);
        if (which == "het") {
          if (*rep.het_le_k != het_exact(ki, ni)) bad.push_back(tag + " het_le_k k=" + std::to_string(k));
          if (k == 1) {
            for (std::size_t i2 = 1; i2 <= n / 2; ++i2)
              if (rep.het_i_critical[i2 - 1] != expected_het_i_critical(static_cast<std::int64_t>(i2), ni))
                bad.push_back(tag + " het i-critical i=" + std::to_string(i2));
          }
        } else {
          if (ks.e_le(k) < nle_lower(ki, ni)) bad.push_back(tag + " e_le_k < ceil(Y) at k=" + std::to_string(k));
          if (ni - 2 * ki - 1 > 0 && Rational(ks.e_le(k)) < l_bound(ki, ni))
            bad.push_back(tag + " e_le_k < L at k=" + std::to_string(k));
        }
      }
      return bad;
    });
    for (const auto& v : outcomes) {
      r.check(v.empty(), v.empty() ? std::string() : v.front());
    }
  }
  return r;
}

// D_{k,n} edge count against the closed form, plus the degree constraints.
inline SuiteResult verify_edges(const VerifyOptions& o) {
  SuiteResult r{"edges"};
  std::int64_t cases = 0;
  for (std::size_t n : multiples_of_three(6, o.max_n)) {
    const auto ni = static_cast<std::int64_t>(n);
    for (std::int64_t k = ni / 3 + 1; 2 * k < ni; ++k) {
      const std::int64_t m = ni - 2 * k - 1;
      if (m < 1) continue;
      ++cases;
      const auto g = build_dkn(k, ni);
      const auto e = e_kn(k, ni);
      const std::string tag = "(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")";
      r.check(static_cast<std::int64_t>(g.edge_count()) == e.total, "edge count mismatch " + tag);
      r.check(e.a >= 0 && e.b >= 0 && e.c >= 0, "negative summand " + tag);
      r.check(satisfies_degree_bounds(g, static_cast<std::size_t>(m)), "degree bound violated " + tag);
      r.check(e.total <= binom(ni / 3, 2), "E exceeds C(s,2) " + tag);
    }
  }
  r.details["cases"] = cases;
  return r;
}

// f(b, r) >= -1/3 on the integer grid and L - Y >= 0.
inline SuiteResult verify_claim1(const VerifyOptions& o) {
  SuiteResult r{"claim1"};
  Rational best = claim1_f(0, 1);
  std::pair<std::int64_t, std::int64_t> argmin{0, 1};
  for (std::int64_t b = 0; b <= o.max_b; ++b)
    for (std::int64_t rr = 1; rr <= b + 1; ++rr) {
      const Rational f = claim1_f(b, rr);
      if (f < best) {
        best = f;
        argmin = {b, rr};
      }
      r.check(f >= make_rational(-1, 3), "f below -1/3 at b=" + std::to_string(b) + " r=" + std::to_string(rr));
    }
  r.check(best == 0 && argmin == std::pair<std::int64_t, std::int64_t>{0, 1}, "minimum of f is not 0 at (0,1)");
  r.details["min_f"] = to_fraction_string(best);
  r.details["argmin"] = {argmin.first, argmin.second};
  for (std::size_t n : multiples_of_three(3, o.bounds_max_n)) {
    const auto ni = static_cast<std::int64_t>(n);
    for (std::int64_t k = 1; 2 * k < ni; ++k) {
      if (ni - 2 * k - 1 == 0) continue;
      r.check(l_bound(k, ni) - y_bound(k, ni) >= 0, "L < Y at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return r;
}

inline SuiteResult verify_constant(const VerifyOptions&) {
  SuiteResult r{"constant"};
  const double coef = cr_coefficient();
  const double exact = cr_coefficient_exact().convert_to<double>();
  r.check(decimal(coef, 6) == "0.380029", "coefficient does not round to 0.380029");
  r.check(std::abs(coef - exact) < 1e-10, "coefficient differs from (2/27)(15 - pi^2)");
  r.check(gap_closure(0.380029) > 0.40, "gap closure not above 40%");
  r.details["coefficient"] = decimal(coef, 12);
  r.details["gap_closure"] = gap_closure(0.380029);
  return r;
}

inline SuiteResult verify_series(const VerifyOptions&) {
  SuiteResult r{"series"};
  const auto rep = series_and_integral_checks();
  r.check(rep.series_error < 1e-9, "partial series far from 79/8 - pi^2");
  for (const auto& q : rep.integrals) r.check(q.error < 1e-12, "quadrature mismatch: " + q.name);
  r.check(rep.normalized_first == make_rational(3, 8), "normalized first integral is not 3/8");
  r.check(rep.normalized_second == make_rational(1, 216), "normalized second integral is not 1/216");
  r.details["series_error"] = rep.series_error;
  return r;
}

inline SuiteResult verify_decomp(const VerifyOptions& o) {
  SuiteResult r{"decomp"};
  for (std::size_t n : multiples_of_three(3, o.max_n)) {
    const auto outcomes = parallel_map<std::string>(o.count, o.workers, [&](std::size_t i) -> std::string {
      const std::string tag = "n=" + std::to_string(n) + " instance " + std::to_string(i);
      PointSet s = generate(n, derive_seed(o.seed, n, i));
      const auto w = check_partition(s, *s.labels);
      if (!w || !verify_witness(s, *w)) return tag + ": generated labels rejected";
      s.labels.reset();
      const auto found = find_partition(s);
      if (!found || !verify_witness(s, *found)) return tag + ": find_partition failed";
      return {};
    });
    for (const auto& f : outcomes) r.check(f.empty(), f);
  }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracle", "residual",      "het",    "lower-bound", "edges",
                                              "claim1", "constant", "series", "decomp"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, const VerifyOptions& o) {
  if (name == "oracle") return verify_oracle(o);
  if (name == "residual") return verify_residual(o);
  if (name == "het") return verify_generated(o, "het");
  if (name == "lower-bound") return verify_generated(o, "lower-bound");
  if (name == "edges") return verify_edges(o);
  if (name == "claim1") return verify_claim1(o);
  if (name == "constant") return verify_constant(o);
  if (name == "series") return verify_series(o);
  if (name == "decomp") return verify_decomp(o);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace ksetlab
