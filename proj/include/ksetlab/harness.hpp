#pragma once

// Experiment plumbing behind the CLI: per-k analysis rows for a point set,
// bound tables, seeded instance families, and a bounded worker pool whose
// results come back in input order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ksetlab/bounds.hpp"
#include "ksetlab/circular_sequence.hpp"
#include "ksetlab/decomposability.hpp"
#include "ksetlab/geometry.hpp"
#include "ksetlab/io.hpp"

namespace ksetlab {

// fn(i) for i in [0, count) on at most `workers` threads; out[i] = fn(i).
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, std::size_t workers, F&& fn) {
  std::vector<std::optional<R>> slots(count);
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < std::min(workers, count); ++w)
        pool.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
              slots[i].emplace(fn(i));
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n, std::uint64_t index) {
  SplitMix64 mix(base ^ (n * 0x100000001b3ULL) ^ (index << 32) ^ index);
  return mix.next();
}

// n points with integer coordinates in [0, grid]^2, redrawn until in general
// position.
inline PointSet random_point_set(std::size_t n, std::uint64_t seed, std::int64_t grid = 1000) {
  SplitMix64 rng(seed);
  PointSet s;
  while (s.points.size() < n) {
    Point p{Rational(rng.uniform(0, grid)), Rational(rng.uniform(0, grid))};
    s.points.push_back(std::move(p));
    if (!is_general_position(s.points)) s.points.pop_back();
  }
  return s;
}

inline std::string decimal(const Rational& r, int digits = 10) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << to_double(r);
  return os.str();
}

inline std::string decimal(double v, int digits = 10) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline constexpr const char* kUndefined = "undefined";
inline constexpr const char* kNotApplicable = "n/a";

// ---------------------------------------------------------------------------
// analyze

struct ReportRow {
  std::size_t n = 0, k = 0;
  std::int64_t e_k = 0, e_le_k = 0;
  std::string het, hom;  // blank when no partition is known
  std::string y, ceil_y, l, e;
  bool satisfied = true;

  std::vector<std::string> cells() const {
    return {std::to_string(n), std::to_string(k), std::to_string(e_k), std::to_string(e_le_k), het, hom,
            y, ceil_y, l, e, satisfied ? "true" : "false"};
  }
};

inline const std::vector<std::string>& report_header() {
  static const std::vector<std::string> h{"n", "k", "e_k", "e_le_k", "het", "hom", "Y", "ceilY", "L", "E", "satisfied"};
  return h;
}

struct AnalyzeOptions {
  std::optional<std::size_t> k_min, k_max;
  DecompositionMode mode = DecompositionMode::three_condition;
};

struct AnalyzeResult {
  std::vector<ReportRow> rows;
  std::optional<DecompositionWitness> witness;  // present iff 3-decomposable
  bool labels_used = false;                     // witness partition is the file's own labeling
  bool all_satisfied() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.satisfied; });
  }
};

inline AnalyzeResult analyze(const PointSet& set, const AnalyzeOptions& opts = {}) {
  require_general_position(set.points);
  const std::size_t n = set.size();
  AnalyzeResult result;
  if (n % 3 == 0 && n > 0) {
    if (set.labels && labels_balanced(*set.labels)) {
      result.witness = check_partition(set, *set.labels, opts.mode);
      result.labels_used = result.witness.has_value();
    }
    if (!result.witness) result.witness = find_partition(set, opts.mode);
  }
  if (n < 2) return result;

  const Halfperiod h = build_halfperiod(set.points);
  const KSetVector ks = kset_vector_from_halfperiod(h);
  std::span<const Label> labels;
  if (result.witness) labels = result.witness->partition;
  else if (set.labels) labels = *set.labels;

  const std::size_t k_lo = std::max<std::size_t>(1, opts.k_min.value_or(1));
  const std::size_t k_hi = std::min(ks.max_prefix_k(), opts.k_max.value_or(ks.max_prefix_k()));
  const auto ni = static_cast<std::int64_t>(n);
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    ReportRow row;
    row.n = n;
    row.k = k;
    row.e_k = ks.e(k);
    row.e_le_k = ks.e_le(k);
    const auto rep = critical_counts(h, k, labels);
    if (rep.het_le_k) {
      row.het = std::to_string(*rep.het_le_k);
      row.hom = std::to_string(*rep.hom_le_k);
    }
    if (!result.witness) {
      row.y = row.ceil_y = row.l = row.e = kNotApplicable;
    } else {
      const auto ki = static_cast<std::int64_t>(k);
      const bool empty_window = ni - 2 * ki - 1 == 0;
      row.y = empty_window ? kUndefined : to_fraction_string(y_bound(ki, ni));
      const std::int64_t bound = nle_lower(ki, ni);
      row.ceil_y = std::to_string(bound);
      if (3 * ki <= ni) row.l = to_fraction_string(l_bound(ki, ni));
      else row.l = empty_window ? kUndefined : to_fraction_string(l_bound(ki, ni));
      row.e = 3 * ki > ni ? std::to_string(e_kn(ki, ni).total) : kNotApplicable;
      row.satisfied = row.e_le_k >= bound;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

// ---------------------------------------------------------------------------
// bounds tables

inline const std::vector<std::string>& bounds_header() {
  static const std::vector<std::string> h{"n",   "k",     "m",     "s",   "b_eq1",       "Y",           "Y_dec",
                                          "ceilY", "het", "hom_lower", "hom_lower_dec", "E", "E_A", "E_B",
                                          "E_C", "L",     "L_dec", "L_minus_Y"};
  return h;
}

inline std::vector<std::string> bounds_row(std::int64_t n, std::int64_t k) {
  const std::int64_t m = n - 2 * k - 1, s = n / 3;
  const bool empty_window = m == 0;
  const bool upper_range = 3 * k > n;
  std::vector<std::string> c{std::to_string(n), std::to_string(k), std::to_string(m), std::to_string(s)};
  if (empty_window) {
    c.insert(c.end(), {kUndefined, kUndefined, kUndefined});
  } else {
    const Rational y = y_bound(k, n);
    c.insert(c.end(), {std::to_string(b_eq1(k, n)), to_fraction_string(y), decimal(y)});
  }
  c.push_back(std::to_string(nle_lower(k, n)));
  c.push_back(std::to_string(het_exact(k, n)));
  if (!upper_range) {
    c.insert(c.end(), {"0/1", decimal(0.0)});
  } else if (empty_window) {
    c.insert(c.end(), {kUndefined, kUndefined});
  } else {
    const Rational hl = hom_lower(k, n);
    c.insert(c.end(), {to_fraction_string(hl), decimal(hl)});
  }
  if (upper_range) {
    const auto e = e_kn(k, n);
    c.insert(c.end(), {std::to_string(e.total), std::to_string(e.a), std::to_string(e.b), std::to_string(e.c)});
  } else {
    c.insert(c.end(), {kNotApplicable, kNotApplicable, kNotApplicable, kNotApplicable});
  }
  if (empty_window && upper_range) {
    c.insert(c.end(), {kUndefined, kUndefined, kUndefined});
  } else {
    const Rational l = l_bound(k, n);
    c.push_back(to_fraction_string(l));
    c.push_back(decimal(l));
    c.push_back(empty_window ? std::string(kUndefined) : to_fraction_string(l - y_bound(k, n)));
  }
  return c;
}

inline const std::vector<std::string>& coefficient_header() {
  static const std::vector<std::string> h{"n", "cr_lower", "binom_n_4", "cr_ratio_dec", "coefficient_dec",
                                          "ratio_minus_coefficient_dec"};
  return h;
}

inline std::vector<std::string> coefficient_row(std::int64_t n) {
  const Integer cr = cr_lower(n);
  const Integer c4 = binom(n, 4);
  const Rational ratio(cr, c4);
  const double coef = cr_coefficient();
  return {std::to_string(n), cr.str(), c4.str(), decimal(ratio), decimal(coef), decimal(to_double(ratio) - coef)};
}

}  // namespace ksetlab
