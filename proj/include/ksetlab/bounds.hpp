#pragma once

// Closed-form quantities for 3-decomposable configurations: threshold
// integers, the (<=k)-set lower bound Y(k,n), the exact heterogeneous count,
// the extremal digraph D_{k,n} and its edge count E(k,n), the bound L(k,n),
// the slack quartic f(b, r), and the asymptotic crossing-number coefficient.
//
// Notation: s = n/3 and m = n - 2k - 1 (width of the valid window).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ksetlab/digraph.hpp"
#include "ksetlab/rational.hpp"

namespace ksetlab {

// Raised when m = n - 2k - 1 = 0: the threshold b(k,n) has no value.
struct UndefinedWindow : DomainError {
  using DomainError::DomainError;
};

namespace detail {

inline void require_multiple_of_three(std::int64_t n) {
  if (n <= 0 || n % 3 != 0) throw DomainError("n must be a positive multiple of 3");
}

inline void require_k_below_half(std::int64_t k, std::int64_t n) {
  if (k < 1 || 2 * k >= n) throw DomainError("k must satisfy 1 <= k < n/2");
}

inline std::int64_t window(std::int64_t k, std::int64_t n) { return n - 2 * k - 1; }

}  // namespace detail

// The unique b >= 0 with C(b+1,2) < ratio <= C(b+2,2); ratio must be > 0.
inline std::int64_t binomial_threshold(const Rational& ratio) {
  if (ratio <= 0) throw DomainError("threshold ratio must be positive");
  std::int64_t b = 0;
  while (ratio > binom(b + 2, 2)) ++b;
  return b;
}

// b(k,n): C(b+1,2) < n/(n-2k-1) <= C(b+2,2).
inline std::int64_t b_eq1(std::int64_t k, std::int64_t n) {
  detail::require_k_below_half(k, n);
  const std::int64_t m = detail::window(k, n);
  if (m == 0) throw UndefinedWindow("b(k,n) is undefined for n - 2k - 1 = 0");
  return binomial_threshold(make_rational(n, m));
}

// j = i*C(b+1,2) + q*(b+1) + r with C(b+1,2) < j/i <= C(b+2,2),
// 0 <= q < i and 1 <= r <= b+1.
struct BqrDecomposition {
  std::int64_t i = 0, j = 0;
  std::int64_t b = 0, q = 0, r = 0;
  friend bool operator==(const BqrDecomposition&, const BqrDecomposition&) = default;
};

inline BqrDecomposition bqr(std::int64_t i, std::int64_t j) {
  if (i <= 0 || i > j) throw DomainError("bqr needs 1 <= i <= j");
  BqrDecomposition d{i, j};
  d.b = binomial_threshold(make_rational(j, i));
  const std::int64_t rest = j - i * binom(d.b + 1, 2);  // in [1, i*(b+1)]
  d.q = (rest - 1) / (d.b + 1);
  d.r = rest - d.q * (d.b + 1);
  return d;
}

// Y(k,n) = 3C(k+1,2) + 3C(k-n/3+1,2)
//        + 3 sum_{j=2}^{b(k,n)} j(j+1) C(k+1-(1/2-1/(3j(j+1)))n, 2) - 1/3
// with the clamped binomial of binom2().
inline Rational y_bound(std::int64_t k, std::int64_t n) {
  detail::require_multiple_of_three(n);
  const std::int64_t b = b_eq1(k, n);
  Rational y = 3 * binom2(Rational(k + 1)) + 3 * binom2(Rational(k + 1) - make_rational(n, 3));
  for (std::int64_t j = 2; j <= b; ++j) {
    const Rational threshold = (make_rational(1, 2) - make_rational(1, 3 * j * (j + 1))) * n;
    y += 3 * j * (j + 1) * binom2(Rational(k + 1) - threshold);
  }
  return y - make_rational(1, 3);
}

// The same expression with unclamped binomials and the j-sum stopped at
// b(m, n/3). This is the variant for which L - Y - 1/3 equals claim1_f
// exactly. Defined for n/3 < k < n/2 with m >= 1.
inline Rational y_bound_unclamped(std::int64_t k, std::int64_t n) {
  detail::require_multiple_of_three(n);
  detail::require_k_below_half(k, n);
  if (3 * k <= n) throw DomainError("y_bound_unclamped needs k > n/3");
  const std::int64_t m = detail::window(k, n);
  if (m == 0) throw UndefinedWindow("window n - 2k - 1 is empty");
  const std::int64_t b = bqr(m, n / 3).b;
  Rational y = 3 * binom2_unclamped(Rational(k + 1)) + 3 * binom2_unclamped(Rational(k + 1) - make_rational(n, 3));
  for (std::int64_t j = 2; j <= b; ++j) {
    const Rational threshold = (make_rational(1, 2) - make_rational(1, 3 * j * (j + 1))) * n;
    y += 3 * j * (j + 1) * binom2_unclamped(Rational(k + 1) - threshold);
  }
  return y - make_rational(1, 3);
}

// Exact number of heterogeneous (<=k)-critical transpositions of a
// 3-decomposable halfperiod.
inline std::int64_t het_exact(std::int64_t k, std::int64_t n) {
  detail::require_multiple_of_three(n);
  detail::require_k_below_half(k, n);
  const std::int64_t s = n / 3;
  if (k <= s) return 3 * binom(k + 1, 2);
  return 3 * binom(s + 1, 2) + (k - s) * n;
}

namespace detail {

inline void require_dkn_range(std::int64_t k, std::int64_t n) {
  require_multiple_of_three(n);
  if (!(3 * k > n && 2 * k < n)) throw DomainError("D_{k,n} needs n/3 < k < n/2");
}

}  // namespace detail

// Extremal digraph on a_1..a_s under indeg(a_j) <= m + outdeg(a_j) and
// indeg(a_j) <= j - 1. Receivers are processed from a_s downward; each takes
// edges from its nearest lower-indexed senders, as many as budget and supply
// allow. An empty window (m = 0) still admits edges fed by outdegree, but the
// top vertex gets none, so the whole digraph is empty.
inline ValidSwapDigraph build_dkn(std::int64_t k, std::int64_t n) {
  detail::require_dkn_range(k, n);
  const auto m = static_cast<std::size_t>(detail::window(k, n));
  const auto s = static_cast<std::size_t>(n / 3);
  ValidSwapDigraph g(DigraphKind::synthetic, s);
  for (std::size_t v = s; v-- > 0;) {
    const std::size_t budget = m + g.outdegree(v);
    const std::size_t take = std::min(budget, v);
    for (std::size_t d = 1; d <= take; ++d) g.add_edge(v - d, v);
  }
  return g;
}

// E(k,n) = A + B + C with (b, q, r) = bqr(m, s):
//   A = 2m^2 C(b+1,3) + C(b+1,2) C(m,2)
//   B = 2mq C(b+1,2) + C(q,2)(b+1)
//   C = r(mb + q)
struct EdgeCount {
  std::int64_t a = 0, b = 0, c = 0;
  std::int64_t total = 0;
  std::optional<BqrDecomposition> decomposition;  // absent when m = 0
};

inline EdgeCount e_kn(std::int64_t k, std::int64_t n) {
  detail::require_dkn_range(k, n);
  const std::int64_t m = detail::window(k, n);
  EdgeCount e;
  if (m == 0) return e;
  const auto d = bqr(m, n / 3);
  e.decomposition = d;
  e.a = 2 * m * m * binom(d.b + 1, 3) + binom(d.b + 1, 2) * binom(m, 2);
  e.b = 2 * m * d.q * binom(d.b + 1, 2) + binom(d.q, 2) * (d.b + 1);
  e.c = d.r * (m * d.b + d.q);
  e.total = e.a + e.b + e.c;
  return e;
}

// The indegree expression m*b + q, read with the window as the first bqr
// argument: i = m*C(b+1,2) + q(b+1) + r. For i < m this degenerates to i - 1.
// Summed over i = 1..s it reproduces E(k,n), and as a multiset it matches the
// indegrees of build_dkn.
inline std::int64_t dkn_indegree_formula(std::int64_t i, std::int64_t m) {
  if (i < 1 || m < 1) throw DomainError("dkn_indegree_formula needs i >= 1 and m >= 1");
  if (i < m) return i - 1;
  const auto d = bqr(m, i);
  return m * d.b + d.q;
}

// Lower bound on homogeneous (<=k)-critical transpositions: Y - het for
// n/3 < k < n/2, and 0 for k <= n/3.
inline Rational hom_lower(std::int64_t k, std::int64_t n) {
  detail::require_multiple_of_three(n);
  detail::require_k_below_half(k, n);
  if (3 * k <= n) return Rational(0);
  return y_bound(k, n) - het_exact(k, n);
}

// L(k,n) = 3C(s+1,2) + (k-s)n + 3(C(s,2) - E(k,n)) for n/3 < k < n/2, and
// 3C(k+1,2) for k <= n/3.
inline Rational l_bound(std::int64_t k, std::int64_t n) {
  detail::require_multiple_of_three(n);
  detail::require_k_below_half(k, n);
  const std::int64_t s = n / 3;
  if (3 * k <= n) return Rational(3 * binom(k + 1, 2));
  if (detail::window(k, n) == 0) throw UndefinedWindow("L(k,n) is undefined for n - 2k - 1 = 0");
  const Rational l(3 * binom(s + 1, 2) + (k - s) * n + 3 * (binom(s, 2) - e_kn(k, n).total));
  if (l < y_bound(k, n)) throw std::logic_error("L(k,n) < Y(k,n) at k=" + std::to_string(k) + ", n=" + std::to_string(n));
  return l;
}

// Integer lower bound on e_{<=k} of a 3-decomposable set: ceil(Y(k,n)). When
// the window is empty (k = (n-1)/2) every transposition is critical and the
// bound is the empty-window value het + 3C(s,2) = C(n,2).
inline std::int64_t nle_lower(std::int64_t k, std::int64_t n) {
  detail::require_multiple_of_three(n);
  detail::require_k_below_half(k, n);
  if (detail::window(k, n) == 0) return het_exact(k, n) + 3 * binom(n / 3, 2);
  return ceil(y_bound(k, n)).convert_to<std::int64_t>();
}

// f(b, r) = (5b^2 + 4b^3 + b^4 + b(2 - 12r) + 12(r-1)r) / (8(b+1)).
inline Rational claim1_f(const Rational& b, const Rational& r) {
  const Rational num = 5 * b * b + 4 * b * b * b + b * b * b * b + b * (2 - 12 * r) + 12 * (r - 1) * r;
  return num / (8 * (b + 1));
}

inline Rational claim1_f(std::int64_t b, std::int64_t r) {
  if (b < 0 || r < 1 || r > b + 1) throw DomainError("claim1_f needs b >= 0 and 1 <= r <= b+1");
  return claim1_f(Rational(b), Rational(r));
}

// Value at the continuous minimizer r = (b+1)/2.
inline Rational claim1_f_minimum(const Rational& b) { return (b + 3) * (b + 1) * (b - 1) / 8; }

// Finite-n crossing bound implied by the (<=k)-set bound:
// sum_{k=1}^{(n-2)/2} (n-2k-1) * nle_lower(k, n).
inline Integer cr_lower(std::int64_t n) {
  detail::require_multiple_of_three(n);
  Integer total = 0;
  for (std::int64_t k = 1; 2 * k <= n - 2; ++k) total += Integer(n - 2 * k - 1) * nle_lower(k, n);
  return total;
}

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

// (2/27)(15 - pi^2).
inline HighPrecision cr_coefficient_exact() {
  const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  return HighPrecision(2) / 27 * (15 - pi * pi);
}

// 3/8 + 1/216 + (2/27)(79/8 - pi^2): the three contributions summed.
inline HighPrecision cr_coefficient_sum() {
  const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  return HighPrecision(3) / 8 + HighPrecision(1) / 216 + HighPrecision(2) / 27 * (HighPrecision(79) / 8 - pi * pi);
}

inline double cr_coefficient() { return cr_coefficient_sum().convert_to<double>(); }

// Reference constants of the best general lower and upper bounds.
inline constexpr double kGeneralLowerCoefficient = 0.37968;
inline constexpr double kGeneralUpperCoefficient = 0.38054;

// Fraction of the general gap closed by a coefficient value.
inline double gap_closure(double coefficient) {
  return (coefficient - kGeneralLowerCoefficient) / (kGeneralUpperCoefficient - kGeneralLowerCoefficient);
}

struct QuadratureCheck {
  std::string name;
  double quadrature = 0;
  Rational exact;
  double error = 0;
};

struct SeriesIntegralReport {
  std::int64_t series_terms_to = 0;
  double series_partial = 0;  // sum_{j=2}^{J} 1/(j^3 (j+1)^3)
  double series_limit = 0;    // 79/8 - pi^2
  double series_error = 0;
  std::vector<QuadratureCheck> integrals;
  // 24 * (3/2) * integral for the two leading terms: 3/8 and 1/216.
  Rational normalized_first;
  Rational normalized_second;
  double assembled_coefficient = 0;  // 3/8 + 1/216 + (2/27) * partial series
};

// (1-2x)(x-c)^2 on [c, 1/2] integrates to (1/2 - c)^4 / 6.
inline Rational window_integral(const Rational& c) {
  const Rational d = make_rational(1, 2) - c;
  return d * d * d * d / 6;
}

inline SeriesIntegralReport series_and_integral_checks(std::int64_t series_terms_to = 1000,
                                                       std::int64_t window_terms_to = 12) {
  using boost::math::quadrature::gauss;
  SeriesIntegralReport rep;
  rep.series_terms_to = series_terms_to;
  HighPrecision partial = 0;
  for (std::int64_t j = 2; j <= series_terms_to; ++j) {
    const HighPrecision jj = j, j1 = j + 1;
    partial += 1 / (jj * jj * jj * j1 * j1 * j1);
  }
  const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  const HighPrecision limit = HighPrecision(79) / 8 - pi * pi;
  rep.series_partial = partial.convert_to<double>();
  rep.series_limit = limit.convert_to<double>();
  rep.series_error = abs(partial - limit).convert_to<double>();

  auto add = [&](std::string name, double lo, double hi, double c, Rational exact) {
    const double q = gauss<double, 10>::integrate([c](double x) { return (1 - 2 * x) * (x - c) * (x - c); }, lo, hi);
    rep.integrals.push_back({std::move(name), q, exact, std::abs(q - to_double(exact))});
  };
  add("(1-2x)x^2 on [0,1/2]", 0.0, 0.5, 0.0, make_rational(1, 96));
  add("(1-2x)(x-1/3)^2 on [1/3,1/2]", 1.0 / 3.0, 0.5, 1.0 / 3.0, make_rational(1, 7776));
  for (std::int64_t j = 2; j <= window_terms_to; ++j) {
    const Rational c = make_rational(1, 2) - make_rational(1, 3 * j * (j + 1));
    const Rational exact = make_rational(1, 486) / (Rational(j * (j + 1)) * (j * (j + 1)) * (j * (j + 1)) * (j * (j + 1)));
    if (exact != window_integral(c)) throw std::logic_error("window integral closed form mismatch");
    add("window j=" + std::to_string(j), to_double(c), 0.5, to_double(c), exact);
  }
  rep.normalized_first = 24 * make_rational(3, 2) * make_rational(1, 96);
  rep.normalized_second = 24 * make_rational(3, 2) * make_rational(1, 7776);
  rep.assembled_coefficient =
      (HighPrecision(3) / 8 + HighPrecision(1) / 216 + HighPrecision(2) / 27 * partial).convert_to<double>();
  return rep;
}

}  // namespace ksetlab
