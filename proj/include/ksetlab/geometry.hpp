#pragma once

// Exact planar geometry: orientation, general position, rectilinear crossing
// number by quadruple enumeration, and the small-scale (<=k)-set oracle that
// the circular-sequence counts are validated against.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ksetlab/rational.hpp"

namespace ksetlab {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }
  Point operator-() const { return {-x, -y}; }
};

// Directions are plain vectors; only their angle matters.
using Direction = Point;

inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Point perp(const Point& v) { return {-v.y, v.x}; }

enum class Label : std::uint8_t { A = 0, B = 1, C = 2 };

inline char to_char(Label l) { return static_cast<char>('a' + static_cast<int>(l)); }

struct PointSet {
  std::vector<Point> points;
  std::optional<std::vector<Label>> labels;

  std::size_t size() const { return points.size(); }
  bool labeled() const { return labels.has_value(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;
};

// Sign of (q - p) x (r - p): +1 counterclockwise, -1 clockwise, 0 collinear.
inline int orientation(const Point& p, const Point& q, const Point& r) {
  return sign(cross(q - p, r - p));
}

inline bool is_general_position(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[i] == pts[j]) return false;
      for (std::size_t k = j + 1; k < n; ++k)
        if (orientation(pts[i], pts[j], pts[k]) == 0) return false;
    }
  return true;
}

inline bool is_general_position(const PointSet& s) { return is_general_position(s.points); }

inline void require_general_position(std::span<const Point> pts) {
  if (!is_general_position(pts))
    throw DomainError("point set is not in general position (repeated or collinear points)");
}

// Labels must cover every point with n/3 of each class.
inline bool labels_balanced(std::span<const Label> labels) {
  if (labels.size() % 3 != 0) return false;
  std::size_t count[3] = {0, 0, 0};
  for (Label l : labels) ++count[static_cast<int>(l)];
  const std::size_t third = labels.size() / 3;
  return count[0] == third && count[1] == third && count[2] == third;
}

namespace detail {

// sign table indexed [i][j][k] for all ordered triples.
class OrientationTable {
 public:
  explicit OrientationTable(std::span<const Point> pts) : n_(pts.size()), sign_(n_ * n_ * n_, 0) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (i < j && j < k) {
            const auto s = static_cast<std::int8_t>(orientation(pts[i], pts[j], pts[k]));
            // Even permutations keep the sign, odd ones flip it.
            at(i, j, k) = at(j, k, i) = at(k, i, j) = s;
            at(j, i, k) = at(i, k, j) = at(k, j, i) = static_cast<std::int8_t>(-s);
          }
  }
  int operator()(std::size_t i, std::size_t j, std::size_t k) const { return sign_[(i * n_ + j) * n_ + k]; }

 private:
  std::int8_t& at(std::size_t i, std::size_t j, std::size_t k) { return sign_[(i * n_ + j) * n_ + k]; }
  std::size_t n_;
  std::vector<std::int8_t> sign_;
};

inline bool inside_triangle(const OrientationTable& o, std::size_t a, std::size_t b, std::size_t c,
                            std::size_t d) {
  const int s1 = o(a, b, d), s2 = o(b, c, d), s3 = o(c, a, d);
  return s1 == s2 && s2 == s3;
}

}  // namespace detail

// Number of 4-subsets in convex position; each is exactly one crossing of the
// complete rectilinear drawing on these points.
inline std::int64_t crossing_number(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  if (n < 4) return 0;
  require_general_position(pts);
  const detail::OrientationTable o(pts);
  std::int64_t count = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const bool convex = !detail::inside_triangle(o, a, b, c, d) &&
                              !detail::inside_triangle(o, a, b, d, c) &&
                              !detail::inside_triangle(o, a, c, d, b) &&
                              !detail::inside_triangle(o, b, c, d, a);
          if (convex) ++count;
        }
  return count;
}

inline std::int64_t crossing_number(const PointSet& s) { return crossing_number(s.points); }

// e_k for 1 <= k <= floor(n/2) and the running sums e_{<=k} for k < n/2.
class KSetVector {
 public:
  KSetVector() = default;
  // counts[k-1] = e_k for k = 1 .. floor(n/2)
  KSetVector(std::size_t n, std::vector<std::int64_t> counts) : n_(n), e_(std::move(counts)) {
    if (e_.size() != n_ / 2) throw DomainError("KSetVector needs floor(n/2) entries");
    std::int64_t run = 0;
    for (std::size_t k = 1; 2 * k < n_; ++k) {
      if (e_[k - 1] < 0) throw DomainError("negative k-set count");
      run += e_[k - 1];
      prefix_.push_back(run);
    }
  }

  std::size_t n() const { return n_; }
  std::size_t max_k() const { return n_ / 2; }
  // Largest k with k < n/2.
  std::size_t max_prefix_k() const { return n_ == 0 ? 0 : (n_ - 1) / 2; }

  std::int64_t e(std::size_t k) const {
    if (k < 1 || k > max_k()) throw DomainError("k out of range for e_k");
    return e_[k - 1];
  }
  std::int64_t e_le(std::size_t k) const {
    if (k < 1 || k > max_prefix_k()) throw DomainError("k out of range for e_{<=k}");
    return prefix_[k - 1];
  }

  const std::vector<std::int64_t>& counts() const { return e_; }
  const std::vector<std::int64_t>& prefix() const { return prefix_; }

  friend bool operator==(const KSetVector&, const KSetVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> e_;
  std::vector<std::int64_t> prefix_;
};

struct OracleCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleCap = 15;

// KSETLAB_ORACLE_CAP overrides the default cap when set to a positive integer.
inline std::size_t default_oracle_cap() {
  if (const char* env = std::getenv("KSETLAB_ORACLE_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<unsigned long>(v, 31);
  }
  return kDefaultOracleCap;
}

// Separable subsets collected from the 2*C(n,2) directed pair-lines: for p->q
// the cut-off set is {points strictly left of p->q} + {p}.
inline std::set<std::uint32_t> separable_subsets(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  std::set<std::uint32_t> family;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      std::uint32_t mask = std::uint32_t{1} << p;
      for (std::size_t r = 0; r < n; ++r)
        if (r != p && r != q && orientation(pts[p], pts[q], pts[r]) > 0) mask |= std::uint32_t{1} << r;
      family.insert(mask);
    }
  return family;
}

inline KSetVector k_set_oracle(std::span<const Point> pts, std::size_t cap = default_oracle_cap()) {
  const std::size_t n = pts.size();
  if (n > cap)
    throw OracleCapExceeded("k-set oracle refuses n = " + std::to_string(n) + " (cap " +
                            std::to_string(cap) + ")");
  if (n > 31) throw OracleCapExceeded("k-set oracle supports at most 31 points");
  require_general_position(pts);
  std::vector<std::int64_t> e(n / 2, 0);
  if (n < 2) return KSetVector(n, std::move(e));
  for (std::uint32_t mask : separable_subsets(pts)) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k >= 1 && k <= n / 2) ++e[k - 1];
  }
  return KSetVector(n, std::move(e));
}

inline KSetVector k_set_oracle(const PointSet& s, std::size_t cap = default_oracle_cap()) {
  return k_set_oracle(s.points, cap);
}

}  // namespace ksetlab
