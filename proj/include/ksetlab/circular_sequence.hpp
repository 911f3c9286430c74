#pragma once

// Halfperiods of the circular sequence of a point set: the C(n,2)+1
// permutations obtained by projecting the points onto a directed line that
// rotates through a half-turn. Also the transposition classification
// (critical / homogeneous / heterogeneous) and the valid-swap digraphs.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "ksetlab/digraph.hpp"
#include "ksetlab/geometry.hpp"

namespace ksetlab {

namespace angular {

// 0 for angles in [0, pi), 1 for [pi, 2pi).
inline int half(const Point& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

// Strict order by angle in [0, 2pi) measured from the positive x-axis.
inline bool less(const Point& a, const Point& b) {
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

inline bool same_direction(const Point& a, const Point& b) { return half(a) == half(b) && cross(a, b) == 0; }

}  // namespace angular

enum class Rotation { counterclockwise, clockwise };

struct Transposition {
  std::size_t step;      // 1 .. C(n,2)
  std::size_t position;  // swaps sites (position, position+1), 1-based
  std::array<std::size_t, 2> elements;  // {left, right} just before the swap

  friend bool operator==(const Transposition&, const Transposition&) = default;
};

class Halfperiod {
 public:
  // Validates that the positions describe a halfperiod: every swap is within
  // range, every unordered pair is swapped exactly once, and the final
  // permutation is the reverse of the initial one.
  static Halfperiod from_positions(std::vector<std::size_t> initial, std::span<const std::size_t> positions,
                                   Direction start = {1, 0}, Rotation rotation = Rotation::counterclockwise) {
    const std::size_t n = initial.size();
    {
      std::vector<std::size_t> sorted = initial;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < n; ++i)
        if (sorted[i] != i) throw DomainError("initial permutation is not a permutation of 0..n-1");
    }
    if (positions.size() != static_cast<std::size_t>(binom(static_cast<std::int64_t>(n), 2)))
      throw DomainError("a halfperiod has exactly C(n,2) transpositions");
    std::vector<std::size_t> perm = initial;
    std::vector<char> seen(n * n, 0);
    std::vector<Transposition> swaps;
    swaps.reserve(positions.size());
    for (std::size_t t = 0; t < positions.size(); ++t) {
      const std::size_t pos = positions[t];
      if (pos < 1 || pos >= n) throw DomainError("transposition position out of range");
      const std::size_t a = perm[pos - 1], b = perm[pos];
      const std::size_t lo = std::min(a, b), hi = std::max(a, b);
      if (seen[lo * n + hi]) throw DomainError("pair swapped twice in a halfperiod");
      seen[lo * n + hi] = 1;
      swaps.push_back({t + 1, pos, {a, b}});
      std::swap(perm[pos - 1], perm[pos]);
    }
    if (!std::equal(perm.begin(), perm.end(), initial.rbegin()))
      throw DomainError("final permutation is not the reverse of the initial one");
    return Halfperiod(std::move(initial), std::move(swaps), std::move(start), rotation);
  }

  std::size_t n() const { return initial_.size(); }
  std::size_t length() const { return swaps_.size(); }
  const std::vector<std::size_t>& initial_permutation() const { return initial_; }
  const std::vector<Transposition>& transpositions() const { return swaps_; }
  const Direction& start_direction() const { return start_; }
  Rotation rotation() const { return rotation_; }

  // pi_step, for 0 <= step <= C(n,2).
  std::vector<std::size_t> permutation(std::size_t step) const {
    if (step > swaps_.size()) throw DomainError("permutation index out of range");
    std::vector<std::size_t> perm = initial_;
    for (std::size_t t = 0; t < step; ++t) {
      const std::size_t p = swaps_[t].position;
      std::swap(perm[p - 1], perm[p]);
    }
    return perm;
  }

  // Calls f(step, pi_step) for step = 0 .. C(n,2).
  template <class F>
  void for_each_permutation(F&& f) const {
    std::vector<std::size_t> perm = initial_;
    f(std::size_t{0}, std::as_const(perm));
    for (const auto& t : swaps_) {
      std::swap(perm[t.position - 1], perm[t.position]);
      f(t.step, std::as_const(perm));
    }
  }

 private:
  Halfperiod(std::vector<std::size_t> initial, std::vector<Transposition> swaps, Direction start, Rotation rotation)
      : initial_(std::move(initial)), swaps_(std::move(swaps)), start_(std::move(start)), rotation_(rotation) {}

  std::vector<std::size_t> initial_;
  std::vector<Transposition> swaps_;
  Direction start_;
  Rotation rotation_;
};

// A starting direction that is not perpendicular to any pair-line: the sum of
// the two line directions bounding the narrowest angular gap between
// consecutive pair-line normals. The sum lies strictly inside that gap.
inline Direction default_start_direction(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  std::vector<Point> lines;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Point w = perp(pts[j] - pts[i]);
      if (angular::half(w) == 1) w = -w;
      lines.push_back(std::move(w));
    }
  if (lines.empty()) return {1, 0};
  std::sort(lines.begin(), lines.end(), [](const Point& a, const Point& b) { return cross(a, b) > 0; });
  lines.erase(std::unique(lines.begin(), lines.end(), [](const Point& a, const Point& b) { return cross(a, b) == 0; }),
              lines.end());
  if (lines.size() == 1) return perp(lines.front());

  // Gap t runs from lines[t] to lines[t+1]; the last one wraps to -lines[0].
  auto gap = [&](std::size_t t) -> std::pair<Point, Point> {
    return t + 1 < lines.size() ? std::pair{lines[t], lines[t + 1]} : std::pair{lines[t], -lines[0]};
  };
  std::size_t best = 0;
  for (std::size_t t = 1; t < lines.size(); ++t) {
    // Narrower gap <=> larger cot = dot/cross (cross > 0 inside a gap).
    const auto [u1, v1] = gap(best);
    const auto [u2, v2] = gap(t);
    if (dot(u2, v2) * cross(u1, v1) > dot(u1, v1) * cross(u2, v2)) best = t;
  }
  const auto [u, v] = gap(best);
  return u + v;
}

// Halfperiod of the circular sequence, starting at `start` and rotating in
// the given sense through a half-turn. Pairs with parallel pair-lines flip at
// the same angle; such swaps are applied in order of their left position.
inline Halfperiod build_halfperiod(std::span<const Point> pts, const Direction& start,
                                   Rotation rotation = Rotation::counterclockwise) {
  require_general_position(pts);
  const std::size_t n = pts.size();
  if (start.x == 0 && start.y == 0) throw DomainError("start direction must be nonzero");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dot(pts[j] - pts[i], start) == 0)
        throw DomainError("start direction is perpendicular to a pair-line");

  std::vector<Rational> proj(n);
  for (std::size_t i = 0; i < n; ++i) proj[i] = dot(pts[i], start);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });

  const int sense = rotation == Rotation::counterclockwise ? 1 : -1;
  struct Event {
    Point normal;
    std::size_t i, j;
  };
  std::vector<Event> events;
  events.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Point w = perp(pts[j] - pts[i]);
      if (sense * sign(cross(start, w)) < 0) w = -w;
      events.push_back({std::move(w), i, j});
    }
  std::stable_sort(events.begin(), events.end(),
                   [&](const Event& a, const Event& b) { return sense * sign(cross(a.normal, b.normal)) > 0; });

  const std::vector<std::size_t> initial = perm;
  std::vector<std::size_t> where(n);
  for (std::size_t p = 0; p < n; ++p) where[perm[p]] = p;
  std::vector<std::size_t> positions;
  positions.reserve(events.size());
  for (std::size_t g = 0; g < events.size();) {
    std::size_t h = g + 1;
    while (h < events.size() && cross(events[g].normal, events[h].normal) == 0) ++h;
    std::vector<std::size_t> group_positions;
    for (std::size_t e = g; e < h; ++e) {
      const std::size_t a = where[events[e].i], b = where[events[e].j];
      if (a + 1 != b && b + 1 != a) throw std::logic_error("swapping pair is not adjacent");
      group_positions.push_back(std::min(a, b));
    }
    std::sort(group_positions.begin(), group_positions.end());
    for (std::size_t p : group_positions) {
      std::swap(perm[p], perm[p + 1]);
      where[perm[p]] = p;
      where[perm[p + 1]] = p + 1;
      positions.push_back(p + 1);
    }
    g = h;
  }
  return Halfperiod::from_positions(initial, positions, start, rotation);
}

inline Halfperiod build_halfperiod(std::span<const Point> pts) {
  require_general_position(pts);
  return build_halfperiod(pts, default_start_direction(pts));
}

inline Halfperiod build_halfperiod(const PointSet& s) { return build_halfperiod(s.points); }

// i-critical means position i or position n-i.
inline bool is_le_k_critical(std::size_t position, std::size_t n, std::size_t k) {
  return position <= k || position >= n - k;
}

inline bool is_homogeneous(const Transposition& t, std::span<const Label> labels) {
  return labels[t.elements[0]] == labels[t.elements[1]];
}

struct CriticalityReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::int64_t le_k = 0;  // N_{<=k}
  // Present when labels were supplied.
  std::optional<std::int64_t> hom_le_k;
  std::optional<std::int64_t> het_le_k;
  // (<=k)-critical homogeneous swaps per class: aa, bb, cc.
  std::optional<std::array<std::int64_t, 3>> hom_le_k_by_class;
  // index i-1 for i = 1 .. floor(n/2): number of i-critical transpositions.
  std::vector<std::int64_t> i_critical;
  std::vector<std::int64_t> het_i_critical;  // empty when unlabeled
};

// Number of transpositions at each position, index p-1 for p = 1 .. n-1.
inline std::vector<std::int64_t> position_histogram(const Halfperiod& h) {
  std::vector<std::int64_t> hist(h.n() > 0 ? h.n() - 1 : 0, 0);
  for (const auto& t : h.transpositions()) ++hist[t.position - 1];
  return hist;
}

inline CriticalityReport critical_counts(const Halfperiod& h, std::size_t k, std::span<const Label> labels = {}) {
  const std::size_t n = h.n();
  if (k < 1 || 2 * k >= n) throw DomainError("critical_counts needs 1 <= k < n/2");
  const bool labeled = !labels.empty();
  if (labeled && labels.size() != n) throw DomainError("label count does not match halfperiod size");

  CriticalityReport r;
  r.n = n;
  r.k = k;
  r.i_critical.assign(n / 2, 0);
  if (labeled) {
    r.het_i_critical.assign(n / 2, 0);
    r.hom_le_k = 0;
    r.het_le_k = 0;
    r.hom_le_k_by_class = std::array<std::int64_t, 3>{0, 0, 0};
  }
  for (const auto& t : h.transpositions()) {
    const std::size_t i = std::min(t.position, n - t.position);
    const bool hom = labeled && is_homogeneous(t, labels);
    ++r.i_critical[i - 1];
    if (labeled && !hom) ++r.het_i_critical[i - 1];
    if (!is_le_k_critical(t.position, n, k)) continue;
    ++r.le_k;
    if (labeled) {
      if (hom) {
        ++*r.hom_le_k;
        ++(*r.hom_le_k_by_class)[static_cast<int>(labels[t.elements[0]])];
      } else {
        ++*r.het_le_k;
      }
    }
  }
  return r;
}

// e_{<=k} = N_{<=k}. A transposition at position i separates i-1 points from
// n-i-1, so e_k counts swaps at positions k and n-k; halving swaps (n even,
// position n/2) each give two halving sets.
inline KSetVector kset_vector_from_halfperiod(const Halfperiod& h) {
  const std::size_t n = h.n();
  std::vector<std::int64_t> e(n / 2, 0);
  for (const auto& t : h.transpositions()) {
    const std::size_t i = std::min(t.position, n - t.position);
    e[i - 1] += (2 * i == n) ? 2 : 1;
  }
  return KSetVector(n, std::move(e));
}

// Block structure of a labeled permutation: the class order X, Y, Z when the
// permutation reads X...X Y...Y Z...Z with n/3 of each, otherwise nothing.
inline std::optional<std::array<Label, 3>> block_order(std::span<const std::size_t> perm,
                                                       std::span<const Label> labels) {
  const std::size_t n = perm.size();
  if (n == 0 || n % 3 != 0) return std::nullopt;
  const std::size_t s = n / 3;
  std::array<Label, 3> order{labels[perm[0]], labels[perm[s]], labels[perm[2 * s]]};
  if (order[0] == order[1] || order[1] == order[2] || order[0] == order[2]) return std::nullopt;
  for (std::size_t p = 0; p < n; ++p)
    if (labels[perm[p]] != order[p / s]) return std::nullopt;
  return order;
}

struct ValidSwapDigraphs {
  ValidSwapDigraph aa;
  ValidSwapDigraph bb;
  ValidSwapDigraph cc;
};

// Vertex naming of the block normal form: pi_0 reads a_s..a_1, b_1..b_s,
// c_1..c_s. Returns, per point, its class (after renaming the blocks of pi_0
// to a, b, c) and its 0-based vertex index within the class.
struct BlockNormalForm {
  std::vector<Label> labels;
  std::vector<std::size_t> vertex;
};

inline BlockNormalForm block_normal_form(const Halfperiod& h, std::span<const Label> labels) {
  const std::size_t n = h.n();
  if (labels.size() != n) throw DomainError("labels are required for the block normal form");
  if (!labels_balanced(labels)) throw DomainError("labels must split the points into three classes of n/3");
  const auto& pi0 = h.initial_permutation();
  const auto order = block_order(pi0, labels);
  if (!order) throw DomainError("initial permutation is not in block form");
  const std::size_t s = n / 3;
  BlockNormalForm f{std::vector<Label>(n), std::vector<std::size_t>(n)};
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t block = p / s, offset = p % s;
    f.labels[pi0[p]] = static_cast<Label>(block);
    f.vertex[pi0[p]] = block == 0 ? s - 1 - offset : offset;
  }
  return f;
}

// D^aa, D^bb, D^cc: an edge x_l -> x_j (l < j) for every same-class swap that
// happens at a valid position k+1 <= i <= n-k-1.
inline ValidSwapDigraphs build_valid_digraphs(const Halfperiod& h, std::span<const Label> labels, std::size_t k) {
  const std::size_t n = h.n();
  if (labels.empty()) throw DomainError("valid-swap digraphs need labels");
  const auto form = block_normal_form(h, labels);
  if (!(3 * k > n && 2 * k < n)) throw DomainError("valid-swap digraphs need n/3 < k < n/2");
  const std::size_t s = n / 3;
  ValidSwapDigraphs g{ValidSwapDigraph(DigraphKind::aa, s), ValidSwapDigraph(DigraphKind::bb, s),
                      ValidSwapDigraph(DigraphKind::cc, s)};
  for (const auto& t : h.transpositions()) {
    const Label la = form.labels[t.elements[0]], lb = form.labels[t.elements[1]];
    if (la != lb || is_le_k_critical(t.position, n, k)) continue;
    const std::size_t u = form.vertex[t.elements[0]], v = form.vertex[t.elements[1]];
    ValidSwapDigraph& d = la == Label::A ? g.aa : la == Label::B ? g.bb : g.cc;
    d.add_edge(std::min(u, v), std::max(u, v));
  }
  return g;
}

}  // namespace ksetlab
