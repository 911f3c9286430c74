#pragma once

// 3-decomposability: a balanced partition A, B, C such that projecting onto
// three directed lines gives the block orders A|B|C, B|A|C and B|C|A.
// Includes the exact checker, the exhaustive partition search, the halfperiod
// form of the definition, and the deterministic instance generator.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ksetlab/circular_sequence.hpp"
#include "ksetlab/geometry.hpp"

namespace ksetlab {

enum class DecompositionMode {
  three_condition,  // A|B|C, B|A|C and B|C|A
  two_condition,    // A|B|C and B|A|C only
};

struct DecompositionWitness {
  std::vector<Label> partition;
  // l1, l2 and (three-condition mode) l3.
  std::vector<Direction> directions;
  // (s, t): pi_s reads B|A|C and pi_t reads B|C|A, s < t.
  std::optional<std::pair<std::size_t, std::size_t>> halfperiod_indices;
};

inline constexpr std::array<std::array<Label, 3>, 3> kRequiredBlockOrders{{
    {Label::A, Label::B, Label::C},
    {Label::B, Label::A, Label::C},
    {Label::B, Label::C, Label::A},
}};

inline std::size_t required_orders(DecompositionMode mode) {
  return mode == DecompositionMode::three_condition ? 3 : 2;
}

// Projection order of the points onto a direction (ascending dot product).
inline std::vector<std::size_t> projection_order(std::span<const Point> pts, const Direction& d) {
  std::vector<Rational> proj(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) proj[i] = dot(pts[i], d);
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
  return order;
}

struct DirectionSample {
  Direction direction;
  std::vector<std::size_t> order;
};

// One exact direction inside every open angular interval between consecutive
// critical directions (normals of pair-lines, both orientations). The
// projection order is constant on each interval, so these samples realize
// every permutation of the circular sequence.
inline std::vector<DirectionSample> direction_samples(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  std::vector<Point> critical;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point w = perp(pts[j] - pts[i]);
      critical.push_back(w);
      critical.push_back(-w);
    }
  std::vector<DirectionSample> out;
  if (critical.empty()) {
    out.push_back({{1, 0}, projection_order(pts, {1, 0})});
    return out;
  }
  std::sort(critical.begin(), critical.end(), angular::less);
  critical.erase(std::unique(critical.begin(), critical.end(), angular::same_direction), critical.end());
  if (critical.size() == 2) {
    // A single pair-line: the two intervals are half-planes.
    for (const Point& c : critical) {
      const Point d = perp(c);
      out.push_back({d, projection_order(pts, d)});
    }
    return out;
  }
  for (std::size_t t = 0; t < critical.size(); ++t) {
    const Point d = critical[t] + critical[(t + 1) % critical.size()];
    out.push_back({d, projection_order(pts, d)});
  }
  return out;
}

namespace detail {

inline void require_partition(std::size_t n, std::span<const Label> partition) {
  if (n % 3 != 0) throw DomainError("3-decomposability needs n divisible by 3");
  if (partition.size() != n) throw DomainError("partition size does not match the point count");
  if (!labels_balanced(partition)) throw DomainError("partition classes must each hold n/3 points");
}

inline std::optional<DecompositionWitness> check_partition_on(std::span<const DirectionSample> samples,
                                                              std::span<const Label> partition,
                                                              DecompositionMode mode) {
  const std::size_t needed = required_orders(mode);
  std::vector<std::optional<Direction>> found(needed);
  for (const auto& sample : samples) {
    const auto order = block_order(sample.order, partition);
    if (!order) continue;
    for (std::size_t c = 0; c < needed; ++c)
      if (!found[c] && *order == kRequiredBlockOrders[c]) found[c] = sample.direction;
  }
  DecompositionWitness w;
  w.partition.assign(partition.begin(), partition.end());
  for (auto& d : found) {
    if (!d) return std::nullopt;
    w.directions.push_back(std::move(*d));
  }
  return w;
}

}  // namespace detail

inline std::optional<DecompositionWitness> check_partition(
    const PointSet& s, std::span<const Label> partition,
    DecompositionMode mode = DecompositionMode::three_condition) {
  detail::require_partition(s.size(), partition);
  require_general_position(s.points);
  const auto samples = direction_samples(s.points);
  return detail::check_partition_on(samples, partition, mode);
}

// Re-derives each witness block order by sorting exact projections.
inline bool verify_witness(const PointSet& s, const DecompositionWitness& w,
                           DecompositionMode mode = DecompositionMode::three_condition) {
  const std::size_t needed = required_orders(mode);
  if (w.partition.size() != s.size() || w.directions.size() < needed) return false;
  if (!labels_balanced(w.partition)) return false;
  for (std::size_t c = 0; c < needed; ++c) {
    const auto order = block_order(projection_order(s.points, w.directions[c]), w.partition);
    if (!order || *order != kRequiredBlockOrders[c]) return false;
  }
  return true;
}

// The contiguous-thirds partition of a permutation: first third A, then B, C.
inline std::vector<Label> thirds_partition(std::span<const std::size_t> perm) {
  const std::size_t s = perm.size() / 3;
  std::vector<Label> labels(perm.size());
  for (std::size_t p = 0; p < perm.size(); ++p) labels[perm[p]] = static_cast<Label>(p / s);
  return labels;
}

// Exhaustive search. Condition (i) makes A, B, C contiguous blocks of some
// permutation of the circular sequence, so trying the contiguous-thirds
// partition of all 2*C(n,2) permutations (a halfperiod and its reversal)
// covers every candidate.
inline std::optional<DecompositionWitness> find_partition(
    const PointSet& s, DecompositionMode mode = DecompositionMode::three_condition) {
  const std::size_t n = s.size();
  if (n % 3 != 0) throw DomainError("3-decomposability needs n divisible by 3");
  require_general_position(s.points);
  if (n == 0) return std::nullopt;
  const auto samples = direction_samples(s.points);
  const Halfperiod h = build_halfperiod(s.points);
  std::set<std::vector<Label>> tried;
  std::optional<DecompositionWitness> result;
  h.for_each_permutation([&](std::size_t, const std::vector<std::size_t>& perm) {
    if (result) return;
    const std::vector<std::size_t> reversed(perm.rbegin(), perm.rend());
    for (const auto* p : {&perm, &reversed}) {
      auto candidate = thirds_partition(*p);
      if (!tried.insert(candidate).second) continue;
      if (auto w = detail::check_partition_on(samples, candidate, mode)) {
        result = std::move(w);
        return;
      }
    }
  });
  return result;
}

// Scans a labeled halfperiod: pi_0 must read A|B|C; returns the first s with
// pi_s reading B|A|C and the first t > s with pi_t reading B|C|A.
inline std::optional<std::pair<std::size_t, std::size_t>> check_halfperiod(const Halfperiod& h,
                                                                           std::span<const Label> labels) {
  if (labels.empty()) throw DomainError("check_halfperiod needs labels");
  if (labels.size() != h.n()) throw DomainError("label count does not match halfperiod size");
  const auto first = block_order(h.initial_permutation(), labels);
  if (!first || *first != kRequiredBlockOrders[0]) return std::nullopt;
  std::optional<std::size_t> s, t;
  h.for_each_permutation([&](std::size_t step, const std::vector<std::size_t>& perm) {
    if (t) return;
    const auto order = block_order(perm, labels);
    if (!order) return;
    if (!s && *order == kRequiredBlockOrders[1]) s = step;
    else if (s && *order == kRequiredBlockOrders[2]) t = step;
  });
  if (!s || !t) return std::nullopt;
  return std::pair{*s, *t};
}

struct DecomposableHalfperiod {
  Halfperiod halfperiod;
  std::size_t s;
  std::size_t t;
};

// Searches for a halfperiod of the point set that is 3-decomposable under the
// given labels: start at a direction realizing A|B|C and rotate either way.
inline std::optional<DecomposableHalfperiod> decomposable_halfperiod(const PointSet& set,
                                                                     std::span<const Label> labels) {
  detail::require_partition(set.size(), labels);
  require_general_position(set.points);
  for (const auto& sample : direction_samples(set.points)) {
    const auto order = block_order(sample.order, labels);
    if (!order || *order != kRequiredBlockOrders[0]) continue;
    for (Rotation rot : {Rotation::counterclockwise, Rotation::clockwise}) {
      Halfperiod h = build_halfperiod(set.points, sample.direction, rot);
      if (auto st = check_halfperiod(h, labels)) return DecomposableHalfperiod{std::move(h), st->first, st->second};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Instance generator

enum class GeneratorShape { triangle_clusters, near_optimal_template };

inline std::optional<GeneratorShape> parse_shape(std::string_view name) {
  if (name == "triangle-clusters") return GeneratorShape::triangle_clusters;
  if (name == "near-optimal-template") return GeneratorShape::near_optimal_template;
  return std::nullopt;
}

inline std::string_view to_string(GeneratorShape shape) {
  return shape == GeneratorShape::triangle_clusters ? "triangle-clusters" : "near-optimal-template";
}

// SplitMix64.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi]; the span is tiny so modulo bias is irrelevant here.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

inline const std::array<Point, 3>& cluster_template() {
  static const std::array<Point, 3> vertices{
      Point{0, 0}, Point{1, 0}, Point{make_rational(1, 2), make_rational(9, 10)}};
  return vertices;
}

namespace detail {

inline constexpr std::int64_t kJitterGrid = 1000;

// A point of the unit disk on a 1/1000 grid.
inline Point disk_offset(SplitMix64& rng) {
  for (;;) {
    const std::int64_t x = rng.uniform(-kJitterGrid, kJitterGrid), y = rng.uniform(-kJitterGrid, kJitterGrid);
    if (x * x + y * y <= kJitterGrid * kJitterGrid) return {make_rational(x, kJitterGrid), make_rational(y, kJitterGrid)};
  }
}

// Unit-scale offsets of every point from its cluster vertex.
inline std::vector<Point> cluster_offsets(std::size_t n, GeneratorShape shape, SplitMix64& rng) {
  const std::size_t s = n / 3;
  std::vector<Point> offsets;
  offsets.reserve(n);
  const auto& v = cluster_template();
  const Point centroid{(v[0].x + v[1].x + v[2].x) / 3, (v[0].y + v[1].y + v[2].y) / 3};
  for (std::size_t c = 0; c < 3; ++c) {
    // Short arc bending toward the centroid, tangent perpendicular to it.
    const Point inward = centroid - v[c];
    const Point tangent = perp(inward);
    for (std::size_t i = 0; i < s; ++i) {
      Point jitter = disk_offset(rng);
      if (shape == GeneratorShape::triangle_clusters) {
        offsets.push_back(std::move(jitter));
        continue;
      }
      const Rational t = s == 1 ? Rational(0) : make_rational(2 * static_cast<std::int64_t>(i) - static_cast<std::int64_t>(s - 1),
                                                               static_cast<std::int64_t>(s));
      offsets.push_back(t * tangent + (t * t / 2) * inward + make_rational(1, 20) * jitter);
    }
  }
  return offsets;
}

}  // namespace detail

// Labeled 3-decomposable set: n/3 points per class, clustered around the
// vertices (0,0), (1,0), (1/2, 9/10) for A, B, C. The cluster radius starts
// at 1/8 and is halved until the three-condition checker accepts.
inline PointSet generate(std::size_t n, std::uint64_t seed,
                         GeneratorShape shape = GeneratorShape::triangle_clusters) {
  if (n < 3 || n % 3 != 0) throw DomainError("generate needs n >= 3 divisible by 3");
  SplitMix64 rng(seed);
  const std::size_t s = n / 3;
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i / s);

  std::vector<Point> offsets = detail::cluster_offsets(n, shape, rng);
  Rational radius = make_rational(1, 8);
  for (int attempt = 0; attempt < 256; ++attempt) {
    PointSet set;
    set.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) set.points.push_back(cluster_template()[i / s] + radius * offsets[i]);
    set.labels = labels;
    if (!is_general_position(set.points)) {
      offsets = detail::cluster_offsets(n, shape, rng);
      continue;
    }
    if (check_partition(set, labels, DecompositionMode::three_condition)) return set;
    radius /= 2;
  }
  throw std::logic_error("generator failed to converge");
}

}  // namespace ksetlab
