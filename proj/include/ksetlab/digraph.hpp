#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "ksetlab/rational.hpp"

namespace ksetlab {

enum class DigraphKind { aa, bb, cc, synthetic };

inline std::string_view to_string(DigraphKind k) {
  switch (k) {
    case DigraphKind::aa: return "aa";
    case DigraphKind::bb: return "bb";
    case DigraphKind::cc: return "cc";
    case DigraphKind::synthetic: return "synthetic";
  }
  return "?";
}

// Digraph on same-class elements x_1..x_s, stored 0-based (vertex v is
// x_{v+1}). Every edge goes from a lower to a higher index.
class ValidSwapDigraph {
 public:
  ValidSwapDigraph(DigraphKind kind, std::size_t vertex_count)
      : kind_(kind), indegree_(vertex_count, 0), outdegree_(vertex_count, 0) {}

  void add_edge(std::size_t from, std::size_t to) {
    if (from >= to || to >= vertex_count()) throw DomainError("edge must go from a lower to a higher index");
    edges_.emplace_back(from, to);
    ++outdegree_[from];
    ++indegree_[to];
  }

  DigraphKind kind() const { return kind_; }
  std::size_t vertex_count() const { return indegree_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::size_t indegree(std::size_t v) const { return indegree_.at(v); }
  std::size_t outdegree(std::size_t v) const { return outdegree_.at(v); }
  const std::vector<std::size_t>& indegrees() const { return indegree_; }

 private:
  DigraphKind kind_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> indegree_;
  std::vector<std::size_t> outdegree_;
};

// How the supply side of the degree inequality counts admissible senders of
// x_j (1-based): the senders are exactly the x_l with l < j, so there are j-1
// of them. The literal reading caps indegree at s-j instead, which does not
// survive contact with actual halfperiods.
enum class SenderConvention { lower_indices, literal };

// indeg(x_j) <= window + outdeg(x_j) and indeg(x_j) <= senders(j) for all j.
inline bool satisfies_degree_bounds(const ValidSwapDigraph& g, std::size_t window,
                                    SenderConvention convention = SenderConvention::lower_indices) {
  const std::size_t s = g.vertex_count();
  for (std::size_t v = 0; v < s; ++v) {
    const std::size_t in = g.indegree(v);
    if (in > window + g.outdegree(v)) return false;
    const std::size_t senders = convention == SenderConvention::lower_indices ? v : s - 1 - v;
    if (in > senders) return false;
  }
  return true;
}

}  // namespace ksetlab
