#pragma once

// Slow, independent reference computations for the tests.

#include <complex>
#include <map>
#include <unordered_map>
#include <queue>
#include <random>
#include <vector>

#include "csst/metric_tree.hpp"
#include "csst/planar_ifs.hpp"

namespace oracle {

using csst::Point;
using csst::Rational;
using csst::VertexId;

// Eq. of the generators in floating point, written out independently.
inline std::complex<double> f(int k, std::complex<double> z) {
  const std::complex<double> i(0, 1);
  switch (k) {
    case 1: return z / 2.0 - 0.5;
    case 2: return std::conj(z) / 2.0 + 0.5;
    default: return i * std::conj(z) / 2.0 + i / 2.0;
  }
}

/// f_{w_1} o ... o f_{w_n}(z0) by applying from the innermost letter outwards.
inline std::complex<double> iterate(const std::vector<int>& letters, std::complex<double> z0) {
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) z0 = f(*it, z0);
  return z0;
}

/// All-pairs exact distances by a traversal from every vertex.
inline std::vector<std::vector<Rational>> all_pairs(const csst::FiniteMetricTree& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (VertexId s = 0; s < n; ++s) {
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      const auto nb = t.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (seen[nb[i]]) continue;
        seen[nb[i]] = 1;
        d[s][nb[i]] = d[s][v] + t.neighbor_length(v, i);
        stack.push_back(nb[i]);
      }
    }
  }
  return d;
}

/// Random recursive tree: vertex v > 0 attaches to a uniform earlier vertex.
inline csst::FiniteMetricTree random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<csst::Edge> edges;
  std::uniform_int_distribution<int> len(1, 16);
  for (VertexId v = 1; v < n; ++v) {
    std::uniform_int_distribution<VertexId> pick(0, v - 1);
    edges.push_back({pick(rng), v, Rational(len(rng)) / 8});
  }
  return csst::FiniteMetricTree(n, std::move(edges));
}

/// Tree whose internal vertices all have valence 3: start from a 3-star and
/// repeatedly hang a new leaf off the midpoint of a random edge.
inline csst::FiniteMetricTree random_trivalent_tree(std::size_t leaves, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 64);
  std::vector<csst::Edge> edges{{0, 1, Rational(len(rng)) / 16}, {0, 2, Rational(len(rng)) / 16},
                                {0, 3, Rational(len(rng)) / 16}};
  VertexId next = 4;
  for (std::size_t l = 3; l < leaves; ++l) {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const std::size_t e = pick(rng);
    const csst::Edge old = edges[e];
    const VertexId mid = next++, leaf = next++;
    const Rational half = old.length / 2;
    edges[e] = {old.a, mid, half};
    edges.push_back({mid, old.b, old.length - half});
    edges.push_back({mid, leaf, Rational(len(rng)) / 16});
  }
  return csst::FiniteMetricTree(next, std::move(edges));
}

/// Shortest paths in the graph of segments, endpoints identified by
/// coordinates. The graph is a tree, so a single traversal from one root
/// gives every path; axis-parallel segments keep lengths rational.
class SegmentGraph {
 public:
  explicit SegmentGraph(const std::vector<csst::Segment>& segments) {
    auto id = [&](const Point& p) {
      auto [it, inserted] = ids_.emplace(p, static_cast<VertexId>(adj_.size()));
      if (inserted) adj_.emplace_back();
      return it->second;
    };
    for (const auto& s : segments) {
      const Point d = s.b - s.a;
      const Rational len = d.x == 0 ? abs(d.y) : abs(d.x);
      const VertexId a = id(s.a), b = id(s.b);
      adj_[a].emplace_back(b, len);
      adj_[b].emplace_back(a, len);
    }
    const std::size_t n = adj_.size();
    parent_.assign(n, 0);
    depth_.assign(n, 0);
    dist_.assign(n, Rational(0));
    std::vector<char> seen(n, 0);
    std::queue<VertexId> queue;
    queue.push(0);
    seen[0] = 1;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop();
      for (const auto& [w, len] : adj_[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        parent_[w] = v;
        depth_[w] = depth_[v] + 1;
        dist_[w] = dist_[v] + len;
        queue.push(w);
      }
    }
  }

  std::size_t size() const { return adj_.size(); }
  bool has(const Point& p) const { return ids_.count(p) > 0; }

  Rational distance(const Point& a, const Point& b) const {
    VertexId x = ids_.at(a), y = ids_.at(b);
    const Rational total = dist_[x] + dist_[y];
    while (depth_[x] > depth_[y]) x = parent_[x];
    while (depth_[y] > depth_[x]) y = parent_[y];
    while (x != y) {
      x = parent_[x];
      y = parent_[y];
    }
    return total - 2 * dist_[x];
  }

 private:
  std::unordered_map<Point, VertexId, csst::PointHash> ids_;
  std::vector<std::vector<std::pair<VertexId, Rational>>> adj_;
  std::vector<VertexId> parent_;
  std::vector<std::size_t> depth_;
  std::vector<Rational> dist_;
};

}  // namespace oracle
