#pragma once

// Finite trees with positive exact edge lengths, standing in for metric trees:
// valence, branches, diameters, the branch-point height (diameter of the third
// largest branch), paths, medians, and construction from planar segments or
// from a contour (excursion) function.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "csst/exact.hpp"
#include "csst/excursion.hpp"
#include "csst/planar_ifs.hpp"

namespace csst {

using VertexId = std::uint32_t;

struct Edge {
  VertexId a;
  VertexId b;
  Rational length;
};

/// Vertices are 0..size()-1. Each vertex also carries an external name
/// (strictly increasing with the index) that survives smoothing and appears
/// in every file format.
class FiniteMetricTree {
 public:
  /// Throws NotATree unless the edges form a spanning tree with positive lengths.
  FiniteMetricTree(std::size_t vertex_count, std::vector<Edge> edges,
                   std::vector<std::optional<Point>> positions = {}, std::vector<std::int64_t> names = {});

  std::size_t size() const { return names_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const VertexId> neighbors(VertexId v) const;
  /// Length of the edge from v to its i-th neighbor.
  const Rational& neighbor_length(VertexId v, std::size_t i) const;
  int degree(VertexId v) const;

  std::int64_t name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> vertex_named(std::int64_t name) const;
  const std::optional<Point>& position(VertexId v) const { return positions_[v]; }
  bool has_positions() const { return has_positions_; }
  std::optional<VertexId> vertex_at(const Point& p) const;

  std::vector<VertexId> path(VertexId a, VertexId b) const;
  Rational distance(VertexId a, VertexId b) const;
  VertexId lowest_common_ancestor(VertexId a, VertexId b) const;
  std::size_t hop_depth(VertexId v) const { return depth_[v]; }
  Rational diameter() const;

  /// Removes valence-2 vertices, merging their edges; names are kept.
  FiniteMetricTree smoothed() const;

  /// FNV-1a over the canonical serialization, as 16 hex digits.
  std::string hash() const;

  void check_vertex(VertexId v) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<std::size_t> adjacency_edge_;
  std::vector<std::optional<Point>> positions_;
  std::vector<std::int64_t> names_;
  bool has_positions_ = false;
  std::unordered_map<Point, VertexId, PointHash> by_position_;

  // Rooted at vertex 0.
  std::vector<VertexId> parent_;
  std::vector<std::size_t> depth_;
  std::vector<Rational> root_distance_;
  std::vector<VertexId> bfs_order_;
};

int valence(const FiniteMetricTree& t, VertexId v);

/// One component of T \ {p}, together with p.
struct Branch {
  VertexId root;
  VertexId first;  // neighbor of root inside the branch
  std::vector<VertexId> vertices;  // sorted, includes root
};

std::vector<Branch> branches_at(const FiniteMetricTree& t, VertexId p);

/// Diameter of a connected vertex subset (double sweep).
Rational subtree_diameter(const FiniteMetricTree& t, std::span<const VertexId> vertices);

/// Branch diameters for every (vertex, neighbor slot), computed by rerooting in O(n).
class BranchDiameters {
 public:
  explicit BranchDiameters(const FiniteMetricTree& t);

  /// Diameter of the branch of v containing its i-th neighbor.
  const Rational& at(VertexId v, std::size_t i) const { return values_[offsets_[v] + i]; }
  /// Third largest branch diameter; NotABranchPoint if valence < 3.
  Rational height(VertexId v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Rational> values_;
};

Rational height(const FiniteMetricTree& t, VertexId p);

/// Allowed branch point of maximal height; ties go to the smallest vertex id.
/// Throws NoBranchPoint when no allowed branch point exists.
VertexId max_height_branch_point(const FiniteMetricTree& t, const std::function<bool(VertexId)>& allowed);
VertexId max_height_branch_point(const FiniteMetricTree& t, const BranchDiameters& diameters,
                                 const std::function<bool(VertexId)>& allowed);

std::vector<VertexId> path(const FiniteMetricTree& t, VertexId a, VertexId b);
Rational tree_distance(const FiniteMetricTree& t, VertexId a, VertexId b);

/// The vertex on all three pairwise paths; DegenerateInput unless distinct.
VertexId median(const FiniteMetricTree& t, VertexId p1, VertexId p2, VertexId p3);

/// Endpoints identified by exact coordinate equality, numbered by first
/// appearance. endpoint_ids, when given, receives the two ids of each segment.
FiniteMetricTree from_segments(std::span<const Segment> segments, bool smooth = false,
                               std::vector<std::array<VertexId, 2>>* endpoint_ids = nullptr);

struct ContourTree {
  FiniteMetricTree tree;
  std::vector<std::size_t> mark_times;
  std::vector<VertexId> mark_vertices;
};

/// Tree spanned by the given (distinct) grid times under
/// d_e(s,t) = e(s) + e(t) - 2 min e[s,t].
ContourTree from_contour(const ExcursionPath& e, std::span<const std::size_t> mark_times);

/// k uniform marks without replacement; marks are redrawn when equal grid
/// minima would glue more than three branches together.
ContourTree from_contour(const ExcursionPath& e, std::size_t k, std::uint64_t seed,
                         std::vector<std::string>* tie_log = nullptr);

/// Counts of vertex valences.
std::vector<std::size_t> valence_histogram(const FiniteMetricTree& t);

/// Restricted searches over a vertex subset, reusing one scratch buffer.
class SubsetSearch {
 public:
  explicit SubsetSearch(const FiniteMetricTree& t);

  /// Marks the allowed vertex set; later searches stay inside it.
  void restrict_to(std::span<const VertexId> vertices);
  bool allowed(VertexId v) const { return stamp_[v] == current_; }

  /// Farthest allowed vertex from `from` and its distance.
  std::pair<VertexId, Rational> farthest(VertexId from);
  Rational diameter(VertexId any_member);

  /// Allowed vertices reachable from `start` without passing through `blocked`.
  std::vector<VertexId> component(VertexId start, VertexId blocked);

 private:
  const FiniteMetricTree& tree_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> visit_;
  std::uint32_t current_ = 0;
  std::uint32_t visit_round_ = 0;
};

}  // namespace csst
