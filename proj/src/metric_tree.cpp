#include "csst/metric_tree.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <random>
#include <sstream>

namespace csst {

void ExcursionPath::validate() const {
  if (values.size() < 3) throw Error(ErrorCode::InvalidExcursion, "need at least three grid values");
  if (values.front() != 0.0 || values.back() != 0.0) {
    throw Error(ErrorCode::InvalidExcursion, "excursion must start and end at 0");
  }
  bool positive = false;
  for (double v : values) {
    if (!(v >= 0.0)) throw Error(ErrorCode::InvalidExcursion, "excursion must be nonnegative");
    positive |= v > 0.0;
  }
  if (!positive) throw Error(ErrorCode::InvalidExcursion, "excursion is identically zero");
}

FiniteMetricTree::FiniteMetricTree(std::size_t vertex_count, std::vector<Edge> edges,
                                   std::vector<std::optional<Point>> positions, std::vector<std::int64_t> names)
    : edges_(std::move(edges)), positions_(std::move(positions)), names_(std::move(names)) {
  if (vertex_count == 0) throw Error(ErrorCode::NotATree, "a tree needs at least one vertex");
  if (edges_.size() != vertex_count - 1) {
    throw Error(ErrorCode::NotATree, std::to_string(edges_.size()) + " edges for " +
                                         std::to_string(vertex_count) + " vertices");
  }
  if (names_.empty()) {
    names_.resize(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) names_[i] = static_cast<std::int64_t>(i);
  }
  if (names_.size() != vertex_count) throw Error(ErrorCode::InvalidArgument, "one name per vertex required");
  for (std::size_t i = 1; i < vertex_count; ++i) {
    if (names_[i - 1] >= names_[i]) throw Error(ErrorCode::InvalidArgument, "vertex names must increase");
  }
  if (positions_.empty()) positions_.resize(vertex_count);
  if (positions_.size() != vertex_count) throw Error(ErrorCode::InvalidArgument, "one position slot per vertex");

  std::vector<std::size_t> count(vertex_count, 0);
  for (auto& e : edges_) {
    e.length.canonicalize();
    if (e.a >= vertex_count || e.b >= vertex_count) throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
    if (e.a == e.b) throw Error(ErrorCode::NotATree, "self loop at vertex " + std::to_string(e.a));
    if (e.length <= 0) throw Error(ErrorCode::InvalidArgument, "edge lengths must be positive");
    ++count[e.a];
    ++count[e.b];
  }
  offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] = offsets_[v] + count[v];
  adjacency_.resize(offsets_.back());
  adjacency_edge_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    adjacency_[fill[e.a]] = e.b;
    adjacency_edge_[fill[e.a]++] = i;
    adjacency_[fill[e.b]] = e.a;
    adjacency_edge_[fill[e.b]++] = i;
  }

  parent_.assign(vertex_count, 0);
  depth_.assign(vertex_count, 0);
  root_distance_.assign(vertex_count, Rational(0));
  std::vector<char> seen(vertex_count, 0);
  bfs_order_.reserve(vertex_count);
  bfs_order_.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < bfs_order_.size(); ++head) {
    const VertexId v = bfs_order_[head];
    for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
      const VertexId w = adjacency_[i];
      if (seen[w]) {
        if (w != parent_[v] || v == 0) throw Error(ErrorCode::NotATree, "cycle through vertex " + std::to_string(w));
        continue;
      }
      seen[w] = 1;
      parent_[w] = v;
      depth_[w] = depth_[v] + 1;
      root_distance_[w] = root_distance_[v] + edges_[adjacency_edge_[i]].length;
      bfs_order_.push_back(w);
    }
  }
  if (bfs_order_.size() != vertex_count) throw Error(ErrorCode::NotATree, "edges do not connect all vertices");

  has_positions_ = std::all_of(positions_.begin(), positions_.end(), [](const auto& p) { return p.has_value(); });
  if (has_positions_) {
    by_position_.reserve(vertex_count);
    for (VertexId v = 0; v < vertex_count; ++v) {
      if (!by_position_.emplace(*positions_[v], v).second) {
        throw Error(ErrorCode::InvalidArgument, "two vertices share position " + to_string(*positions_[v]));
      }
    }
  }
}

std::span<const VertexId> FiniteMetricTree::neighbors(VertexId v) const {
  check_vertex(v);
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

const Rational& FiniteMetricTree::neighbor_length(VertexId v, std::size_t i) const {
  return edges_[adjacency_edge_[offsets_[v] + i]].length;
}

int FiniteMetricTree::degree(VertexId v) const {
  check_vertex(v);
  return static_cast<int>(offsets_[v + 1] - offsets_[v]);
}

std::optional<VertexId> FiniteMetricTree::vertex_named(std::int64_t name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

std::optional<VertexId> FiniteMetricTree::vertex_at(const Point& p) const {
  auto it = by_position_.find(p);
  if (it == by_position_.end()) return std::nullopt;
  return it->second;
}

void FiniteMetricTree::check_vertex(VertexId v) const {
  if (v >= size()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " not in tree");
}

VertexId FiniteMetricTree::lowest_common_ancestor(VertexId a, VertexId b) const {
  check_vertex(a);
  check_vertex(b);
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

std::vector<VertexId> FiniteMetricTree::path(VertexId a, VertexId b) const {
  const VertexId top = lowest_common_ancestor(a, b);
  std::vector<VertexId> up, down;
  for (VertexId v = a; v != top; v = parent_[v]) up.push_back(v);
  for (VertexId v = b; v != top; v = parent_[v]) down.push_back(v);
  up.push_back(top);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

Rational FiniteMetricTree::distance(VertexId a, VertexId b) const {
  const VertexId top = lowest_common_ancestor(a, b);
  return root_distance_[a] + root_distance_[b] - 2 * root_distance_[top];
}

Rational FiniteMetricTree::diameter() const {
  VertexId far = 0;
  for (VertexId v = 0; v < size(); ++v) {
    if (root_distance_[v] > root_distance_[far]) far = v;
  }
  Rational best = 0;
  for (VertexId v = 0; v < size(); ++v) best = std::max(best, distance(far, v));
  return best;
}

FiniteMetricTree FiniteMetricTree::smoothed() const {
  const std::size_t n = size();
  std::vector<VertexId> new_id(n, 0);
  std::vector<char> keep(n, 0);
  std::size_t kept = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (degree(v) != 2) {
      keep[v] = 1;
      new_id[v] = static_cast<VertexId>(kept++);
    }
  }
  if (kept == 0) {
    // Cannot happen for a finite tree (it has leaves); keep it total anyway.
    return *this;
  }
  std::vector<Edge> edges;
  std::vector<std::optional<Point>> positions;
  std::vector<std::int64_t> names;
  for (VertexId v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    positions.push_back(positions_[v]);
    names.push_back(names_[v]);
    for (std::size_t i = 0; i < static_cast<std::size_t>(degree(v)); ++i) {
      VertexId prev = v, cur = adjacency_[offsets_[v] + i];
      Rational length = neighbor_length(v, i);
      while (!keep[cur]) {
        const VertexId n0 = adjacency_[offsets_[cur]], n1 = adjacency_[offsets_[cur] + 1];
        const std::size_t slot = n0 == prev ? 1 : 0;
        const VertexId next = slot == 1 ? n1 : n0;
        length += neighbor_length(cur, slot);
        prev = cur;
        cur = next;
      }
      if (v < cur) edges.push_back({new_id[v], new_id[cur], length});
    }
  }
  return FiniteMetricTree(kept, std::move(edges), std::move(positions), std::move(names));
}

std::string FiniteMetricTree::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  feed(std::to_string(size()));
  for (VertexId v = 0; v < size(); ++v) {
    feed(std::to_string(names_[v]));
    if (positions_[v]) feed(to_string(*positions_[v]));
  }
  for (const auto& e : edges_) {
    feed(std::to_string(names_[e.a]) + "-" + std::to_string(names_[e.b]) + ":" + to_string(e.length));
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

int valence(const FiniteMetricTree& t, VertexId v) { return t.degree(v); }

SubsetSearch::SubsetSearch(const FiniteMetricTree& t) : tree_(t), stamp_(t.size(), 0), visit_(t.size(), 0) {}

void SubsetSearch::restrict_to(std::span<const VertexId> vertices) {
  ++current_;
  for (VertexId v : vertices) {
    tree_.check_vertex(v);
    stamp_[v] = current_;
  }
}

std::pair<VertexId, Rational> SubsetSearch::farthest(VertexId from) {
  ++visit_round_;
  std::vector<std::pair<VertexId, Rational>> stack{{from, Rational(0)}};
  visit_[from] = visit_round_;
  VertexId best = from;
  Rational best_d = 0;
  while (!stack.empty()) {
    auto [v, d] = std::move(stack.back());
    stack.pop_back();
    if (d > best_d) {
      best_d = d;
      best = v;
    }
    const auto nbrs = tree_.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId w = nbrs[i];
      if (!allowed(w) || visit_[w] == visit_round_) continue;
      visit_[w] = visit_round_;
      stack.emplace_back(w, d + tree_.neighbor_length(v, i));
    }
  }
  return {best, best_d};
}

Rational SubsetSearch::diameter(VertexId any_member) {
  const VertexId end = farthest(any_member).first;
  return farthest(end).second;
}

std::vector<VertexId> SubsetSearch::component(VertexId start, VertexId blocked) {
  ++visit_round_;
  std::vector<VertexId> out{start};
  visit_[start] = visit_round_;
  visit_[blocked] = visit_round_;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (VertexId w : tree_.neighbors(out[head])) {
      if (!allowed(w) || visit_[w] == visit_round_) continue;
      visit_[w] = visit_round_;
      out.push_back(w);
    }
  }
  return out;
}

std::vector<Branch> branches_at(const FiniteMetricTree& t, VertexId p) {
  t.check_vertex(p);
  std::vector<Branch> out;
  for (VertexId first : t.neighbors(p)) {
    Branch b{p, first, {p}};
    std::vector<VertexId> stack{first};
    std::vector<VertexId> from{p};
    while (!stack.empty()) {
      const VertexId v = stack.back();
      const VertexId came = from.back();
      stack.pop_back();
      from.pop_back();
      b.vertices.push_back(v);
      for (VertexId w : t.neighbors(v)) {
        if (w == came) continue;
        stack.push_back(w);
        from.push_back(v);
      }
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    out.push_back(std::move(b));
  }
  return out;
}

Rational subtree_diameter(const FiniteMetricTree& t, std::span<const VertexId> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex set");
  SubsetSearch search(t);
  search.restrict_to(vertices);
  return search.diameter(vertices.front());
}

BranchDiameters::BranchDiameters(const FiniteMetricTree& t) {
  const std::size_t n = t.size();
  offsets_.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + static_cast<std::size_t>(t.degree(v));
  values_.assign(offsets_.back(), Rational(0));

  // Root at 0; BFS order from the tree's own traversal.
  std::vector<VertexId> order{0};
  std::vector<VertexId> parent(n, 0);
  std::vector<std::size_t> parent_slot(n, 0);  // slot of parent in v's neighbor list
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId v = order[head];
    const auto nbrs = t.neighbors(v);
    for (VertexId w : nbrs) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = v;
      const auto wn = t.neighbors(w);
      parent_slot[w] = static_cast<std::size_t>(std::find(wn.begin(), wn.end(), v) - wn.begin());
      order.push_back(w);
    }
  }

  // Farthest reach and diameter inside each rooted subtree.
  std::vector<Rational> down_reach(n, Rational(0)), down_diam(n, Rational(0));
  for (std::size_t idx = n; idx-- > 0;) {
    const VertexId v = order[idx];
    Rational top1 = 0, top2 = 0, inner = 0;
    const auto nbrs = t.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId c = nbrs[i];
      if (v != 0 && i == parent_slot[v]) continue;
      Rational arm = t.neighbor_length(v, i) + down_reach[c];
      if (down_diam[c] > inner) inner = down_diam[c];
      if (arm > top1) {
        top2 = std::move(top1);
        top1 = std::move(arm);
      } else if (arm > top2) {
        top2 = std::move(arm);
      }
    }
    down_reach[v] = top1;
    down_diam[v] = std::max(inner, Rational(top1 + top2));
  }

  // Same quantities for the complement of each rooted subtree.
  std::vector<Rational> up_reach(n, Rational(0)), up_diam(n, Rational(0));
  struct Ranked {
    Rational value;
    std::size_t owner;  // neighbor slot, or npos for the upward arm
  };
  constexpr std::size_t kUp = static_cast<std::size_t>(-1);
  for (VertexId v : order) {
    const auto nbrs = t.neighbors(v);
    std::vector<Ranked> arms, inners;
    arms.push_back({up_reach[v], kUp});
    inners.push_back({up_diam[v], kUp});
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (v != 0 && i == parent_slot[v]) continue;
      const VertexId c = nbrs[i];
      arms.push_back({t.neighbor_length(v, i) + down_reach[c], i});
      inners.push_back({down_diam[c], i});
    }
    auto by_value = [](const Ranked& a, const Ranked& b) { return a.value > b.value; };
    const std::size_t keep_arms = std::min<std::size_t>(3, arms.size());
    std::partial_sort(arms.begin(), arms.begin() + static_cast<std::ptrdiff_t>(keep_arms), arms.end(), by_value);
    const std::size_t keep_inner = std::min<std::size_t>(2, inners.size());
    std::partial_sort(inners.begin(), inners.begin() + static_cast<std::ptrdiff_t>(keep_inner), inners.end(),
                      by_value);

    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId c = nbrs[i];
      if (v != 0 && i == parent_slot[v]) {
        // Branch of v towards its parent: the complement of v's subtree, plus v.
        values_[offsets_[v] + i] = std::max(up_diam[v], up_reach[v]);
        continue;
      }
      values_[offsets_[v] + i] = std::max(down_diam[c], Rational(t.neighbor_length(v, i) + down_reach[c]));
      Rational a1 = 0, a2 = 0;
      int taken = 0;
      for (std::size_t j = 0; j < keep_arms && taken < 2; ++j) {
        if (arms[j].owner == i) continue;
        (taken == 0 ? a1 : a2) = arms[j].value;
        ++taken;
      }
      Rational in = 0;
      for (std::size_t j = 0; j < keep_inner; ++j) {
        if (inners[j].owner == i) continue;
        in = inners[j].value;
        break;
      }
      up_reach[c] = t.neighbor_length(v, i) + a1;
      up_diam[c] = std::max(in, Rational(a1 + a2));
    }
  }
}

Rational BranchDiameters::height(VertexId v) const {
  if (v + 1 >= offsets_.size()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " not in tree");
  const std::size_t deg = offsets_[v + 1] - offsets_[v];
  if (deg < 3) {
    throw Error(ErrorCode::NotABranchPoint, "vertex " + std::to_string(v) + " has valence " + std::to_string(deg));
  }
  std::vector<Rational> d(values_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                          values_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  std::nth_element(d.begin(), d.begin() + 2, d.end(), std::greater<>());
  return d[2];
}

Rational height(const FiniteMetricTree& t, VertexId p) {
  t.check_vertex(p);
  if (t.degree(p) < 3) {
    throw Error(ErrorCode::NotABranchPoint, "vertex " + std::to_string(p) + " has valence " +
                                                std::to_string(t.degree(p)));
  }
  std::vector<Rational> d;
  SubsetSearch search(t);
  for (const auto& b : branches_at(t, p)) {
    search.restrict_to(b.vertices);
    d.push_back(search.diameter(p));
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d[2];
}

VertexId max_height_branch_point(const FiniteMetricTree& t, const BranchDiameters& diameters,
                                 const std::function<bool(VertexId)>& allowed) {
  std::optional<VertexId> best;
  Rational best_h;
  for (VertexId v = 0; v < t.size(); ++v) {
    if (t.degree(v) < 3 || !allowed(v)) continue;
    Rational h = diameters.height(v);
    if (!best || h > best_h) {
      best = v;
      best_h = std::move(h);
    }
  }
  if (!best) throw Error(ErrorCode::NoBranchPoint, "no admissible branch point");
  return *best;
}

VertexId max_height_branch_point(const FiniteMetricTree& t, const std::function<bool(VertexId)>& allowed) {
  return max_height_branch_point(t, BranchDiameters(t), allowed);
}

std::vector<VertexId> path(const FiniteMetricTree& t, VertexId a, VertexId b) { return t.path(a, b); }

Rational tree_distance(const FiniteMetricTree& t, VertexId a, VertexId b) { return t.distance(a, b); }

VertexId median(const FiniteMetricTree& t, VertexId p1, VertexId p2, VertexId p3) {
  t.check_vertex(p1);
  t.check_vertex(p2);
  t.check_vertex(p3);
  if (p1 == p2 || p2 == p3 || p1 == p3) throw Error(ErrorCode::DegenerateInput, "median needs three distinct vertices");
  const std::array<VertexId, 3> c{t.lowest_common_ancestor(p1, p2), t.lowest_common_ancestor(p2, p3),
                                  t.lowest_common_ancestor(p1, p3)};
  return *std::max_element(c.begin(), c.end(), [&](VertexId a, VertexId b) { return t.hop_depth(a) < t.hop_depth(b); });
}

FiniteMetricTree from_segments(std::span<const Segment> segments, bool smooth,
                               std::vector<std::array<VertexId, 2>>* endpoint_ids) {
  std::unordered_map<Point, VertexId, PointHash> ids;
  ids.reserve(segments.size() + 1);
  std::vector<std::optional<Point>> positions;
  std::vector<Edge> edges;
  edges.reserve(segments.size());
  if (endpoint_ids) endpoint_ids->clear();
  auto id_of = [&](const Point& p) {
    auto [it, inserted] = ids.emplace(p, static_cast<VertexId>(positions.size()));
    if (inserted) positions.emplace_back(p);
    return it->second;
  };
  for (const auto& s : segments) {
    if (s.a == s.b) throw Error(ErrorCode::InvalidArgument, "degenerate segment at " + to_string(s.a));
    const VertexId a = id_of(s.a);
    const VertexId b = id_of(s.b);
    edges.push_back({a, b, exact_distance(s.a, s.b)});
    if (endpoint_ids) endpoint_ids->push_back({a, b});
  }
  const std::size_t n = positions.size();
  if (n == 0) throw Error(ErrorCode::NotATree, "no segments");
  FiniteMetricTree tree(n, std::move(edges), std::move(positions));
  return smooth ? tree.smoothed() : tree;
}

ContourTree from_contour(const ExcursionPath& e, std::span<const std::size_t> mark_times) {
  e.validate();
  if (mark_times.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two marks");
  std::vector<std::size_t> marks(mark_times.begin(), mark_times.end());
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (marks[i] > e.n()) throw Error(ErrorCode::IndexOutOfRange, "mark time outside the grid");
    if (i > 0 && marks[i] <= marks[i - 1]) throw Error(ErrorCode::InvalidArgument, "mark times must increase");
  }

  // Cartesian-tree sweep: the stack holds the rightmost root-to-leaf path with
  // strictly increasing heights.
  std::vector<double> heights;
  std::vector<std::optional<VertexId>> parent;
  auto new_node = [&](double h) {
    heights.push_back(h);
    parent.emplace_back();
    return static_cast<VertexId>(heights.size() - 1);
  };
  std::vector<VertexId> stack;
  std::vector<VertexId> mark_vertices;
  mark_vertices.push_back(new_node(e.values[marks[0]]));
  stack.push_back(mark_vertices[0]);
  for (std::size_t i = 1; i < marks.size(); ++i) {
    const double h = *std::min_element(e.values.begin() + static_cast<std::ptrdiff_t>(marks[i - 1]),
                                       e.values.begin() + static_cast<std::ptrdiff_t>(marks[i]) + 1);
    std::optional<VertexId> last;
    while (!stack.empty() && heights[stack.back()] > h) {
      const VertexId node = stack.back();
      stack.pop_back();
      if (last) parent[*last] = node;
      last = node;
    }
    VertexId junction;
    if (!stack.empty() && heights[stack.back()] == h) {
      junction = stack.back();
    } else {
      junction = new_node(h);
      stack.push_back(junction);
    }
    if (last) parent[*last] = junction;
    const double leaf_h = e.values[marks[i]];
    if (leaf_h == h) {
      mark_vertices.push_back(junction);
    } else {
      const VertexId leaf = new_node(leaf_h);
      stack.push_back(leaf);
      mark_vertices.push_back(leaf);
    }
  }
  for (std::size_t i = stack.size(); i-- > 1;) parent[stack[i]] = stack[i - 1];

  std::vector<Edge> edges;
  std::vector<Rational> exact(heights.size());
  for (std::size_t v = 0; v < heights.size(); ++v) exact[v] = from_double(heights[v]);
  for (VertexId v = 0; v < heights.size(); ++v) {
    if (parent[v]) edges.push_back({v, *parent[v], exact[v] - exact[*parent[v]]});
  }
  return {FiniteMetricTree(heights.size(), std::move(edges)), std::move(marks), std::move(mark_vertices)};
}

ContourTree from_contour(const ExcursionPath& e, std::size_t k, std::uint64_t seed, std::vector<std::string>* tie_log) {
  e.validate();
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need at least two marks");
  if (k > e.n() + 1) throw Error(ErrorCode::InvalidArgument, "more marks than grid points");
  std::mt19937_64 rng(seed);
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Floyd's sampling: k distinct grid indices, uniform.
    std::vector<std::size_t> chosen;
    std::unordered_map<std::size_t, char> taken;
    const std::size_t universe = e.n() + 1;
    for (std::size_t j = universe - k; j < universe; ++j) {
      std::uniform_int_distribution<std::size_t> pick(0, j);
      std::size_t t = pick(rng);
      if (taken.count(t)) t = j;
      taken[t] = 1;
      chosen.push_back(t);
    }
    std::sort(chosen.begin(), chosen.end());
    ContourTree out = from_contour(e, chosen);
    std::optional<VertexId> bad;
    for (VertexId v = 0; v < out.tree.size(); ++v) {
      if (out.tree.degree(v) > 3) {
        bad = v;
        break;
      }
    }
    if (!bad) return out;
    if (tie_log) {
      tie_log->push_back("attempt " + std::to_string(attempt) + ": vertex " + std::to_string(*bad) +
                         " has valence " + std::to_string(out.tree.degree(*bad)) + " (equal grid minima); resampling marks");
    }
  }
  throw Error(ErrorCode::InvalidExcursion, "could not draw marks without valence > 3 ties");
}

std::vector<std::size_t> valence_histogram(const FiniteMetricTree& t) {
  std::vector<std::size_t> hist;
  for (VertexId v = 0; v < t.size(); ++v) {
    const auto d = static_cast<std::size_t>(t.degree(v));
    if (hist.size() <= d) hist.resize(d + 1, 0);
    ++hist[d];
  }
  return hist;
}

}  // namespace csst
