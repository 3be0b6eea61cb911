#include "csst/decomposer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include "csst/planar_ifs.hpp"

namespace csst {

char to_char(Sign s) { return static_cast<char>(s); }

Sign parse_sign(char c) {
  if (c == '-') return Sign::Minus;
  if (c == '+') return Sign::Plus;
  throw Error(ErrorCode::ParseError, std::string("sign must be '-' or '+', got '") + c + "'");
}

Sign flipped(Sign s) { return s == Sign::Minus ? Sign::Plus : Sign::Minus; }

std::string_view to_string(TileKind kind) {
  switch (kind) {
    case TileKind::Root: return "root";
    case TileKind::LeafTile: return "leaf-tile";
    case TileKind::ArcTile: return "arc-tile";
    case TileKind::Terminal: return "terminal";
  }
  return "?";
}

TileKind parse_tile_kind(std::string_view text) {
  for (TileKind k : {TileKind::Root, TileKind::LeafTile, TileKind::ArcTile, TileKind::Terminal}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown tile kind '" + std::string(text) + "'");
}

const SignedLeaf* Tile::marked_with(Sign s) const {
  for (const auto& m : marked) {
    if (m.sign == s) return &m;
  }
  return nullptr;
}

const Tile* Decomposition::find(const FiniteWord& label) const {
  if (label.size() >= levels.size()) return nullptr;
  const auto& level = levels[label.size()];
  auto it = std::lower_bound(level.begin(), level.end(), label,
                             [](const Tile& t, const FiniteWord& l) { return t.label < l; });
  if (it == level.end() || !(it->label == label)) return nullptr;
  return &*it;
}

Tile* Decomposition::find(const FiniteWord& label) {
  return const_cast<Tile*>(static_cast<const Decomposition&>(*this).find(label));
}

std::size_t Decomposition::complete_depth() const {
  std::size_t k = 0;
  for (; k < levels.size(); ++k) {
    const bool full = levels[k].size() == static_cast<std::size_t>(std::pow(alphabet, static_cast<double>(k)));
    const bool open = std::none_of(levels[k].begin(), levels[k].end(),
                                   [](const Tile& t) { return t.kind == TileKind::Terminal; });
    if (!full || !open) break;
  }
  if (k == 0) throw Error(ErrorCode::DepthUnavailable, "root tile is terminal");
  return k - 1;
}

namespace {

std::string label_str(const FiniteWord& u) { return u.empty() ? std::string("(root)") : u.str(); }

TileKind kind_for(const std::vector<SignedLeaf>& marked) {
  return marked.size() == 2 ? TileKind::ArcTile : TileKind::LeafTile;
}

class Builder {
 public:
  Builder(std::shared_ptr<const FiniteMetricTree> tree, int m, StopRule stop)
      : tree_(std::move(tree)), t_(*tree_), m_(m), stop_(stop), diameters_(t_), search_(t_) {
    if (m_ < 3) throw Error(ErrorCode::InvalidArgument, "alphabet size must be at least 3");
    bool any = false;
    heights_.resize(t_.size());
    for (VertexId v = 0; v < t_.size(); ++v) {
      const int deg = t_.degree(v);
      if (deg < 3) continue;
      if (deg != m_) {
        throw Error(ErrorCode::NotMValent, "vertex " + std::to_string(t_.name(v)) + " has valence " +
                                               std::to_string(deg) + ", expected " + std::to_string(m_));
      }
      heights_[v] = diameters_.height(v);
      any = true;
    }
    if (!any) throw Error(ErrorCode::NoBranchPoint, "tree has no branch point");
    diam_t_ = t_.diameter();
    threshold_ = diam_t_ * from_double(stop_.min_diameter_fraction);
  }

  bool is_branch(VertexId v) const { return heights_[v].has_value(); }

  // Max height among candidates; ties to the smallest id.
  std::optional<VertexId> best_of(const std::vector<VertexId>& candidates) const {
    std::optional<VertexId> best;
    for (VertexId v : candidates) {
      if (!is_branch(v)) continue;
      if (!best || *heights_[v] > *heights_[*best] || (*heights_[v] == *heights_[*best] && v < *best)) best = v;
    }
    return best;
  }

  struct Child {
    std::vector<VertexId> vertices;
    Rational diameter;
    VertexId min_id;
    VertexId neighbor;
  };

  std::vector<Child> split(const std::vector<VertexId>& vertices, VertexId c) {
    search_.restrict_to(vertices);
    std::vector<Child> out;
    for (VertexId w : t_.neighbors(c)) {
      Child ch;
      ch.neighbor = w;
      ch.vertices = search_.component(w, c);
      ch.min_id = *std::min_element(ch.vertices.begin(), ch.vertices.end());
      ch.vertices.push_back(c);
      std::sort(ch.vertices.begin(), ch.vertices.end());
      out.push_back(std::move(ch));
    }
    for (auto& ch : out) {
      search_.restrict_to(ch.vertices);
      ch.diameter = search_.diameter(c);
    }
    return out;
  }

  // Assigns letters to children: forced ones first, the rest by decreasing
  // diameter, then smallest vertex id.
  std::vector<std::pair<Letter, Child>> label(std::vector<Child> children,
                                              const std::vector<std::pair<Letter, VertexId>>& forced) {
    std::vector<std::pair<Letter, Child>> out;
    std::vector<Letter> used;
    for (const auto& [letter, vertex] : forced) {
      auto it = std::find_if(children.begin(), children.end(), [&](const Child& ch) {
        return std::binary_search(ch.vertices.begin(), ch.vertices.end(), vertex);
      });
      out.emplace_back(letter, std::move(*it));
      children.erase(it);
      used.push_back(letter);
    }
    std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      if (a.diameter != b.diameter) return a.diameter > b.diameter;
      return a.min_id < b.min_id;
    });
    Letter next = 1;
    for (auto& ch : children) {
      while (std::find(used.begin(), used.end(), next) != used.end()) ++next;
      out.emplace_back(next, std::move(ch));
      used.push_back(next);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  std::vector<Tile> children_of(const Tile& parent) {
    const VertexId c = *parent.chosen;
    std::vector<std::pair<Letter, VertexId>> forced;
    const SignedLeaf* minus = parent.marked_with(Sign::Minus);
    const SignedLeaf* plus = parent.marked_with(Sign::Plus);
    if (minus) forced.emplace_back(1, minus->vertex);
    if (plus) forced.emplace_back(2, plus->vertex);
    return make_children(parent, c, label(split(parent.vertices, c), forced));
  }

  std::vector<Tile> make_children(const Tile& parent, VertexId c, std::vector<std::pair<Letter, Child>> labeled) {
    const SignedLeaf* minus = parent.marked_with(Sign::Minus);
    const SignedLeaf* plus = parent.marked_with(Sign::Plus);
    std::vector<Tile> out;
    for (auto& [letter, ch] : labeled) {
      Tile t;
      t.label = parent.label.with(letter);
      t.level = parent.level + 1;
      t.diameter = std::move(ch.diameter);
      t.vertices = std::move(ch.vertices);
      if (letter == 1) {
        if (minus) t.marked.push_back(*minus);
        t.marked.push_back({c, Sign::Plus});
      } else {
        t.marked.push_back({c, Sign::Minus});
        if (letter == 2 && plus) t.marked.push_back(*plus);
      }
      t.kind = kind_for(t.marked);
      out.push_back(std::move(t));
    }
    return out;
  }

  // Picks c_u, or makes the tile terminal.
  void choose(Tile& tile) {
    if (tile.diameter < threshold_) {
      tile.kind = TileKind::Terminal;
      tile.terminal_reason = "diameter below stop threshold";
      return;
    }
    std::vector<VertexId> candidates;
    if (tile.marked.size() == 2) {
      const auto p = t_.path(tile.marked[0].vertex, tile.marked[1].vertex);
      candidates.assign(p.begin() + 1, p.end() - 1);
    } else {
      for (VertexId v : tile.vertices) {
        if (tile.marked.empty() || v != tile.marked[0].vertex) candidates.push_back(v);
      }
    }
    const auto c = best_of(candidates);
    if (!c) {
      tile.kind = TileKind::Terminal;
      tile.terminal_reason = tile.marked.size() == 2 ? "no branch point between the marked leaves"
                                                      : "no branch point inside the tile";
      return;
    }
    tile.chosen = c;
  }

  Decomposition run(Tile root, std::vector<Tile> first_level) {
    Decomposition d;
    d.alphabet = m_;
    d.depth = stop_.max_depth;
    d.tree = tree_;
    d.levels.push_back({std::move(root)});
    if (stop_.max_depth >= 1) {
      for (auto& t : first_level) choose(t);
      d.levels.push_back(std::move(first_level));
    }
    for (std::size_t level = 1; level < stop_.max_depth; ++level) {
      std::vector<Tile> next;
      for (const Tile& parent : d.levels[level]) {
        if (!parent.chosen) continue;
        for (auto& child : children_of(parent)) {
          choose(child);
          next.push_back(std::move(child));
        }
      }
      if (next.empty()) break;
      d.levels.push_back(std::move(next));
    }
    d.depth = d.levels.size() - 1;
    for (std::size_t k = 0; k < d.levels.size(); ++k) rebuild_intersections(d, k);
    d.provenance.tree_hash = t_.hash();
    d.provenance.tie_break = kTieBreakRule;
    std::ostringstream p;
    p << "m=" << m_ << ";max_depth=" << stop_.max_depth << ";min_diameter_fraction=" << stop_.min_diameter_fraction;
    d.provenance.parameters = p.str();
    return d;
  }

  Tile root_tile(VertexId c) {
    Tile root;
    root.level = 0;
    root.label = FiniteWord({}, m_);
    root.kind = TileKind::Root;
    root.chosen = c;
    root.diameter = diam_t_;
    root.vertices.resize(t_.size());
    for (VertexId v = 0; v < t_.size(); ++v) root.vertices[v] = v;
    return root;
  }

  Decomposition decompose() {
    std::vector<VertexId> all(t_.size());
    for (VertexId v = 0; v < t_.size(); ++v) all[v] = v;
    const VertexId c = *best_of(all);
    Tile root = root_tile(c);
    std::vector<Tile> first;
    if (stop_.max_depth >= 1) {
      for (auto& [letter, ch] : label(split(root.vertices, c), {})) {
        Tile t;
        t.label = root.label.with(letter);
        t.level = 1;
        t.diameter = std::move(ch.diameter);
        t.vertices = std::move(ch.vertices);
        t.marked.push_back({c, letter == 1 ? Sign::Plus : Sign::Minus});
        t.kind = TileKind::LeafTile;
        first.push_back(std::move(t));
      }
    }
    Decomposition d = run(std::move(root), std::move(first));
    d.provenance.mode = "search";
    return d;
  }

  Decomposition normalized(VertexId p1, VertexId p2, VertexId p3) {
    for (VertexId p : {p1, p2, p3}) {
      t_.check_vertex(p);
      if (t_.degree(p) != 1) {
        throw Error(ErrorCode::NotALeaf, "vertex " + std::to_string(t_.name(p)) + " has valence " +
                                             std::to_string(t_.degree(p)));
      }
    }
    const VertexId c = median(t_, p1, p2, p3);
    Tile root = root_tile(c);
    std::vector<Tile> first;
    if (stop_.max_depth >= 1) {
      const std::vector<std::pair<Letter, VertexId>> forced{{1, p1}, {2, p2}, {3, p3}};
      for (auto& [letter, ch] : label(split(root.vertices, c), forced)) {
        Tile t;
        t.label = root.label.with(letter);
        t.level = 1;
        t.diameter = std::move(ch.diameter);
        t.vertices = std::move(ch.vertices);
        if (letter == 1) t.marked = {{p1, Sign::Minus}, {c, Sign::Plus}};
        else if (letter == 2) t.marked = {{c, Sign::Minus}, {p2, Sign::Plus}};
        else if (letter == 3) t.marked = {{c, Sign::Minus}, {p3, Sign::Plus}};
        else t.marked = {{c, Sign::Minus}};
        t.kind = kind_for(t.marked);
        first.push_back(std::move(t));
      }
    }
    Decomposition d = run(std::move(root), std::move(first));
    d.normalized_leaves = {p1, p2, p3};
    d.provenance.mode = "normalized";
    d.provenance.parameters += ";p=" + std::to_string(t_.name(p1)) + "," + std::to_string(t_.name(p2)) + "," +
                               std::to_string(t_.name(p3));
    return d;
  }

 private:
  std::shared_ptr<const FiniteMetricTree> tree_;
  const FiniteMetricTree& t_;
  int m_;
  StopRule stop_;
  BranchDiameters diameters_;
  SubsetSearch search_;
  std::vector<std::optional<Rational>> heights_;
  Rational diam_t_;
  Rational threshold_;
};

}  // namespace

Decomposition decompose(std::shared_ptr<const FiniteMetricTree> tree, int m, const StopRule& stop) {
  if (!tree) throw Error(ErrorCode::InvalidArgument, "null tree");
  return Builder(std::move(tree), m, stop).decompose();
}

Decomposition decompose_normalized(std::shared_ptr<const FiniteMetricTree> tree, VertexId p1, VertexId p2,
                                   VertexId p3, const StopRule& stop) {
  if (!tree) throw Error(ErrorCode::InvalidArgument, "null tree");
  const int m = [&] {
    for (VertexId v = 0; v < tree->size(); ++v) {
      if (tree->degree(v) >= 3) return tree->degree(v);
    }
    throw Error(ErrorCode::NoBranchPoint, "tree has no branch point");
  }();
  if (m != 3) throw Error(ErrorCode::NotMValent, "the normalized decomposition needs a trivalent tree");
  return Builder(std::move(tree), m, stop).normalized(p1, p2, p3);
}

Decomposition csst_reference_decomposition(std::size_t n, std::size_t resolution) {
  const std::size_t fine = n + std::max<std::size_t>(resolution, 1);
  const auto segments = generate_Jn(fine);
  std::vector<std::array<VertexId, 2>> ends;
  auto tree = std::make_shared<const FiniteMetricTree>(from_segments(segments, false, &ends));
  const FiniteMetricTree& t = *tree;

  auto vertex = [&](const Point& p) {
    const auto v = t.vertex_at(p);
    if (!v) throw Error(ErrorCode::InvalidArgument, "no J-vertex at " + to_string(p));
    return *v;
  };

  Decomposition d;
  d.alphabet = kCsstAlphabet;
  d.depth = n;
  d.tree = tree;
  std::size_t block = segments.size();  // segments per tile on the current level
  for (std::size_t level = 0; level <= n; ++level) {
    std::vector<Tile> tiles;
    std::size_t index = 0;
    for (const auto& u : all_words(level)) {
      Tile tile;
      tile.label = u;
      tile.level = level;
      const TileCorners corners = tile_corners(u);
      tile.chosen = vertex(corners.center);
      if (corners.minus) tile.marked.push_back({vertex(corners.minus->point), Sign::Minus});
      if (corners.plus) tile.marked.push_back({vertex(corners.plus->point), Sign::Plus});
      tile.kind = level == 0 ? TileKind::Root : kind_for(tile.marked);
      tile.diameter = pow2(1 - static_cast<long>(level));
      for (std::size_t s = index * block; s < (index + 1) * block; ++s) {
        tile.vertices.push_back(ends[s][0]);
        tile.vertices.push_back(ends[s][1]);
      }
      std::sort(tile.vertices.begin(), tile.vertices.end());
      tile.vertices.erase(std::unique(tile.vertices.begin(), tile.vertices.end()), tile.vertices.end());
      tiles.push_back(std::move(tile));
      ++index;
    }
    d.levels.push_back(std::move(tiles));
    block /= 3;
  }
  for (std::size_t k = 0; k <= n; ++k) rebuild_intersections(d, k);
  d.provenance.tree_hash = t.hash();
  d.provenance.mode = "csst-reference";
  d.provenance.parameters = "n=" + std::to_string(n) + ";resolution=" + std::to_string(fine - n);
  d.provenance.tie_break = "none (closed form)";
  return d;
}

void rebuild_intersections(Decomposition& d, std::size_t level) {
  auto& tiles = d.levels.at(level);
  for (auto& t : tiles) t.intersections.clear();
  auto sign_in = [](const Tile& t, VertexId v) -> std::optional<Sign> {
    for (const auto& m : t.marked) {
      if (m.vertex == v) return m.sign;
    }
    return std::nullopt;
  };
  std::unordered_map<VertexId, std::vector<std::size_t>> owners;
  const bool have_sets = std::all_of(tiles.begin(), tiles.end(), [](const Tile& t) { return !t.vertices.empty(); });
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    if (have_sets) {
      for (VertexId v : tiles[i].vertices) owners[v].push_back(i);
    } else {
      for (const auto& m : tiles[i].marked) owners[m.vertex].push_back(i);
    }
  }
  std::vector<std::pair<VertexId, std::vector<std::size_t>>> shared;
  for (auto& [v, list] : owners) {
    if (list.size() > 1) shared.emplace_back(v, std::move(list));
  }
  std::sort(shared.begin(), shared.end());
  for (const auto& [v, list] : shared) {
    for (std::size_t i : list) {
      for (std::size_t j : list) {
        if (i == j) continue;
        tiles[i].intersections.push_back({tiles[j].label, v, sign_in(tiles[i], v), sign_in(tiles[j], v)});
      }
    }
  }
  for (auto& t : tiles) {
    std::sort(t.intersections.begin(), t.intersections.end(), [](const auto& a, const auto& b) {
      if (!(a.other_label == b.other_label)) return a.other_label < b.other_label;
      return a.vertex < b.vertex;
    });
  }
}

void flip_marked_sign(Decomposition& d, const FiniteWord& label, std::size_t index) {
  Tile* tile = d.find(label);
  if (!tile || index >= tile->marked.size()) throw Error(ErrorCode::InvalidArgument, "no such marked leaf");
  SignedLeaf& leaf = tile->marked[index];
  leaf.sign = flipped(leaf.sign);
  for (auto& rec : tile->intersections) {
    if (rec.vertex == leaf.vertex) rec.my_sign = leaf.sign;
  }
  for (auto& other : d.levels[label.size()]) {
    for (auto& rec : other.intersections) {
      if (rec.other_label == label && rec.vertex == leaf.vertex) rec.other_sign = leaf.sign;
    }
  }
}

bool VerifyReport::pass() const {
  return union_violations.empty() && intersection_violations.empty() && sign_violations.empty() &&
         containment_violations.empty() && distinctness_violations.empty() && diameter_violations.empty();
}

std::string VerifyReport::summary() const {
  std::ostringstream out;
  auto line = [&](const char* name, const std::vector<std::string>& v) {
    out << name << ": " << (v.empty() ? "ok" : std::to_string(v.size()) + " violation(s)") << "\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(v.size(), 5); ++i) out << "  " << v[i] << "\n";
  };
  out << "tiles checked: " << tiles_checked << (vertex_sets_checked ? "" : " (no vertex sets; set checks skipped)")
      << "\n";
  line("union", union_violations);
  line("intersections", intersection_violations);
  line("signs", sign_violations);
  line("containment", containment_violations);
  line("distinct chosen points", distinctness_violations);
  line("diameters", diameter_violations);
  out << "max diameter per level:";
  for (const auto& r : max_diameters) out << " " << to_decimal(r);
  out << "\nstrictly decreasing: " << (diameters_strictly_decreasing ? "yes" : "no") << "\n";
  out << "result: " << (pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

VerifyReport verify_certificate(const Decomposition& d) {
  VerifyReport r;
  const FiniteMetricTree* t = d.tree.get();
  bool sets = t != nullptr;
  for (const auto& level : d.levels) {
    for (const auto& tile : level) sets = sets && !tile.vertices.empty();
  }
  r.vertex_sets_checked = sets;
  auto is_exempt = [&](VertexId v) {
    return std::find(d.normalized_leaves.begin(), d.normalized_leaves.end(), v) != d.normalized_leaves.end();
  };
  auto name = [&](VertexId v) { return t ? std::to_string(t->name(v)) : std::to_string(v); };

  std::set<VertexId> chosen_seen;
  std::vector<VertexId> terminal_cover;  // vertices of terminal tiles from earlier levels
  for (std::size_t k = 0; k < d.levels.size(); ++k) {
    const auto& level = d.levels[k];
    Rational max_d = 0;
    std::unordered_map<VertexId, std::vector<std::size_t>> owners;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const Tile& tile = level[i];
      const std::string L = label_str(tile.label);
      ++r.tiles_checked;
      max_d = std::max(max_d, tile.diameter);

      // Sign discipline inside the tile.
      if (k == 0 && !tile.marked.empty()) r.sign_violations.push_back("root tile carries marked leaves");
      if (k > 0 && (tile.marked.empty() || tile.marked.size() > 2)) {
        r.sign_violations.push_back(L + ": " + std::to_string(tile.marked.size()) + " marked leaves");
      }
      if (tile.marked.size() == 2 && tile.marked[0].sign == tile.marked[1].sign) {
        r.sign_violations.push_back(L + ": both marked leaves have sign " + to_char(tile.marked[0].sign));
      }
      const TileKind expected = k == 0 ? TileKind::Root : kind_for(tile.marked);
      if (tile.kind != TileKind::Terminal && tile.kind != expected) {
        r.sign_violations.push_back(L + ": kind " + std::string(to_string(tile.kind)) + " does not match its marks");
      }
      if (tile.kind == TileKind::Terminal && tile.chosen) {
        r.containment_violations.push_back(L + ": terminal tile has a chosen point");
      }
      if (tile.kind != TileKind::Terminal && !tile.chosen) {
        r.containment_violations.push_back(L + ": non-terminal tile has no chosen point");
      }

      if (tile.chosen) {
        if (!chosen_seen.insert(*tile.chosen).second) {
          r.distinctness_violations.push_back(L + ": chosen point " + name(*tile.chosen) + " reused");
        }
        for (const auto& m : tile.marked) {
          if (m.vertex == *tile.chosen) r.containment_violations.push_back(L + ": chosen point is a marked leaf");
        }
      }

      if (sets) {
        for (VertexId v : tile.vertices) owners[v].push_back(i);
        auto inside = [&](VertexId v) { return std::binary_search(tile.vertices.begin(), tile.vertices.end(), v); };
        for (const auto& m : tile.marked) {
          if (!inside(m.vertex)) {
            r.sign_violations.push_back(L + ": marked vertex " + name(m.vertex) + " not in tile");
            continue;
          }
          int deg_in_tile = 0;
          for (VertexId w : t->neighbors(m.vertex)) deg_in_tile += inside(w) ? 1 : 0;
          if (deg_in_tile != 1) r.sign_violations.push_back(L + ": marked vertex " + name(m.vertex) + " not a leaf");
          if (t->degree(m.vertex) < 3 && !is_exempt(m.vertex)) {
            r.sign_violations.push_back(L + ": marked vertex " + name(m.vertex) + " not a branch point of T");
          }
        }
        if (tile.chosen && (!inside(*tile.chosen) || t->degree(*tile.chosen) < 3)) {
          r.containment_violations.push_back(L + ": chosen point is not a branch point inside the tile");
        }
        const Rational diam = subtree_diameter(*t, tile.vertices);
        if (diam != tile.diameter) {
          r.diameter_violations.push_back(L + ": recorded diameter " + to_string(tile.diameter) + ", actual " +
                                          to_string(diam));
        }
      }

      // Parent-child structure.
      if (k > 0) {
        const Tile* parent = d.find(tile.label.prefix(k - 1));
        if (!parent || !parent->chosen) {
          r.containment_violations.push_back(L + ": parent missing or not subdivided");
          continue;
        }
        const VertexId c = *parent->chosen;
        const Letter letter = tile.label.back();
        const auto* own_c = [&]() -> const SignedLeaf* {
          for (const auto& m : tile.marked) {
            if (m.vertex == c) return &m;
          }
          return nullptr;
        }();
        if (!own_c) {
          r.sign_violations.push_back(L + ": parent's chosen point is not marked");
        } else if ((letter == 1) != (own_c->sign == Sign::Plus)) {
          r.sign_violations.push_back(L + ": chosen point of the parent has the wrong sign");
        }
        for (const auto& pm : parent->marked) {
          const bool here = std::any_of(tile.marked.begin(), tile.marked.end(),
                                        [&](const SignedLeaf& m) { return m.vertex == pm.vertex; });
          const Letter target = pm.sign == Sign::Minus ? 1 : 2;
          const bool should = letter == target;
          if (here != should) {
            r.sign_violations.push_back(L + ": parent's marked leaf " + name(pm.vertex) + to_char(pm.sign) +
                                        (should ? " not passed here" : " passed to the wrong child"));
          } else if (here) {
            for (const auto& m : tile.marked) {
              if (m.vertex == pm.vertex && m.sign != pm.sign) {
                r.sign_violations.push_back(L + ": inherited leaf " + name(pm.vertex) + " changed sign");
              }
            }
          }
        }
        if (sets && !std::includes(parent->vertices.begin(), parent->vertices.end(), tile.vertices.begin(),
                                   tile.vertices.end())) {
          r.containment_violations.push_back(L + ": not contained in its parent");
        }
      }
    }
    r.max_diameters.push_back(max_d);

    // Children of each subdivided tile cover it.
    if (sets && k + 1 < d.levels.size()) {
      for (const auto& tile : level) {
        if (!tile.chosen) continue;
        std::vector<VertexId> cover;
        int children = 0;
        for (int a = 1; a <= d.alphabet; ++a) {
          const Tile* ch = d.find(tile.label.with(static_cast<Letter>(a)));
          if (!ch) continue;
          ++children;
          cover.insert(cover.end(), ch->vertices.begin(), ch->vertices.end());
        }
        if (children != d.alphabet) {
          r.containment_violations.push_back(label_str(tile.label) + ": " + std::to_string(children) + " children");
        }
        std::sort(cover.begin(), cover.end());
        cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
        if (cover != tile.vertices) {
          r.containment_violations.push_back(label_str(tile.label) + ": children do not cover the tile");
        }
      }
    }

    if (sets) {
      // (i) union with the terminal tiles left behind on earlier levels.
      std::vector<char> covered(t->size(), 0);
      for (VertexId v : terminal_cover) covered[v] = 1;
      for (const auto& [v, list] : owners) covered[v] = 1;
      const auto missing = std::count(covered.begin(), covered.end(), 0);
      if (missing > 0) {
        r.union_violations.push_back("level " + std::to_string(k) + ": " + std::to_string(missing) +
                                     " vertices in no tile");
      }
      for (const auto& tile : level) {
        if (tile.kind == TileKind::Terminal) {
          terminal_cover.insert(terminal_cover.end(), tile.vertices.begin(), tile.vertices.end());
        }
      }

      // (ii) same-level intersections are single marked leaves.
      std::map<std::pair<std::size_t, std::size_t>, std::vector<VertexId>> pairs;
      for (const auto& [v, list] : owners) {
        for (std::size_t a = 0; a < list.size(); ++a) {
          for (std::size_t b = a + 1; b < list.size(); ++b) pairs[{list[a], list[b]}].push_back(v);
        }
      }
      for (const auto& [p, shared] : pairs) {
        const Tile& A = level[p.first];
        const Tile& B = level[p.second];
        const std::string names = label_str(A.label) + " & " + label_str(B.label);
        if (shared.size() != 1) {
          r.intersection_violations.push_back(names + " share " + std::to_string(shared.size()) + " vertices");
          continue;
        }
        const VertexId v = shared[0];
        auto marked_in = [&](const Tile& T) {
          return std::any_of(T.marked.begin(), T.marked.end(), [&](const SignedLeaf& m) { return m.vertex == v; });
        };
        if (!marked_in(A) || !marked_in(B)) {
          r.intersection_violations.push_back(names + " meet at " + name(v) + ", not a marked leaf of both");
        }
      }
      // Recorded intersection tables must agree with the sets.
      std::size_t recorded = 0;
      for (const auto& tile : level) recorded += tile.intersections.size();
      std::size_t actual = 0;
      for (const auto& [p, shared] : pairs) actual += 2 * shared.size();
      if (recorded != actual) {
        r.intersection_violations.push_back("level " + std::to_string(k) + ": " + std::to_string(recorded) +
                                            " recorded intersections, " + std::to_string(actual) + " actual");
      }
    }

    // Recorded intersection signs must match the marked leaves.
    for (const auto& tile : level) {
      for (const auto& rec : tile.intersections) {
        const Tile* other = d.find(rec.other_label);
        auto sign_of = [&](const Tile* T) -> std::optional<Sign> {
          if (!T) return std::nullopt;
          for (const auto& m : T->marked) {
            if (m.vertex == rec.vertex) return m.sign;
          }
          return std::nullopt;
        };
        if (sign_of(&tile) != rec.my_sign || sign_of(other) != rec.other_sign) {
          r.intersection_violations.push_back(label_str(tile.label) + " & " + label_str(rec.other_label) +
                                              ": recorded signs disagree with marked leaves");
        }
        if (!rec.my_sign || !rec.other_sign) {
          r.intersection_violations.push_back(label_str(tile.label) + " & " + label_str(rec.other_label) +
                                              ": shared vertex is not marked in both");
        }
      }
    }
  }

  r.diameters_strictly_decreasing = true;
  for (std::size_t k = 1; k < r.max_diameters.size(); ++k) {
    if (!(r.max_diameters[k] < r.max_diameters[k - 1])) r.diameters_strictly_decreasing = false;
  }
  return r;
}

}  // namespace csst
