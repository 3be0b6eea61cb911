#include "csst/homeo_matcher.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace csst {

namespace {

std::string label_str(const FiniteWord& u) { return u.empty() ? std::string("(root)") : u.str(); }

std::string sign_str(const std::optional<Sign>& s) { return s ? std::string(1, to_char(*s)) : std::string("none"); }

std::string marked_signs(const Tile& t) {
  std::string out;
  for (const auto& m : t.marked) out += to_char(m.sign);
  std::sort(out.begin(), out.end());
  return out;
}

using PairTable = std::map<FiniteWord, std::vector<std::pair<std::optional<Sign>, std::optional<Sign>>>>;

PairTable pair_table(const Tile& t) {
  PairTable out;
  for (const auto& rec : t.intersections) out[rec.other_label].emplace_back(rec.my_sign, rec.other_sign);
  for (auto& [label, list] : out) std::sort(list.begin(), list.end());
  return out;
}

bool contains(const Tile& t, VertexId x) { return std::binary_search(t.vertices.begin(), t.vertices.end(), x); }

}  // namespace

std::size_t common_depth(const Decomposition& t, const Decomposition& s) {
  return std::min(t.complete_depth(), s.complete_depth());
}

MatchReport check_matching(const Decomposition& t, const Decomposition& s, std::size_t depth) {
  if (t.alphabet != s.alphabet) {
    throw Error(ErrorCode::AlphabetMismatch, "alphabets " + std::to_string(t.alphabet) + " and " +
                                                 std::to_string(s.alphabet));
  }
  for (const Decomposition* d : {&t, &s}) {
    const std::size_t have = d->complete_depth();
    if (have < depth) {
      throw Error(ErrorCode::DepthUnavailable, "requested depth " + std::to_string(depth) + ", a side reaches only " +
                                                   std::to_string(have));
    }
  }
  MatchReport r;
  r.depth = depth;
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto& tl = t.levels[k];
    const auto& sl = s.levels[k];
    std::set<FiniteWord> tlabels, slabels;
    for (const auto& tile : tl) tlabels.insert(tile.label);
    for (const auto& tile : sl) slabels.insert(tile.label);
    for (const auto& u : tlabels) {
      if (!slabels.count(u)) r.iff1.push_back({u, {}, "tile only in the first decomposition"});
    }
    for (const auto& u : slabels) {
      if (!tlabels.count(u)) r.iff1.push_back({u, {}, "tile only in the second decomposition"});
    }
    for (const auto& a : tl) {
      const Tile* b = s.find(a.label);
      if (!b) continue;
      if (marked_signs(a) != marked_signs(*b)) {
        r.iff2.push_back({a.label, {}, "marked signs {" + marked_signs(a) + "} vs {" + marked_signs(*b) + "}"});
      }
      const PairTable pa = pair_table(a), pb = pair_table(*b);
      for (const auto& [other, list] : pa) {
        auto it = pb.find(other);
        if (it == pb.end()) {
          r.iff2.push_back({a.label, other, "tiles meet only in the first decomposition"});
        } else if (it->second != list) {
          r.iff2.push_back({a.label, other,
                            "signs at the shared leaf: " + sign_str(list.front().first) + "/" +
                                sign_str(list.front().second) + " vs " + sign_str(it->second.front().first) + "/" +
                                sign_str(it->second.front().second)});
        }
      }
      for (const auto& [other, list] : pb) {
        if (!pa.count(other)) r.iff2.push_back({a.label, other, "tiles meet only in the second decomposition"});
      }
    }
  }
  r.pass = r.iff1.empty() && r.iff2.empty();
  return r;
}

std::optional<VertexId> Correspondence::image_of_chosen(const FiniteWord& label) const {
  auto it = std::lower_bound(chosen.begin(), chosen.end(), label,
                             [](const PointPair& p, const FiniteWord& l) { return p.label < l; });
  if (it == chosen.end() || !(it->label == label)) return std::nullopt;
  return it->s_vertex;
}

Correspondence build_correspondence(std::shared_ptr<const Decomposition> t, std::shared_ptr<const Decomposition> s,
                                    std::size_t depth) {
  if (!t || !s) throw Error(ErrorCode::InvalidArgument, "null decomposition");
  const std::size_t effective = std::min(depth, common_depth(*t, *s));
  const MatchReport report = check_matching(*t, *s, effective);
  if (!report.pass) {
    const auto& v = report.iff1.empty() ? report.iff2.front() : report.iff1.front();
    throw Error(ErrorCode::MatchFailed, std::to_string(report.iff1.size() + report.iff2.size()) +
                                            " violation(s), first at " + label_str(v.label) + ": " + v.detail);
  }
  Correspondence c;
  c.effective_depth = effective;
  c.t = t;
  c.s = s;
  for (std::size_t k = 0; k <= effective; ++k) {
    Rational tmax = 0, smax = 0;
    for (const auto& a : t->levels[k]) {
      const Tile* b = s->find(a.label);
      tmax = std::max(tmax, a.diameter);
      smax = std::max(smax, b->diameter);
      if (a.chosen && b->chosen) c.chosen.push_back({a.label, *a.chosen, *b->chosen});
      for (const auto& m : a.marked) {
        const SignedLeaf* other = b->marked_with(m.sign);
        if (other) c.leaves.push_back({a.label, m.sign, m.vertex, other->vertex});
      }
    }
    c.modulus.push_back({k, tmax, smax});
  }
  std::sort(c.chosen.begin(), c.chosen.end(), [](const PointPair& a, const PointPair& b) { return a.label < b.label; });
  return c;
}

std::vector<FiniteWord> tile_chain(const Decomposition& d, VertexId x, std::size_t depth) {
  std::vector<FiniteWord> chain;
  if (d.levels.empty() || !contains(d.levels[0].front(), x)) return chain;
  FiniteWord current = d.levels[0].front().label;
  chain.push_back(current);
  for (std::size_t k = 1; k <= depth && k < d.levels.size(); ++k) {
    const Tile* parent = d.find(current);
    if (!parent || !parent->chosen) break;
    bool found = false;
    for (int a = 1; a <= d.alphabet && !found; ++a) {
      const FiniteWord next = current.with(static_cast<Letter>(a));
      const Tile* child = d.find(next);
      if (child && contains(*child, x)) {
        current = next;
        found = true;
      }
    }
    if (!found) break;
    chain.push_back(current);
  }
  return chain;
}

VertexId map_point(const Correspondence& corr, VertexId x) {
  const Decomposition& t = *corr.t;
  const Decomposition& s = *corr.s;
  if (!t.tree || x >= t.tree->size()) throw Error(ErrorCode::OutOfDomain, "vertex not in the source tree");
  for (const auto& p : corr.chosen) {
    if (p.t_vertex == x) return p.s_vertex;
  }
  const auto chain = tile_chain(t, x, t.levels.size() - 1);
  if (chain.empty()) throw Error(ErrorCode::OutOfDomain, "vertex lies in no tile");
  const std::size_t level = std::min(chain.size() - 1, corr.effective_depth);
  // A marked leaf: every tile at this level marking x must agree on the image.
  std::optional<VertexId> image;
  for (const auto& tile : t.levels[level]) {
    for (const auto& m : tile.marked) {
      if (m.vertex != x) continue;
      const SignedLeaf* other = s.find(tile.label)->marked_with(m.sign);
      if (!other) throw Error(ErrorCode::MatchFailed, "no matching marked leaf in " + label_str(tile.label));
      if (image && *image != other->vertex) {
        throw Error(ErrorCode::MatchFailed, "shared leaf maps to two different points");
      }
      image = other->vertex;
    }
  }
  if (image) return *image;
  for (const auto& label : chain) {
    if (t.find(label)->kind == TileKind::Terminal) {
      throw Error(ErrorCode::OutOfDomain, "vertex lies in terminal tile " + label_str(label));
    }
  }
  const Tile* deepest = t.find(chain[level]);
  const Tile* target = s.find(deepest->label);
  if (target->chosen) return *target->chosen;
  if (!target->marked.empty()) return target->marked.front().vertex;
  throw Error(ErrorCode::OutOfDomain, "no representative in " + label_str(target->label));
}

Correspondence match_normalized(std::shared_ptr<const FiniteMetricTree> t, std::array<VertexId, 3> p,
                                std::shared_ptr<const FiniteMetricTree> s, std::array<VertexId, 3> q,
                                std::size_t depth) {
  const StopRule stop{depth, 0.0};
  auto dt = std::make_shared<const Decomposition>(decompose_normalized(t, p[0], p[1], p[2], stop));
  auto ds = std::make_shared<const Decomposition>(decompose_normalized(s, q[0], q[1], q[2], stop));
  Correspondence c = build_correspondence(dt, ds, depth);
  for (std::size_t k = 0; k < 3; ++k) {
    auto chain = tile_chain(*dt, p[k], c.effective_depth);
    if (!chain.empty()) chain.erase(chain.begin());
    c.normalized_chains[k] = std::move(chain);
  }
  return c;
}

}  // namespace csst
