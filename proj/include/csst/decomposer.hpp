#pragma once

// Recursive subdivision of a tree into labeled subtrees T_u with signed marked
// leaves. Every non-terminal tile T_u gets a chosen branch point c_u; its
// branches at c_u are the children T_{u1}, ..., T_{um}.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csst/exact.hpp"
#include "csst/metric_tree.hpp"
#include "csst/word_algebra.hpp"

namespace csst {

enum class Sign : char { Minus = '-', Plus = '+' };

char to_char(Sign s);
Sign parse_sign(char c);
Sign flipped(Sign s);

struct SignedLeaf {
  VertexId vertex;
  Sign sign;

  friend bool operator==(const SignedLeaf&, const SignedLeaf&) = default;
};

enum class TileKind { Root, LeafTile, ArcTile, Terminal };

std::string_view to_string(TileKind kind);
TileKind parse_tile_kind(std::string_view text);

struct IntersectionRecord {
  FiniteWord other_label;
  VertexId vertex;
  std::optional<Sign> my_sign;     // empty when the shared vertex is not marked here
  std::optional<Sign> other_sign;

  friend bool operator==(const IntersectionRecord&, const IntersectionRecord&) = default;
};

struct Tile {
  FiniteWord label;
  std::size_t level = 0;
  TileKind kind = TileKind::Root;
  std::vector<SignedLeaf> marked;
  std::optional<VertexId> chosen;
  Rational diameter;
  std::vector<VertexId> vertices;  // sorted; may be empty for certificates loaded without them
  std::vector<IntersectionRecord> intersections;
  std::string terminal_reason;

  const SignedLeaf* marked_with(Sign s) const;
};

struct Provenance {
  std::string tree_hash;
  std::string mode;        // "search", "normalized" or "csst-reference"
  std::string parameters;  // canonical echo of the inputs
  std::string tie_break;
};

inline constexpr const char* kTieBreakRule =
    "height-desc,id-asc;free-children:branch-diameter-desc,min-id-asc;v1";

struct Decomposition {
  int alphabet = kCsstAlphabet;
  std::size_t depth = 0;
  std::vector<std::vector<Tile>> levels;  // levels[k] sorted by label
  std::shared_ptr<const FiniteMetricTree> tree;
  Provenance provenance;
  /// Leaves exempt from the "marked leaves are branch points" rule (the normalized p1, p2, p3).
  std::vector<VertexId> normalized_leaves;

  const Tile* find(const FiniteWord& label) const;
  Tile* find(const FiniteWord& label);
  /// Deepest level k such that every tile on levels 0..k is non-terminal.
  std::size_t complete_depth() const;
};

struct StopRule {
  std::size_t max_depth = 8;
  /// Tiles with diameter below this fraction of diam(T) become terminal.
  double min_diameter_fraction = 1e-3;
};

/// Throws NotMValent when a vertex of valence >= 3 has valence != m and
/// NoBranchPoint when T has no branch point.
Decomposition decompose(std::shared_ptr<const FiniteMetricTree> tree, int m, const StopRule& stop = {});

/// Root c = median(p1, p2, p3) with marks {p1-, c+}, {c-, p2+}, {c-, p3+};
/// deeper levels as in decompose. NotALeaf unless each p_k is a leaf.
Decomposition decompose_normalized(std::shared_ptr<const FiniteMetricTree> tree, VertexId p1, VertexId p2,
                                   VertexId p3, const StopRule& stop = {});

/// The tiles f_u(T), |u| <= n, with c_u = f_u(0) and the signed corners of
/// each tile. Vertex sets are taken from J_{n+resolution}, where every tile
/// f_u(J_{n+resolution-|u|}) is an exact subtree.
Decomposition csst_reference_decomposition(std::size_t n, std::size_t resolution = 2);

/// Recomputes the intersection records of one level from the vertex sets.
void rebuild_intersections(Decomposition& d, std::size_t level);

/// Flips the sign of one marked leaf and updates the intersection records
/// that mention it on every tile of that level.
void flip_marked_sign(Decomposition& d, const FiniteWord& label, std::size_t index);

struct VerifyReport {
  std::vector<std::string> union_violations;
  std::vector<std::string> intersection_violations;
  std::vector<std::string> sign_violations;
  std::vector<std::string> containment_violations;
  std::vector<std::string> distinctness_violations;
  std::vector<std::string> diameter_violations;
  std::vector<Rational> max_diameters;  // per level
  bool diameters_strictly_decreasing = false;
  bool vertex_sets_checked = false;
  std::size_t tiles_checked = 0;

  bool pass() const;
  std::string summary() const;
};

VerifyReport verify_certificate(const Decomposition& d);

}  // namespace csst
