#pragma once

// Finite-depth matching of two decompositions: equal inclusion patterns
// (shared labels) and equal intersection patterns with equal signs. A match
// induces the correspondence c_u <-> c~_u plus per-level moduli.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csst/decomposer.hpp"

namespace csst {

struct MatchViolation {
  FiniteWord label;
  FiniteWord other_label;  // empty unless the violation concerns a pair of tiles
  std::string detail;
};

struct MatchReport {
  std::size_t depth = 0;
  std::vector<MatchViolation> iff1;  // inclusion: label sets differ
  std::vector<MatchViolation> iff2;  // intersection pattern or sign differs
  bool pass = false;
};

/// Deepest depth that both decompositions reach without terminal tiles.
std::size_t common_depth(const Decomposition& t, const Decomposition& s);

/// Checks levels 1..depth. AlphabetMismatch, or DepthUnavailable when either
/// side lacks a complete non-terminal level at or above depth.
MatchReport check_matching(const Decomposition& t, const Decomposition& s, std::size_t depth);

struct PointPair {
  FiniteWord label;
  VertexId t_vertex;
  VertexId s_vertex;
};

struct LeafPair {
  FiniteWord label;
  Sign sign;
  VertexId t_vertex;
  VertexId s_vertex;
};

struct ModulusRow {
  std::size_t level;
  Rational t_max_diameter;
  Rational s_max_diameter;
};

struct Correspondence {
  std::size_t effective_depth = 0;
  std::vector<PointPair> chosen;  // shortlex by label
  std::vector<LeafPair> leaves;
  std::vector<ModulusRow> modulus;
  std::shared_ptr<const Decomposition> t;
  std::shared_ptr<const Decomposition> s;

  std::optional<VertexId> image_of_chosen(const FiniteWord& label) const;
  /// Labels of the tiles containing p_k down the normalized chain (p1: 1, 11, ...).
  std::array<std::vector<FiniteWord>, 3> normalized_chains;
};

/// Pairs chosen points and marked leaves at the common depth (at most the
/// requested one). MatchFailed when check_matching fails there.
Correspondence build_correspondence(std::shared_ptr<const Decomposition> t, std::shared_ptr<const Decomposition> s,
                                    std::size_t depth);

/// Image of a T-vertex: c~_u for x = c_u, the matched S leaf for a marked
/// leaf, otherwise a representative of the S-side of the deepest tile that
/// contains x. OutOfDomain for vertices outside T or inside a terminal tile.
VertexId map_point(const Correspondence& corr, VertexId x);

/// Labels of the tiles containing x, one per level, for the chain that
/// descends through the tile containing x at each level (first by label).
std::vector<FiniteWord> tile_chain(const Decomposition& d, VertexId x, std::size_t depth);

/// decompose_normalized on both trees, then build_correspondence. The
/// normalized_chains record p1 in 1, 11, ..., p2 in 2, 22, ..., p3 in 3, 32, 322, ...
Correspondence match_normalized(std::shared_ptr<const FiniteMetricTree> t, std::array<VertexId, 3> p,
                                std::shared_ptr<const FiniteMetricTree> s, std::array<VertexId, 3> q,
                                std::size_t depth);

}  // namespace csst
