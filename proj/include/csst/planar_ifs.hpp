#pragma once

// The three contracting maps generating the CSST
//   f1(z) = z/2 - 1/2,   f2(z) = conj(z)/2 + 1/2,   f3(z) = i conj(z)/2 + i/2,
// their exact compositions f_u, the coding map pi, tiles with signed
// corners, and the approximants J_n (segments) and K_n (hull images).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "csst/exact.hpp"
#include "csst/word_algebra.hpp"

namespace csst {

/// z -> a*z + b, or z -> a*conj(z) + b when conjugating.
struct PlanarSimilarity {
  bool conjugating = false;
  Point a{1, 0};
  Point b{0, 0};

  Point apply(const Point& z) const { return a * (conjugating ? z.conj() : z) + b; }

  friend bool operator==(const PlanarSimilarity&, const PlanarSimilarity&) = default;
};

PlanarSimilarity identity_map();

/// f_k for k in 1..3; BadLetter otherwise.
PlanarSimilarity generator(int k);

/// z -> f(g(z)).
PlanarSimilarity compose(const PlanarSimilarity& f, const PlanarSimilarity& g);

/// The unique solution of f(z) = z; NotContracting unless |a| < 1.
Point fixed_point(const PlanarSimilarity& f);

/// f_{u1} o f_{u2} o ... o f_{un}; identity for the empty word.
PlanarSimilarity map_for_word(const FiniteWord& u);

/// pi(u (v)^inf) = f_u(fixed point of f_v), exactly.
Point pi_eval(const PeriodicWord& w);

/// f_{w1...wn}(z0) for an arbitrary letter source.
Point pi_eval_iterative(const LetterStream& letters, std::size_t n, const Point& z0);

struct Segment {
  Point a;
  Point b;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// A convex polygon; vertices listed in boundary order (either orientation).
struct HullPolygon {
  std::vector<Point> vertices;

  /// Closed containment, exact.
  bool contains(const Point& z) const;
  double diameter() const;
};

/// Convex hull H of 1, i, -1, 1/2 - i/2.
HullPolygon hull();

/// Euclidean diameter of H, an upper bound for the spread of the attractor.
inline constexpr double kHullDiameter = 2.0;

struct SignedCorner {
  Point point;
  char sign;  // '-' for f_u(-1), '+' for f_u(1)
};

struct TileCorners {
  std::optional<SignedCorner> minus;
  std::optional<SignedCorner> plus;
  Point center;
};

/// Which of f_u(-1), f_u(1) lie on the relative boundary of the tile f_u(T).
struct CornerFlags {
  bool minus = false;
  bool plus = false;
};

CornerFlags corner_flags(const FiniteWord& u);

TileCorners tile_corners(const FiniteWord& u);

/// f_w([-1, 1]) for all w of length n, lexicographic in w.
std::vector<Segment> generate_Jn(std::size_t n);

/// f_w(H) for all w of length n, lexicographic in w.
std::vector<HullPolygon> generate_Kn(std::size_t n);

/// f_w(z0) for all w of length n; PointOutsideHull unless z0 lies in H.
std::vector<Point> sample_cloud(std::size_t n, const Point& z0);

/// Calls visit(word, f_word) for every word of length n, lexicographically.
template <typename Visit>
void for_each_word_map(std::size_t n, Visit&& visit);

}  // namespace csst

#include "csst/planar_ifs_impl.hpp"
