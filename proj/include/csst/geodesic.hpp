#pragma once

// Exact intrinsic (arc-length) metric rho on the CSST, evaluated on word
// addresses. Arc lengths from a point to the corners -1, 1 and to the
// junction 0 satisfy affine recurrences in the first letter; periodic tails
// reduce to a fixed-point equation solved over the rationals.

#include <cstdint>
#include <string>
#include <vector>

#include "csst/exact.hpp"
#include "csst/planar_ifs.hpp"
#include "csst/word_algebra.hpp"

namespace csst {

/// Non-negative exact arc length.
using ExactLength = Rational;

/// Arc length from -1 to pi(w).
ExactLength dist_to_minus_one(const PeriodicWord& w);
/// Arc length from 1 to pi(w).
ExactLength dist_to_plus_one(const PeriodicWord& w);
/// Arc length from the junction 0 to pi(w).
ExactLength dist_to_center(const PeriodicWord& w);

/// Arc length between pi(a) and pi(b).
ExactLength rho(const PeriodicWord& a, const PeriodicWord& b);

struct ArcPolyline {
  std::vector<Point> vertices;
  /// Arc length not covered by the polyline (both truncated ends).
  ExactLength exact_tail_bound;
  /// Exact sum of segment lengths.
  ExactLength polyline_length;
};

/// Vertices on the arc [pi(a), pi(b)], within Hausdorff distance eps of it.
ArcPolyline arc_polyline(const PeriodicWord& a, const PeriodicWord& b, const ExactLength& eps);

struct QuasiconvexityScan {
  double max_ratio = 0;
  std::string witness_a;
  std::string witness_b;
  std::size_t pairs_used = 0;
};

/// Empirical sup of rho(a,b) / |pi(a) - pi(b)| over seeded random pairs.
/// Pair i depends only on (seed, i), so larger scans extend smaller ones.
/// The result is a lower bound for the quasi-convexity constant, never the constant.
QuasiconvexityScan quasiconvexity_scan(std::size_t sample_count, std::uint64_t seed);

/// The seeded word pair used as sample i by quasiconvexity_scan.
std::pair<PeriodicWord, PeriodicWord> scan_pair(std::uint64_t seed, std::size_t i);

struct QuasiconvexityBound {
  double c0 = 0;  // dist(-1, H2 u H3)
  double c1 = 0;  // min |x-y| / (|x|+|y|) over x in H_k, y in H_l, k != l
  double K = 0;   // 2 / c0
  double L = 0;   // K / c1, an estimate (c1 from a boundary discretization)
};

/// c1 uses a boundary grid of step 2^-10 along every edge of H1, H2, H3.
QuasiconvexityBound quasiconvexity_bound();

double bound_L();

}  // namespace csst
