#pragma once

// Brownian excursion on a grid and the trees it codes via
//   d_e(s, t) = e(s) + e(t) - 2 min{e(r) : r between s and t}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "csst/exact.hpp"
#include "csst/excursion.hpp"
#include "csst/metric_tree.hpp"

namespace csst {

/// Gaussian random-walk bridge, cyclically shifted to start at its minimum
/// (Vervaat), scaled by n^{-1/2}. Deterministic in (n, seed).
ExcursionPath sample_excursion(std::size_t n, std::uint64_t seed);

/// Exact value of d_e on grid indices; IndexOutOfRange for indices > n.
Rational d_e(const ExcursionPath& e, std::size_t s, std::size_t t);

struct CrtSample {
  ExcursionPath excursion;
  ContourTree contour;                            // before smoothing
  std::shared_ptr<const FiniteMetricTree> tree;   // valence-2 vertices removed
  std::vector<std::size_t> histogram;             // valence counts of `tree`
  std::vector<std::string> tie_log;
};

/// sample_excursion + k uniform marks + from_contour + smoothing.
/// InvalidArgument unless n >= 2 and k >= 3.
CrtSample crt_tree(std::size_t n, std::size_t k, std::uint64_t seed);

/// The same pipeline on a given excursion (k >= 2 here, so a path is possible).
CrtSample crt_tree_from(ExcursionPath e, std::size_t k, std::uint64_t seed);

/// "i,t,e" rows with a header line.
void write_excursion_csv(std::ostream& out, const ExcursionPath& e);

}  // namespace csst
