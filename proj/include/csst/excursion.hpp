#pragma once

#include <cstddef>
#include <vector>

namespace csst {

/// Grid values e(i/n), i = 0..n, of a nonnegative excursion on [0, 1].
struct ExcursionPath {
  std::vector<double> values;

  std::size_t n() const { return values.empty() ? 0 : values.size() - 1; }

  /// Throws InvalidExcursion unless e(0) = e(1) = 0, e >= 0, e not identically 0, n >= 2.
  void validate() const;
};

}  // namespace csst
