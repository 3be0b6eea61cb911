#include "csst/crt_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace csst {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ExcursionPath sample_excursion(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 2");
  std::mt19937_64 rng(mix(seed));
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> walk(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) walk[i] = walk[i - 1] + step(rng);
  const double end = walk[n];
  for (std::size_t i = 0; i <= n; ++i) walk[i] -= end * static_cast<double>(i) / static_cast<double>(n);
  const std::size_t m = static_cast<std::size_t>(std::min_element(walk.begin(), walk.end() - 1) - walk.begin());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ExcursionPath e;
  e.values.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) e.values[i] = (walk[(m + i) % n] - walk[m]) * scale;
  e.values[0] = 0.0;
  e.values[n] = 0.0;
  return e;
}

Rational d_e(const ExcursionPath& e, std::size_t s, std::size_t t) {
  if (s > e.n() || t > e.n()) throw Error(ErrorCode::IndexOutOfRange, "grid index outside 0.." + std::to_string(e.n()));
  if (s > t) std::swap(s, t);
  const double low = *std::min_element(e.values.begin() + static_cast<std::ptrdiff_t>(s),
                                       e.values.begin() + static_cast<std::ptrdiff_t>(t) + 1);
  return from_double(e.values[s]) + from_double(e.values[t]) - 2 * from_double(low);
}

CrtSample crt_tree_from(ExcursionPath e, std::size_t k, std::uint64_t seed) {
  std::vector<std::string> log;
  ContourTree contour = from_contour(e, k, mix(seed ^ 0x6d61726b73ULL), &log);
  CrtSample out{std::move(e), std::move(contour), nullptr, {}, std::move(log)};
  out.tree = std::make_shared<const FiniteMetricTree>(out.contour.tree.smoothed());
  out.histogram = valence_histogram(*out.tree);
  return out;
}

CrtSample crt_tree(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 2");
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 marks");
  return crt_tree_from(sample_excursion(n, seed), k, seed);
}

void write_excursion_csv(std::ostream& out, const ExcursionPath& e) {
  out << "i,t,e\n";
  char buf[64];
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", static_cast<double>(i) / static_cast<double>(e.n()), e.values[i]);
    out << i << "," << buf << "\n";
  }
}

}  // namespace csst
