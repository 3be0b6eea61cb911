#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "csst/crt_sampler.hpp"
#include "oracles.hpp"

using namespace csst;

namespace {

// d_e straight from the definition, in doubles.
double d_e_direct(const ExcursionPath& e, std::size_t s, std::size_t t) {
  if (s > t) std::swap(s, t);
  const double lo = *std::min_element(e.values.begin() + s, e.values.begin() + t + 1);
  return e.values[s] + e.values[t] - 2 * lo;
}

}  // namespace

TEST_CASE("sample_excursion") {
  const auto a = sample_excursion(1024, 5), b = sample_excursion(1024, 5), c = sample_excursion(1024, 6);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.n() == 1024);
  CHECK(a.values.front() == 0.0);
  CHECK(a.values.back() == 0.0);
  CHECK(*std::min_element(a.values.begin(), a.values.end()) == 0.0);
  CHECK_NOTHROW(a.validate());
  // Increments are standard normal steps scaled by n^{-1/2}.
  double sq = 0;
  for (std::size_t i = 1; i < a.values.size(); ++i) sq += (a.values[i] - a.values[i - 1]) * (a.values[i] - a.values[i - 1]);
  CHECK(sq == doctest::Approx(1.0).epsilon(0.2));
  CHECK_THROWS_AS(sample_excursion(1, 1), Error);
}

TEST_CASE("maxima stay O(1) after scaling") {
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto e = sample_excursion(1 << 14, seed);
    sum += *std::max_element(e.values.begin(), e.values.end());
  }
  const double mean = sum / 100;
  MESSAGE("mean max of the excursion over 100 seeds: " << mean);
  CHECK(mean > 0.5);
  CHECK(mean < 3.0);
}

TEST_CASE("d_e") {
  const ExcursionPath tent{{0.0, 0.25, 0.5, 0.25, 0.0}};
  CHECK(d_e(tent, 3, 3) == 0);
  CHECK(d_e(tent, 0, 2) == Rational(1, 2));
  const ExcursionPath humps{{0.0, 0.75, 0.25, 0.5, 0.0}};
  CHECK(d_e(humps, 1, 3) == Rational(3, 4));
  CHECK(d_e(humps, 3, 1) == Rational(3, 4));
  try {
    d_e(tent, 0, 5);
    FAIL("index accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
}

TEST_CASE("d_e is a tree pseudo-metric on grid quadruples") {
  const auto e = sample_excursion(4096, 9);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> idx(0, e.n());
  for (int i = 0; i < 500; ++i) {
    const std::size_t a = idx(rng), b = idx(rng), c = idx(rng), d = idx(rng);
    std::array<Rational, 3> sums{d_e(e, a, b) + d_e(e, c, d), d_e(e, a, c) + d_e(e, b, d),
                                 d_e(e, a, d) + d_e(e, b, c)};
    std::sort(sums.begin(), sums.end());
    CHECK(sums[1] == sums[2]);
    CHECK(d_e(e, a, b) == d_e(e, b, a));
    CHECK(d_e(e, a, b).get_d() == doctest::Approx(d_e_direct(e, a, b)));
  }
}

TEST_CASE("crt_tree") {
  const auto sample = crt_tree(1 << 16, 2000, 1);
  const auto& h = sample.histogram;
  CHECK(h.size() <= 4);
  // Marks lying on the path between other marks are interior, so fewer than k leaves.
  CHECK(h[1] <= 2000);
  CHECK(h[1] > 1000);
  CHECK(h[3] + 2 == h[1]);
  for (std::size_t v = 4; v < h.size(); ++v) CHECK(h[v] == 0);
  CHECK(h.size() > 3);
  CHECK(h[2] == 0);
  CHECK(sample.tie_log.empty());
  SUBCASE("mark distances equal d_e") {
    const auto& ct = sample.contour;
    for (std::size_t i = 0; i < 200; ++i) {
      const std::size_t j = (i * 7 + 3) % ct.mark_times.size();
      CHECK(ct.tree.distance(ct.mark_vertices[i], ct.mark_vertices[j]) ==
            d_e(sample.excursion, ct.mark_times[i], ct.mark_times[j]));
    }
  }
  SUBCASE("smoothing preserves mark distances") {
    const auto& ct = sample.contour;
    std::vector<VertexId> kept;
    for (VertexId v : ct.mark_vertices)
      if (ct.tree.degree(v) != 2) kept.push_back(v);
    REQUIRE(kept.size() > 100);
    for (std::size_t i = 0; i < 50; ++i) {
      const VertexId a = sample.tree->vertex_named(ct.tree.name(kept[i])).value();
      const VertexId b = sample.tree->vertex_named(ct.tree.name(kept[i + 50])).value();
      CHECK(sample.tree->distance(a, b) == ct.tree.distance(kept[i], kept[i + 50]));
    }
  }
  SUBCASE("determinism") {
    const auto again = crt_tree(1 << 16, 2000, 1);
    CHECK(again.tree->hash() == sample.tree->hash());
  }
}

TEST_CASE("crt_tree preconditions and injected excursions") {
  try {
    crt_tree(1024, 1, 1);
    FAIL("k = 1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
  CHECK_THROWS_AS(crt_tree(1, 5, 1), Error);
  const ExcursionPath tent{{0.0, 0.25, 0.5, 0.25, 0.0}};
  const auto s = crt_tree_from(tent, 2, 4);
  CHECK(s.tree->edges().size() == 1);
  CHECK(s.tree->size() == 2);
}

TEST_CASE("excursion CSV") {
  std::ostringstream out;
  write_excursion_csv(out, ExcursionPath{{0.0, 0.5, 0.0}});
  CHECK(out.str() == "i,t,e\n0,0,0\n1,0.5,0.5\n2,1,0\n");
}
