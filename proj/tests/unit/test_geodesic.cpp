#include <doctest.h>

#include <cmath>

#include "csst/geodesic.hpp"
#include "oracles.hpp"

using namespace csst;

namespace {

PeriodicWord W(const char* s) { return PeriodicWord::parse(s); }
Rational R(const char* s) { return parse_rational(s); }

// Partial sums of sum_n 2^-n [w_{n+1} != 1].
Rational series_to_minus_one(const PeriodicWord& w, std::size_t terms) {
  Rational sum = 0;
  for (std::size_t n = 0; n < terms; ++n) {
    if (w.at(n) != 1) sum += pow2(-static_cast<long>(n));
  }
  return sum;
}

}  // namespace

TEST_CASE("distance to -1") {
  CHECK(dist_to_minus_one(W("(1)")) == 0);
  CHECK(dist_to_minus_one(W("(2)")) == 2);
  CHECK(dist_to_minus_one(W("1(2)")) == 1);
  // pi((12)) = -1/3 and pi((21)) = 1/3, the fixed points of f1 f2 and f2 f1.
  CHECK(pi_eval(W("(12)")) == Point(Rational(-1, 3), Rational(0)));
  CHECK(dist_to_minus_one(W("(12)")) == R("2/3"));
  CHECK(dist_to_minus_one(W("(21)")) == R("4/3"));
  CHECK(abs(series_to_minus_one(W("(12)"), 40) - R("2/3")) <= pow2(-38));
  CHECK(abs(series_to_minus_one(W("(21)"), 40) - R("4/3")) <= pow2(-38));
}

TEST_CASE("distance to -1 matches the series for random words") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const PeriodicWord w = random_periodic_word(rng);
    const Rational exact = dist_to_minus_one(w);
    const Rational partial = series_to_minus_one(w, 50);
    CHECK(partial <= exact);
    CHECK(exact - partial <= pow2(-48));
  }
}

TEST_CASE("distance to +1") {
  CHECK(dist_to_plus_one(W("(2)")) == 0);
  CHECK(dist_to_plus_one(W("(1)")) == 2);
  CHECK(dist_to_plus_one(W("3(2)")) == 2);
}

TEST_CASE("distance to the junction") {
  CHECK(dist_to_center(W("1(2)")) == 0);
  CHECK(dist_to_center(W("2(1)")) == 0);
  CHECK(dist_to_center(W("(1)")) == 1);
  CHECK(dist_to_center(W("(3)")) == 1);
  CHECK(dist_to_minus_one(W("(3)")) == 2);
}

TEST_CASE("rho") {
  CHECK(rho(W("(1)"), W("(2)")) == 2);
  CHECK(rho(W("3(12)"), W("3(12)")) == 0);
  CHECK(rho(W("1(2)"), W("3(1)")) == 0);
  CHECK(rho(W("3(2)"), W("(2)")) == 2);
  CHECK(rho(W("(3)"), W("31(2)")) == rho(W("31(2)"), W("(3)")));
}

TEST_CASE("rho equals graph distance on J_n for dyadic corner words") {
  const std::size_t n = 8;
  const oracle::SegmentGraph graph(generate_Jn(n));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> letter(1, 3), tail(1, 2);
  auto corner_word = [&] {
    std::vector<Letter> u;
    for (std::size_t k = 0; k < n; ++k) u.push_back(static_cast<Letter>(letter(rng)));
    return PeriodicWord(FiniteWord(u), FiniteWord({static_cast<Letter>(tail(rng))}));
  };
  for (int i = 0; i < 200; ++i) {
    const PeriodicWord a = corner_word(), b = corner_word();
    CHECK(rho(a, b) == graph.distance(pi_eval(a), pi_eval(b)));
  }
}

TEST_CASE("rho against J_14 for ((3), 31(2))") {
  // pi((3)) = 1/3 + 2i/3 is not a J-vertex; compare with its depth-14 truncation.
  const PeriodicWord a = W("(3)"), b = W("31(2)");
  const PeriodicWord a14(FiniteWord(std::vector<Letter>(14, 3)), FiniteWord({1}));
  const oracle::SegmentGraph graph(generate_Jn(14));
  const Rational g = graph.distance(pi_eval(a14), pi_eval(b));
  CHECK(abs(rho(a, b) - g) <= pow2(-12));
}

TEST_CASE("representative independence and scaling") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const PeriodicWord a = random_periodic_word(rng, 6, 3), b = random_periodic_word(rng, 6, 3);
    if (equivalent(a, b)) continue;
    const Rational r = rho(a, b);
    for (const auto& x : representatives(a)) {
      for (const auto& y : representatives(b)) CHECK(rho(x, y) == r);
    }
    const FiniteWord u = FiniteWord::parse("213");
    CHECK(rho(a.prepend(u), b.prepend(u)) == r / 8);
  }
}

TEST_CASE("bi-Lipschitz sandwich") {
  const double L = bound_L();
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const PeriodicWord a = random_periodic_word(rng), b = random_periodic_word(rng);
    const double chord = euclid(pi_eval(a), pi_eval(b));
    const double r = rho(a, b).get_d();
    CHECK(chord <= r + 1e-12);
    CHECK(r <= L * chord + 1e-12);
  }
}

TEST_CASE("arc polyline") {
  SUBCASE("single segment") {
    const auto arc = arc_polyline(W("(1)"), W("1(2)"), R("1/100"));
    REQUIRE(arc.vertices.size() == 2);
    CHECK(arc.vertices.front() == Point(-1, 0));
    CHECK(arc.vertices.back() == Point(0, 0));
    CHECK(arc.exact_tail_bound == 0);
    CHECK(arc.polyline_length == 1);
  }
  SUBCASE("through the junction") {
    const auto arc = arc_polyline(W("(1)"), W("3(2)"), R("1/100"));
    REQUIRE(arc.vertices.size() == 3);
    CHECK(arc.vertices[1] == Point(0, 0));
    CHECK(arc.vertices.back() == Point(0, 1));
    CHECK(arc.polyline_length == 2);
  }
  SUBCASE("length bookkeeping and tail bound") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
      const PeriodicWord a = random_periodic_word(rng), b = random_periodic_word(rng);
      if (equivalent(a, b)) continue;
      for (long k : {3L, 6L, 10L}) {
        const Rational eps = pow2(-k);
        const auto arc = arc_polyline(a, b, eps);
        CHECK(arc.polyline_length + arc.exact_tail_bound == rho(a, b));
        CHECK(arc.exact_tail_bound <= 2 * eps);
        Rational sum = 0;
        for (std::size_t j = 1; j < arc.vertices.size(); ++j) {
          CHECK_FALSE(arc.vertices[j] == arc.vertices[j - 1]);
          sum += exact_distance(arc.vertices[j - 1], arc.vertices[j]);
        }
        CHECK(sum == arc.polyline_length);
      }
    }
  }
  CHECK_THROWS_AS(arc_polyline(W("(1)"), W("(2)"), Rational(0)), Error);
}

TEST_CASE("quasi-convexity constants") {
  const auto b = quasiconvexity_bound();
  CHECK(b.c0 > 0);
  CHECK(b.c1 > 0);
  CHECK(b.c0 == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-9));
  CHECK(b.L == doctest::Approx(b.K / b.c1));
  const auto scan = quasiconvexity_scan(2000, 1);
  CHECK(scan.pairs_used > 1900);
  CHECK(scan.max_ratio >= 1.0);
  CHECK(scan.max_ratio <= bound_L());
  CHECK(quasiconvexity_scan(2000, 1).max_ratio == scan.max_ratio);
  const auto [a, b2] = scan_pair(1, 0);
  CHECK(quasiconvexity_scan(1, 1).witness_a == (equivalent(a, b2) ? "" : a.str()));
  CHECK_THROWS_AS(quasiconvexity_scan(0, 1), Error);
}

TEST_CASE("scan ratios of named pairs") {
  CHECK(rho(W("(1)"), W("(2)")).get_d() / euclid(Point(-1, 0), Point(1, 0)) == doctest::Approx(1.0));
  CHECK(rho(W("3(2)"), W("(2)")).get_d() / euclid(Point(0, 1), Point(1, 0)) == doctest::Approx(std::sqrt(2.0)));
}
