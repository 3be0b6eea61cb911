#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "csst/planar_ifs.hpp"
#include "oracles.hpp"

using namespace csst;

namespace {

Point P(long x, long y) { return Point(x, y); }
Point Q(const char* x, const char* y) { return Point(parse_rational(x), parse_rational(y)); }
PeriodicWord W(const char* s) { return PeriodicWord::parse(s); }

std::complex<double> as_complex(const Point& p) { return {p.x.get_d(), p.y.get_d()}; }

}  // namespace

TEST_CASE("generators") {
  const auto f1 = generator(1), f2 = generator(2), f3 = generator(3);
  CHECK_FALSE(f1.conjugating);
  CHECK(f1.a == Q("1/2", "0"));
  CHECK(f1.b == Q("-1/2", "0"));
  CHECK(f2.conjugating);
  CHECK(f2.b == Q("1/2", "0"));
  CHECK(f3.conjugating);
  CHECK(f3.a == Q("0", "1/2"));
  CHECK(f3.b == Q("0", "1/2"));
  CHECK(f3.apply(P(1, 1)) == Q("1/2", "1"));
  CHECK_THROWS_AS(generator(0), Error);
  CHECK_THROWS_AS(generator(4), Error);
}

TEST_CASE("compose") {
  const auto g = compose(generator(2), generator(3));
  CHECK_FALSE(g.conjugating);
  CHECK(g.a == Q("0", "-1/4"));
  CHECK(g.b == Q("1/2", "-1/4"));
  CHECK(compose(identity_map(), generator(1)) == generator(1));
  CHECK(map_for_word(FiniteWord::parse("31")).apply(P(0, 0)) == Q("0", "1/4"));
  for (const Point& z : {P(0, 0), P(1, 1), Q("1/3", "-2/7")}) {
    CHECK(g.apply(z) == generator(2).apply(generator(3).apply(z)));
  }
}

TEST_CASE("fixed points") {
  CHECK(fixed_point(generator(1)) == P(-1, 0));
  CHECK(fixed_point(generator(2)) == P(1, 0));
  CHECK(fixed_point(generator(3)) == Q("1/3", "2/3"));
  CHECK_THROWS_AS(fixed_point(identity_map()), Error);
}

TEST_CASE("map_for_word") {
  CHECK(map_for_word(FiniteWord()) == identity_map());
  for (std::size_t n = 1; n <= 10; ++n) {
    std::vector<Letter> letters(n, 1);
    letters[0] = 3;
    CHECK(map_for_word(FiniteWord(letters)).apply(P(0, 0)) == Point(Rational(0), pow2(-static_cast<long>(n))));
  }
  CHECK(map_for_word(FiniteWord::parse("12")).apply(P(-1, 0)) == Q("-1/2", "0"));
  const auto f = map_for_word(FiniteWord::parse("3213"));
  CHECK(f.a.norm2() == pow2(-8));
  CHECK(f.conjugating == true);  // three conjugating letters
}

TEST_CASE("pi_eval") {
  CHECK(pi_eval(W("(1)")) == P(-1, 0));
  CHECK(pi_eval(W("1(2)")) == P(0, 0));
  CHECK(pi_eval(W("3(2)")) == P(0, 1));
  CHECK(pi_eval(W("(3)")) == Q("1/3", "2/3"));
  CHECK(pi_eval(W("(2)")) == P(1, 0));
}

TEST_CASE("pi_eval_iterative") {
  CHECK(pi_eval_iterative(stream_of(W("(2)")), 0, P(0, 0)) == P(0, 0));
  const Point p = pi_eval_iterative(stream_of(W("(2)")), 20, P(0, 0));
  CHECK(euclid(p, P(1, 0)) <= std::ldexp(2.0, -20));
  const Point q = pi_eval_iterative(stream_of(W("(1)")), 10, P(1, 0));
  CHECK(q == Point(pow2(-9) - 1, Rational(0)));
  CHECK(euclid(q, P(-1, 0)) <= std::ldexp(kHullDiameter, -10));
}

TEST_CASE("pi_eval agrees with floating-point iteration of the maps") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const PeriodicWord w = random_periodic_word(rng);
    std::vector<int> letters;
    for (std::size_t k = 0; k < 60; ++k) letters.push_back(w.at(k));
    const auto z = oracle::iterate(letters, {0.0, 0.0});
    CHECK(std::abs(z - as_complex(pi_eval(w))) < 1e-12);
  }
}

TEST_CASE("tile corners") {
  const auto root = tile_corners(FiniteWord());
  CHECK_FALSE(root.minus.has_value());
  CHECK_FALSE(root.plus.has_value());
  CHECK(root.center == P(0, 0));

  const auto t1 = tile_corners(FiniteWord::parse("1"));
  CHECK_FALSE(t1.minus.has_value());
  REQUIRE(t1.plus.has_value());
  CHECK(t1.plus->point == P(0, 0));
  CHECK(t1.plus->sign == '+');

  const auto t33 = tile_corners(FiniteWord::parse("33"));
  REQUIRE(t33.minus.has_value());
  CHECK_FALSE(t33.plus.has_value());
  CHECK(t33.minus->point == Q("0", "1/2"));
  CHECK(t33.minus->point == generator(3).apply(P(0, 0)));

  CHECK_THROWS_AS(tile_corners(FiniteWord({4}, 4)), Error);
}

TEST_CASE("generate_Jn") {
  const auto j0 = generate_Jn(0);
  REQUIRE(j0.size() == 1);
  CHECK(((j0[0].a == P(-1, 0) && j0[0].b == P(1, 0)) || (j0[0].a == P(1, 0) && j0[0].b == P(-1, 0))));

  const auto j1 = generate_Jn(1);
  REQUIRE(j1.size() == 3);
  std::set<std::pair<Point, Point>> got;
  for (const auto& s : j1) got.insert(std::minmax(s.a, s.b));
  CHECK(got == std::set<std::pair<Point, Point>>{std::minmax(P(-1, 0), P(0, 0)), std::minmax(P(0, 0), P(1, 0)),
                                                 std::minmax(P(0, 0), P(0, 1))});
  const auto j2 = generate_Jn(2);
  CHECK(j2.size() == 9);
  for (const auto& s : j2) CHECK(exact_distance(s.a, s.b) == Rational(1, 2));
}

TEST_CASE("J_n is contained in J_{n+1}") {
  for (std::size_t n = 0; n < 5; ++n) {
    std::set<Point> fine;
    for (const auto& s : generate_Jn(n + 1)) {
      fine.insert(s.a);
      fine.insert(s.b);
    }
    for (const auto& s : generate_Jn(n)) {
      CHECK(fine.count(s.a));
      CHECK(fine.count(s.b));
      CHECK(fine.count(Point((s.a.x + s.b.x) / 2, (s.a.y + s.b.y) / 2)));
    }
  }
}

TEST_CASE("hull and K_n") {
  const HullPolygon h = hull();
  REQUIRE(h.vertices.size() == 4);
  for (const Point& v : {P(1, 0), P(0, 1), P(-1, 0), Q("1/2", "-1/2")}) {
    CHECK(std::find(h.vertices.begin(), h.vertices.end(), v) != h.vertices.end());
  }
  CHECK(h.contains(P(0, 0)));
  CHECK_FALSE(h.contains(Q("-1/2", "-1/2")));
  for (int k = 1; k <= 3; ++k) {
    for (const auto& v : h.vertices) CHECK(h.contains(generator(k).apply(v)));
  }
  // The figure's vertex -1/2 + i/2 would not give an invariant hull.
  HullPolygon figure{{P(1, 0), P(0, 1), P(-1, 0), Q("-1/2", "1/2")}};
  bool invariant = true;
  for (int k = 1; k <= 3; ++k) {
    for (const auto& v : figure.vertices) invariant = invariant && figure.contains(generator(k).apply(v));
  }
  CHECK_FALSE(invariant);

  const auto k1 = generate_Kn(1);
  REQUIRE(k1.size() == 3);
  const auto k2 = generate_Kn(2);
  CHECK(k2.size() == 9);
  for (std::size_t i = 0; i < k2.size(); ++i) {
    for (const auto& v : k2[i].vertices) CHECK(k1[i / 3].contains(v));
  }
}

TEST_CASE("sample_cloud") {
  CHECK(sample_cloud(0, P(0, 0)) == std::vector<Point>{P(0, 0)});
  const auto c1 = sample_cloud(1, P(0, 0));
  CHECK(std::set<Point>(c1.begin(), c1.end()) == std::set<Point>{Q("-1/2", "0"), Q("1/2", "0"), Q("0", "1/2")});
  const auto c6 = sample_cloud(6, P(0, 0));
  CHECK(c6.size() == 729);
  CHECK(std::find(c6.begin(), c6.end(), Point(Rational(0), pow2(-6))) != c6.end());
  const HullPolygon h = hull();
  for (const auto& p : c6) CHECK(h.contains(p));
  CHECK_THROWS_AS(sample_cloud(2, P(0, -1)), Error);
}

TEST_CASE("attractor equation on samples") {
  const auto c3 = sample_cloud(3, P(0, 0));
  const auto c4 = sample_cloud(4, P(0, 0));
  std::vector<Point> images;
  for (int k = 1; k <= 3; ++k) {
    for (const auto& p : c3) images.push_back(generator(k).apply(p));
  }
  CHECK(images == c4);
}
