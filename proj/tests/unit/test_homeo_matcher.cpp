#include <doctest.h>

#include "csst/homeo_matcher.hpp"
#include "oracles.hpp"

using namespace csst;

namespace {

FiniteWord F(const char* s) { return FiniteWord::parse(s); }

template <class T>
std::shared_ptr<const T> share(T value) {
  return std::make_shared<const T>(std::move(value));
}

std::shared_ptr<const Decomposition> jn_decomposition(std::size_t n, std::size_t depth) {
  return share(decompose(share(from_segments(generate_Jn(n))), 3, StopRule{depth, 0.0}));
}

std::shared_ptr<const Decomposition> double_y() {
  auto tree = share(FiniteMetricTree(6, {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {0, 3, Rational(1)},
                                         {1, 4, Rational(1)}, {1, 5, Rational(1)}}));
  return share(decompose(tree, 3, StopRule{2, 0.0}));
}

std::vector<VertexId> leaves_of(const FiniteMetricTree& t) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < t.size(); ++v)
    if (t.degree(v) == 1) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("identity matching") {
  const auto ref = share(csst_reference_decomposition(3));
  const auto r = check_matching(*ref, *ref, 3);
  CHECK(r.pass);
  CHECK(r.iff1.empty());
  CHECK(r.iff2.empty());
  const auto c = build_correspondence(ref, ref, 3);
  CHECK(c.effective_depth == 3);
  CHECK(c.chosen.size() == 1 + 3 + 9 + 27);
  for (const auto& p : c.chosen) CHECK(p.t_vertex == p.s_vertex);
  for (const auto& l : c.leaves) CHECK(l.t_vertex == l.s_vertex);
  CHECK(c.image_of_chosen(F("")) == ref->levels[0][0].chosen);
  CHECK_FALSE(c.image_of_chosen(F("1111")).has_value());
}

TEST_CASE("reference against a J_n decomposition") {
  const auto ref = share(csst_reference_decomposition(4));
  const auto jn = jn_decomposition(8, 4);
  const auto r = check_matching(*ref, *jn, 4);
  CHECK(r.pass);
  CHECK(check_matching(*jn, *ref, 4).pass);
  const auto c = build_correspondence(ref, jn, 4);
  REQUIRE(c.chosen.size() == 1 + 3 + 9 + 27 + 81);
  for (const auto& p : c.chosen) {
    CHECK(ref->tree->position(p.t_vertex) == jn->tree->position(p.s_vertex));
    CHECK(jn->tree->position(p.s_vertex) == map_for_word(p.label).apply(Point(0, 0)));
  }
  CHECK(jn->tree->position(*c.image_of_chosen(F("3"))) == Point(Rational(0), Rational(1, 2)));
  REQUIRE(c.modulus.size() == 5);
  for (const auto& row : c.modulus) {
    CHECK(row.t_max_diameter == pow2(1 - static_cast<long>(row.level)));
    CHECK(row.s_max_diameter == row.t_max_diameter);
  }
}

TEST_CASE("a flipped sign is detected at its label") {
  const auto ref = csst_reference_decomposition(2);
  auto bad = ref;
  flip_marked_sign(bad, F("12"), 0);
  const auto r = check_matching(ref, bad, 2);
  CHECK_FALSE(r.pass);
  REQUIRE_FALSE(r.iff2.empty());
  bool at_label = false;
  for (const auto& v : r.iff2) at_label = at_label || v.label == F("12") || v.other_label == F("12");
  CHECK(at_label);
  CHECK(r.iff1.empty());
  CHECK(check_matching(bad, ref, 2).pass == r.pass);
  try {
    build_correspondence(share(ref), share(bad), 2);
    FAIL("mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MatchFailed);
  }
}

TEST_CASE("matching preconditions") {
  const auto ref = csst_reference_decomposition(2);
  const auto star4 = share(FiniteMetricTree(
      5, {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {0, 3, Rational(1)}, {0, 4, Rational(1)}}));
  try {
    check_matching(ref, decompose(star4, 4), 0);
    FAIL("alphabet mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphabetMismatch);
  }
  const auto dy = double_y();
  try {
    check_matching(*dy, *dy, 1);
    FAIL("missing depth accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthUnavailable);
  }
  CHECK(common_depth(ref, *dy) == 0);
  CHECK(build_correspondence(share(ref), dy, 2).effective_depth == 0);
}

TEST_CASE("map_point") {
  const auto ref = share(csst_reference_decomposition(3));
  const auto jn = jn_decomposition(7, 3);
  const auto c = build_correspondence(ref, jn, 3);
  SUBCASE("chosen points") {
    for (const auto& p : c.chosen) CHECK(map_point(c, p.t_vertex) == p.s_vertex);
  }
  SUBCASE("a shared marked leaf") {
    // Without the recorded pair for c_1, the image comes from the leaves of 11, 12, 13.
    auto partial = c;
    std::erase_if(partial.chosen, [](const PointPair& p) { return p.label == F("1"); });
    const VertexId c1 = *ref->find(F("1"))->chosen;
    CHECK(map_point(partial, c1) == *c.image_of_chosen(F("1")));
  }
  SUBCASE("other points land in the matching tile") {
    for (VertexId x = 0; x < ref->tree->size(); x += 5) {
      const VertexId y = map_point(c, x);
      const auto chain = tile_chain(*ref, x, 3);
      REQUIRE(chain.size() == 4);
      const Tile* target = jn->find(chain.back());
      CHECK(std::binary_search(target->vertices.begin(), target->vertices.end(), y));
    }
  }
  SUBCASE("modulus soundness") {
    const Rational bound = 2 * c.modulus.back().s_max_diameter;
    for (const auto& tile : ref->levels[3]) {
      const VertexId a = tile.vertices.front(), b = tile.vertices.back();
      CHECK(jn->tree->distance(map_point(c, a), map_point(c, b)) <= bound);
    }
  }
  SUBCASE("out of domain") {
    CHECK_THROWS_AS(map_point(c, static_cast<VertexId>(ref->tree->size())), Error);
    const auto dy = double_y();
    const auto self = build_correspondence(dy, dy, 1);
    try {
      map_point(self, 2);
      FAIL("terminal tile accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfDomain);
    }
  }
}

TEST_CASE("tile_chain") {
  const auto ref = csst_reference_decomposition(3);
  const VertexId i = ref.tree->vertex_at(Point(0, 1)).value();
  CHECK(tile_chain(ref, i, 3) == std::vector<FiniteWord>{F(""), F("3"), F("32"), F("322")});
  const VertexId minus_one = ref.tree->vertex_at(Point(-1, 0)).value();
  CHECK(tile_chain(ref, minus_one, 2) == std::vector<FiniteWord>{F(""), F("1"), F("11")});
}

TEST_CASE("match_normalized on the CSST with -1, 1, i") {
  const auto tree = share(from_segments(generate_Jn(7), true));
  const auto p = [&](long x, long y) { return tree->vertex_at(Point(x, y)).value(); };
  const std::array<VertexId, 3> leaves{p(-1, 0), p(1, 0), p(0, 1)};
  const auto c = match_normalized(tree, leaves, tree, leaves, 3);
  CHECK(c.effective_depth == 3);
  for (const auto& pair : c.chosen) CHECK(pair.t_vertex == pair.s_vertex);
  for (std::size_t k = 0; k < 3; ++k) CHECK(map_point(c, leaves[k]) == leaves[k]);
  CHECK(c.normalized_chains[0] == std::vector<FiniteWord>{F("1"), F("11"), F("111")});
  CHECK(c.normalized_chains[1] == std::vector<FiniteWord>{F("2"), F("22"), F("222")});
  CHECK(c.normalized_chains[2] == std::vector<FiniteWord>{F("3"), F("32"), F("322")});
}

TEST_CASE("match_normalized on two different trivalent trees") {
  std::mt19937_64 rng(37);
  const auto a = share(oracle::random_trivalent_tree(300, rng));
  const auto b = share(oracle::random_trivalent_tree(300, rng));
  const auto la = leaves_of(*a), lb = leaves_of(*b);
  const std::array<VertexId, 3> p{la[0], la[1], la[2]}, q{lb[3], lb[4], lb[5]};
  const auto c = match_normalized(a, p, b, q, 4);
  REQUIRE(c.effective_depth >= 1);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(map_point(c, p[k]) == q[k]);
    const auto& chain = c.normalized_chains[k];
    REQUIRE(chain.size() == c.effective_depth);
    const Letter first = static_cast<Letter>(k + 1), rest = k == 0 ? 1 : 2;
    for (std::size_t j = 0; j < chain.size(); ++j) {
      REQUIRE(chain[j].size() == j + 1);
      CHECK(chain[j][0] == first);
      for (std::size_t i = 1; i < chain[j].size(); ++i) CHECK(chain[j][i] == rest);
    }
  }
  const auto r = check_matching(*c.t, *c.s, c.effective_depth);
  CHECK(r.pass);
}
