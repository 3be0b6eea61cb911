#include "csst/planar_ifs.hpp"

#include <algorithm>
#include <cmath>

namespace csst {

namespace {

const Rational kHalf(1, 2);

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

PlanarSimilarity identity_map() { return {}; }

PlanarSimilarity generator(int k) {
  switch (k) {
    case 1: return {false, Point(kHalf, 0), Point(-kHalf, 0)};
    case 2: return {true, Point(kHalf, 0), Point(kHalf, 0)};
    case 3: return {true, Point(0, kHalf), Point(0, kHalf)};
    default: throw Error(ErrorCode::BadLetter, "generator index " + std::to_string(k) + " outside 1..3");
  }
}

PlanarSimilarity compose(const PlanarSimilarity& f, const PlanarSimilarity& g) {
  // f(g(z)) = a_f s_f(a_g s_g(z) + b_g) + b_f, with s_f additive and multiplicative.
  const Point ag = f.conjugating ? g.a.conj() : g.a;
  const Point bg = f.conjugating ? g.b.conj() : g.b;
  return {f.conjugating != g.conjugating, f.a * ag, f.a * bg + f.b};
}

Point fixed_point(const PlanarSimilarity& f) {
  const Rational modulus2 = f.a.norm2();
  if (modulus2 >= 1) throw Error(ErrorCode::NotContracting, "multiplier has modulus >= 1");
  if (!f.conjugating) {
    // z = b / (1 - a)
    const Point d(1 - f.a.x, -f.a.y);
    const Rational n2 = d.norm2();
    const Point num = f.b * d.conj();
    return {num.x / n2, num.y / n2};
  }
  // x = p x + q y + r,  y = q x - p y + s  with a = p + iq, b = r + is.
  const Rational& p = f.a.x;
  const Rational& q = f.a.y;
  const Rational& r = f.b.x;
  const Rational& s = f.b.y;
  const Rational det = 1 - modulus2;
  return {(r * (1 + p) + q * s) / det, ((1 - p) * s + q * r) / det};
}

PlanarSimilarity map_for_word(const FiniteWord& u) {
  PlanarSimilarity out = identity_map();
  for (Letter k : u.letters()) out = compose(out, generator(k));
  return out;
}

Point pi_eval(const PeriodicWord& w) {
  if (w.alphabet() != kCsstAlphabet) throw Error(ErrorCode::InvalidArgument, "pi needs the 3-letter alphabet");
  return map_for_word(w.preperiod()).apply(fixed_point(map_for_word(w.period())));
}

Point pi_eval_iterative(const LetterStream& letters, std::size_t n, const Point& z0) {
  std::vector<Letter> word(n);
  for (std::size_t i = 0; i < n; ++i) word[i] = letters(i);
  Point z = z0;
  for (std::size_t i = n; i-- > 0;) z = generator(word[i]).apply(z);
  return z;
}

bool HullPolygon::contains(const Point& z) const {
  const std::size_t n = vertices.size();
  if (n == 0) return false;
  if (n == 1) return vertices[0] == z;
  bool saw_pos = false, saw_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = sgn(cross(vertices[i], vertices[(i + 1) % n], z));
    saw_pos |= s > 0;
    saw_neg |= s < 0;
  }
  return !(saw_pos && saw_neg);
}

double HullPolygon::diameter() const {
  double best = 0;
  for (const auto& p : vertices) {
    for (const auto& q : vertices) best = std::max(best, euclid(p, q));
  }
  return best;
}

HullPolygon hull() { return {{Point(1, 0), Point(0, 1), Point(-1, 0), Point(kHalf, -kHalf)}}; }

CornerFlags corner_flags(const FiniteWord& u) {
  if (u.alphabet() != kCsstAlphabet) throw Error(ErrorCode::InvalidArgument, "tiles need the 3-letter alphabet");
  CornerFlags flags;
  for (Letter k : u.letters()) {
    switch (k) {
      case 1: flags = {flags.minus, true}; break;
      case 2: flags = {true, flags.plus}; break;
      case 3: flags = {true, false}; break;
      default: throw Error(ErrorCode::BadLetter, "letter outside 1..3");
    }
  }
  return flags;
}

TileCorners tile_corners(const FiniteWord& u) {
  const CornerFlags flags = corner_flags(u);
  const PlanarSimilarity f = map_for_word(u);
  TileCorners out;
  out.center = f.apply(Point(0, 0));
  if (flags.minus) out.minus = SignedCorner{f.apply(Point(-1, 0)), '-'};
  if (flags.plus) out.plus = SignedCorner{f.apply(Point(1, 0)), '+'};
  return out;
}

std::vector<Segment> generate_Jn(std::size_t n) {
  std::vector<Segment> out;
  out.reserve(static_cast<std::size_t>(std::pow(3.0, static_cast<double>(n))));
  const Point lo(-1, 0), hi(1, 0);
  for_each_word_map(n, [&](const FiniteWord&, const PlanarSimilarity& f) {
    out.push_back({f.apply(lo), f.apply(hi)});
  });
  return out;
}

std::vector<HullPolygon> generate_Kn(std::size_t n) {
  const HullPolygon h = hull();
  std::vector<HullPolygon> out;
  for_each_word_map(n, [&](const FiniteWord&, const PlanarSimilarity& f) {
    HullPolygon poly;
    for (const auto& v : h.vertices) poly.vertices.push_back(f.apply(v));
    out.push_back(std::move(poly));
  });
  return out;
}

std::vector<Point> sample_cloud(std::size_t n, const Point& z0) {
  if (!hull().contains(z0)) throw Error(ErrorCode::PointOutsideHull, to_string(z0) + " is not in H");
  std::vector<Point> out;
  for_each_word_map(n, [&](const FiniteWord&, const PlanarSimilarity& f) { out.push_back(f.apply(z0)); });
  return out;
}

}  // namespace csst
