#include "csst/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace csst {

namespace {

// Corner of the current tile that the arc currently sits on:
// f_u(-1), f_u(1), or the junction f_u(0).
enum class Corner { Minus = 0, Plus = 1, Center = 2 };

struct Step {
  Corner next;
  int added;  // unit segments traversed at the current scale
};

// 0 = f1(1) = f2(-1) = f3(-1),  -1 = f1(-1),  1 = f2(1).
Step step(Corner from, Letter k) {
  switch (from) {
    case Corner::Minus: return {Corner::Minus, k == 1 ? 0 : 1};
    case Corner::Plus:
      if (k == 2) return {Corner::Plus, 0};
      if (k == 1) return {Corner::Plus, 1};
      return {Corner::Minus, 1};
    case Corner::Center: return {k == 1 ? Corner::Plus : Corner::Minus, 0};
  }
  return {from, 0};
}

Point corner_point(Corner c) {
  switch (c) {
    case Corner::Minus: return Point(-1, 0);
    case Corner::Plus: return Point(1, 0);
    case Corner::Center: return Point(0, 0);
  }
  return Point(0, 0);
}

// D = offset + scale * D_state(rest); unroll the preperiod, then periods until
// a state repeats at a period boundary and solve the affine fixed point.
ExactLength corner_distance(Corner start, const PeriodicWord& w) {
  if (w.alphabet() != kCsstAlphabet) throw Error(ErrorCode::InvalidArgument, "metric needs the 3-letter alphabet");
  Rational offset = 0, scale = 1;
  Corner state = start;
  auto advance = [&](Letter k) {
    const Step s = step(state, k);
    if (s.added) offset += scale;
    scale /= 2;
    state = s.next;
  };
  for (Letter k : w.preperiod().letters()) advance(k);
  std::array<std::optional<std::pair<Rational, Rational>>, 3> seen;
  while (true) {
    auto& slot = seen[static_cast<std::size_t>(state)];
    if (slot) {
      const auto& [o_k, s_k] = *slot;
      const Rational x = (offset - o_k) / (s_k - scale);
      return o_k + s_k * x;
    }
    slot = std::make_pair(offset, scale);
    for (Letter k : w.period().letters()) advance(k);
  }
}

bool only_real_letters(const PeriodicWord& w) {
  for (const auto& r : representatives(w)) {
    auto ok = [](const FiniteWord& f) {
      return std::all_of(f.letters().begin(), f.letters().end(), [](Letter k) { return k != 3; });
    };
    if (ok(r.preperiod()) && ok(r.period())) return true;
  }
  return false;
}

struct ArcSide {
  std::vector<Point> vertices;  // moving away from the junction, junction excluded
  Rational length = 0;
  Rational tail = 0;
};

// Arc from f_u(0) to f_u(pi(tail)).
ArcSide walk_from_junction(const FiniteWord& u, const PeriodicWord& tail, const Rational& eps) {
  ArcSide side;
  PlanarSimilarity f = map_for_word(u);
  Rational scale = pow2(-static_cast<long>(u.size()));
  Corner state = Corner::Center;
  for (std::size_t pos = 0;; ++pos) {
    const PeriodicWord rest = tail.drop(pos);
    if (only_real_letters(rest)) {
      // pi(rest) lies on [-1, 1], so the remaining arc is a straight piece.
      const Point target = pi_eval(rest);
      const Point from = corner_point(state);
      if (!(target == from)) {
        side.vertices.push_back(f.apply(target));
        side.length += scale * abs(target.x - from.x);
      }
      return side;
    }
    if (2 * scale <= eps) {
      side.tail = scale * corner_distance(state, rest);
      return side;
    }
    const Letter k = rest.at(0);
    const Step s = step(state, k);
    if (s.added) {
      side.vertices.push_back(f.apply(Point(0, 0)));
      side.length += scale;
    }
    f = compose(f, generator(k));
    scale /= 2;
    state = s.next;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

double point_polygon_distance(const Point& p, const HullPolygon& poly) {
  if (poly.contains(p)) return 0.0;
  double best = INFINITY;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    best = std::min(best, point_segment_distance(p.x.get_d(), p.y.get_d(), a.x.get_d(), a.y.get_d(),
                                                 b.x.get_d(), b.y.get_d()));
  }
  return best;
}

std::vector<std::array<double, 2>> boundary_grid(const HullPolygon& poly, double step) {
  std::vector<std::array<double, 2>> out;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double ax = v[i].x.get_d(), ay = v[i].y.get_d();
    const double bx = v[(i + 1) % v.size()].x.get_d(), by = v[(i + 1) % v.size()].y.get_d();
    const double len = std::hypot(bx - ax, by - ay);
    const auto pieces = static_cast<std::size_t>(std::ceil(len / step));
    for (std::size_t j = 0; j < pieces; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(pieces);
      const double x = ax + t * (bx - ax), y = ay + t * (by - ay);
      if (x == 0.0 && y == 0.0) continue;
      out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace

ExactLength dist_to_minus_one(const PeriodicWord& w) { return corner_distance(Corner::Minus, w); }
ExactLength dist_to_plus_one(const PeriodicWord& w) { return corner_distance(Corner::Plus, w); }
ExactLength dist_to_center(const PeriodicWord& w) { return corner_distance(Corner::Center, w); }

ExactLength rho(const PeriodicWord& a, const PeriodicWord& b) {
  if (equivalent(a, b)) return 0;
  const auto split = max_common_prefix_pair(a, b);
  return pow2(-static_cast<long>(split.prefix.size())) *
         (dist_to_center(split.tail_a) + dist_to_center(split.tail_b));
}

ArcPolyline arc_polyline(const PeriodicWord& a, const PeriodicWord& b, const ExactLength& eps) {
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  ArcPolyline out;
  if (equivalent(a, b)) {
    out.vertices = {pi_eval(a)};
    return out;
  }
  const auto split = max_common_prefix_pair(a, b);
  const ArcSide side_a = walk_from_junction(split.prefix, split.tail_a, eps);
  const ArcSide side_b = walk_from_junction(split.prefix, split.tail_b, eps);
  std::vector<Point> raw(side_a.vertices.rbegin(), side_a.vertices.rend());
  raw.push_back(map_for_word(split.prefix).apply(Point(0, 0)));
  raw.insert(raw.end(), side_b.vertices.begin(), side_b.vertices.end());

  // Drop interior vertices where the polyline continues straight on.
  for (const auto& p : raw) {
    if (!out.vertices.empty() && out.vertices.back() == p) continue;
    const std::size_t n = out.vertices.size();
    if (n >= 2) {
      const Point d1 = out.vertices[n - 1] - out.vertices[n - 2];
      const Point d2 = p - out.vertices[n - 1];
      const bool collinear = d1.x * d2.y - d1.y * d2.x == 0;
      const bool forward = d1.x * d2.x + d1.y * d2.y > 0;
      if (collinear && forward) out.vertices.back() = p;
      else out.vertices.push_back(p);
    } else {
      out.vertices.push_back(p);
    }
  }
  out.polyline_length = side_a.length + side_b.length;
  out.exact_tail_bound = side_a.tail + side_b.tail;
  return out;
}

std::pair<PeriodicWord, PeriodicWord> scan_pair(std::uint64_t seed, std::size_t i) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i) + 1)));
  PeriodicWord a = random_periodic_word(rng);
  PeriodicWord b = random_periodic_word(rng);
  return {std::move(a), std::move(b)};
}

QuasiconvexityScan quasiconvexity_scan(std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw Error(ErrorCode::InvalidArgument, "sample_count must be >= 1");
  QuasiconvexityScan out;
  for (std::size_t i = 0; i < sample_count; ++i) {
    auto [a, b] = scan_pair(seed, i);
    if (equivalent(a, b)) continue;
    const double chord = euclid(pi_eval(a), pi_eval(b));
    const double ratio = rho(a, b).get_d() / chord;
    ++out.pairs_used;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.witness_a = a.str();
      out.witness_b = b.str();
    }
  }
  return out;
}

QuasiconvexityBound quasiconvexity_bound() {
  const auto pieces = generate_Kn(1);
  QuasiconvexityBound out;
  out.c0 = std::min(point_polygon_distance(Point(-1, 0), pieces[1]),
                    point_polygon_distance(Point(-1, 0), pieces[2]));
  const double step = std::ldexp(1.0, -10);
  std::array<std::vector<std::array<double, 2>>, 3> grids;
  for (std::size_t k = 0; k < 3; ++k) grids[k] = boundary_grid(pieces[k], step);
  double c1 = INFINITY;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = k + 1; l < 3; ++l) {
      for (const auto& x : grids[k]) {
        const double nx = std::hypot(x[0], x[1]);
        for (const auto& y : grids[l]) {
          const double r = std::hypot(x[0] - y[0], x[1] - y[1]) / (nx + std::hypot(y[0], y[1]));
          c1 = std::min(c1, r);
        }
      }
    }
  }
  out.c1 = c1;
  out.K = 2.0 / out.c0;
  out.L = out.K / out.c1;
  return out;
}

double bound_L() { return quasiconvexity_bound().L; }

}  // namespace csst
