#include "csst/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace csst::io {

namespace {

constexpr double kScale = 400.0;
constexpr double kMargin = 0.1;

// Drawing window: [-1, 1] x [-1/2, 1] plus a margin.
constexpr double kMinX = -1.0 - kMargin, kMaxX = 1.0 + kMargin;
constexpr double kMinY = -0.5 - kMargin, kMaxY = 1.0 + kMargin;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

double sx(const Point& p) { return (p.x.get_d() - kMinX) * kScale; }
double sy(const Point& p) { return (kMaxY - p.y.get_d()) * kScale; }

std::string svg_header() {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num((kMaxX - kMinX) * kScale) << "\" height=\""
      << num((kMaxY - kMinY) * kScale) << "\" viewBox=\"0 0 " << num((kMaxX - kMinX) * kScale) << " "
      << num((kMaxY - kMinY) * kScale) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

std::string label_or_root(const FiniteWord& u) { return u.str(); }

FiniteWord parse_label(const Json& j, int alphabet) { return FiniteWord::parse(j.get<std::string>(), alphabet); }

Json vertex_ref(const FiniteMetricTree* t, VertexId v) {
  Json j;
  j["vertex"] = t ? t->name(v) : static_cast<std::int64_t>(v);
  if (t && t->position(v)) j["position"] = point_to_json(*t->position(v));
  return j;
}

std::optional<Sign> opt_sign(const Json& j) {
  if (j.is_null()) return std::nullopt;
  const auto s = j.get<std::string>();
  if (s.size() != 1) throw Error(ErrorCode::ParseError, "bad sign '" + s + "'");
  return parse_sign(s[0]);
}

Json opt_sign_json(const std::optional<Sign>& s) {
  if (!s) return nullptr;
  return std::string(1, to_char(*s));
}

}  // namespace

Json point_to_json(const Point& p) { return Json{{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }

Point point_from_json(const Json& j) {
  return Point(parse_rational(j.at("x").get<std::string>()), parse_rational(j.at("y").get<std::string>()));
}

Json tree_to_json(const FiniteMetricTree& t) {
  Json j;
  j["format"] = "csst-tree/1";
  Json vertices = Json::array();
  for (VertexId v = 0; v < t.size(); ++v) {
    Json entry{{"id", t.name(v)}};
    if (t.position(v)) entry["position"] = point_to_json(*t.position(v));
    vertices.push_back(std::move(entry));
  }
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const auto& e : t.edges()) {
    edges.push_back(Json{{"a", t.name(e.a)}, {"b", t.name(e.b)}, {"length", to_string(e.length)}});
  }
  j["edges"] = std::move(edges);
  return j;
}

FiniteMetricTree tree_from_json(const Json& j) {
  try {
    std::vector<std::pair<std::int64_t, std::optional<Point>>> raw;
    for (const auto& v : j.at("vertices")) {
      std::optional<Point> pos;
      if (v.contains("position")) pos = point_from_json(v.at("position"));
      raw.emplace_back(v.at("id").get<std::int64_t>(), std::move(pos));
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::int64_t> names;
    std::vector<std::optional<Point>> positions;
    for (auto& [id, pos] : raw) {
      names.push_back(id);
      positions.push_back(std::move(pos));
    }
    auto index = [&](std::int64_t name) {
      auto it = std::lower_bound(names.begin(), names.end(), name);
      if (it == names.end() || *it != name) throw Error(ErrorCode::UnknownVertex, "edge uses unknown vertex " + std::to_string(name));
      return static_cast<VertexId>(it - names.begin());
    };
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({index(e.at("a").get<std::int64_t>()), index(e.at("b").get<std::int64_t>()),
                       parse_rational(e.at("length").get<std::string>())});
    }
    const std::size_t n = names.size();
    return FiniteMetricTree(n, std::move(edges), std::move(positions), std::move(names));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("tree JSON: ") + ex.what());
  }
}

Json decomposition_to_json(const Decomposition& d, bool embed_tree) {
  const FiniteMetricTree* t = d.tree.get();
  auto name = [&](VertexId v) { return t ? t->name(v) : static_cast<std::int64_t>(v); };
  Json j;
  j["format"] = "csst-certificate/1";
  j["alphabet"] = d.alphabet;
  j["depth"] = d.depth;
  j["provenance"] = Json{{"tree_hash", d.provenance.tree_hash},
                         {"mode", d.provenance.mode},
                         {"parameters", d.provenance.parameters},
                         {"tie_break", d.provenance.tie_break}};
  Json leaves = Json::array();
  for (VertexId v : d.normalized_leaves) leaves.push_back(name(v));
  j["normalized_leaves"] = std::move(leaves);
  Json levels = Json::array();
  for (const auto& level : d.levels) {
    Json tiles = Json::array();
    for (const auto& tile : level) {
      Json tj;
      tj["level"] = tile.level;
      tj["label"] = label_or_root(tile.label);
      tj["kind"] = std::string(to_string(tile.kind));
      Json marked = Json::array();
      for (const auto& m : tile.marked) {
        Json mj = vertex_ref(t, m.vertex);
        mj["sign"] = std::string(1, to_char(m.sign));
        marked.push_back(std::move(mj));
      }
      tj["marked"] = std::move(marked);
      tj["chosen_point"] = tile.chosen ? vertex_ref(t, *tile.chosen) : Json(nullptr);
      tj["diameter"] = to_string(tile.diameter);
      Json inter = Json::array();
      for (const auto& rec : tile.intersections) {
        inter.push_back(Json{{"other_label", label_or_root(rec.other_label)},
                             {"vertex", name(rec.vertex)},
                             {"my_sign", opt_sign_json(rec.my_sign)},
                             {"other_sign", opt_sign_json(rec.other_sign)}});
      }
      tj["intersections"] = std::move(inter);
      if (!tile.terminal_reason.empty()) tj["terminal_reason"] = tile.terminal_reason;
      if (embed_tree && t) {
        Json vs = Json::array();
        for (VertexId v : tile.vertices) vs.push_back(name(v));
        tj["vertices"] = std::move(vs);
      }
      tiles.push_back(std::move(tj));
    }
    levels.push_back(std::move(tiles));
  }
  j["levels"] = std::move(levels);
  if (embed_tree && t) j["tree"] = tree_to_json(*t);
  return j;
}

Decomposition decomposition_from_json(const Json& j) {
  try {
    Decomposition d;
    d.alphabet = j.at("alphabet").get<int>();
    d.depth = j.at("depth").get<std::size_t>();
    const auto& p = j.at("provenance");
    d.provenance = {p.at("tree_hash").get<std::string>(), p.at("mode").get<std::string>(),
                    p.at("parameters").get<std::string>(), p.at("tie_break").get<std::string>()};
    if (j.contains("tree")) d.tree = std::make_shared<const FiniteMetricTree>(tree_from_json(j.at("tree")));
    const FiniteMetricTree* t = d.tree.get();
    auto id = [&](const Json& v) -> VertexId {
      const auto name = v.get<std::int64_t>();
      if (!t) {
        if (name < 0) throw Error(ErrorCode::UnknownVertex, "negative vertex id");
        return static_cast<VertexId>(name);
      }
      const auto found = t->vertex_named(name);
      if (!found) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(name) + " not in embedded tree");
      return *found;
    };
    for (const auto& v : j.at("normalized_leaves")) d.normalized_leaves.push_back(id(v));
    for (const auto& level : j.at("levels")) {
      std::vector<Tile> tiles;
      for (const auto& tj : level) {
        Tile tile;
        tile.level = tj.at("level").get<std::size_t>();
        tile.label = parse_label(tj.at("label"), d.alphabet);
        tile.kind = parse_tile_kind(tj.at("kind").get<std::string>());
        for (const auto& m : tj.at("marked")) {
          tile.marked.push_back({id(m.at("vertex")), parse_sign(m.at("sign").get<std::string>().at(0))});
        }
        if (!tj.at("chosen_point").is_null()) tile.chosen = id(tj.at("chosen_point").at("vertex"));
        tile.diameter = parse_rational(tj.at("diameter").get<std::string>());
        for (const auto& r : tj.at("intersections")) {
          tile.intersections.push_back({parse_label(r.at("other_label"), d.alphabet), id(r.at("vertex")),
                                        opt_sign(r.at("my_sign")), opt_sign(r.at("other_sign"))});
        }
        if (tj.contains("terminal_reason")) tile.terminal_reason = tj.at("terminal_reason").get<std::string>();
        if (tj.contains("vertices")) {
          for (const auto& v : tj.at("vertices")) tile.vertices.push_back(id(v));
          std::sort(tile.vertices.begin(), tile.vertices.end());
        }
        tiles.push_back(std::move(tile));
      }
      std::sort(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) { return a.label < b.label; });
      d.levels.push_back(std::move(tiles));
    }
    return d;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("certificate JSON: ") + ex.what());
  }
}

Json match_report_to_json(const MatchReport& r) {
  auto list = [](const std::vector<MatchViolation>& v) {
    Json out = Json::array();
    for (const auto& x : v) {
      out.push_back(Json{{"label", x.label.str()}, {"other_label", x.other_label.str()}, {"detail", x.detail}});
    }
    return out;
  };
  return Json{{"depth", r.depth}, {"iff1", list(r.iff1)}, {"iff2", list(r.iff2)}, {"pass", r.pass}};
}

Json correspondence_to_json(const Correspondence& c) {
  const FiniteMetricTree* tt = c.t ? c.t->tree.get() : nullptr;
  const FiniteMetricTree* st = c.s ? c.s->tree.get() : nullptr;
  Json j;
  j["format"] = "csst-correspondence/1";
  j["effective_depth"] = c.effective_depth;
  Json pairs = Json::array();
  for (const auto& p : c.chosen) {
    pairs.push_back(Json{{"label", p.label.str()}, {"t_point", vertex_ref(tt, p.t_vertex)},
                         {"s_point", vertex_ref(st, p.s_vertex)}});
  }
  j["pairs"] = std::move(pairs);
  Json leaves = Json::array();
  for (const auto& l : c.leaves) {
    leaves.push_back(Json{{"label", l.label.str()}, {"sign", std::string(1, to_char(l.sign))},
                          {"t_point", vertex_ref(tt, l.t_vertex)}, {"s_point", vertex_ref(st, l.s_vertex)}});
  }
  j["leaves"] = std::move(leaves);
  Json modulus = Json::array();
  for (const auto& m : c.modulus) {
    modulus.push_back(Json{{"level", m.level},
                           {"t_max_diameter", to_string(m.t_max_diameter)},
                           {"s_max_diameter", to_string(m.s_max_diameter)},
                           {"t_max_decimal", to_decimal(m.t_max_diameter)},
                           {"s_max_decimal", to_decimal(m.s_max_diameter)}});
  }
  j["modulus"] = std::move(modulus);
  bool any_chain = false;
  Json chains = Json::array();
  for (const auto& chain : c.normalized_chains) {
    Json cj = Json::array();
    for (const auto& u : chain) cj.push_back(u.str());
    any_chain = any_chain || !chain.empty();
    chains.push_back(std::move(cj));
  }
  if (any_chain) j["normalized_chains"] = std::move(chains);
  return j;
}

Json tile_corners_to_json(std::size_t n) {
  Json tiles = Json::object();
  for (const auto& u : all_words(n)) {
    const TileCorners c = tile_corners(u);
    Json marked = Json::array();
    for (const auto* sc : {c.minus ? &*c.minus : nullptr, c.plus ? &*c.plus : nullptr}) {
      if (sc) marked.push_back(Json{{"point", point_to_json(sc->point)}, {"sign", std::string(1, sc->sign)}});
    }
    tiles[u.str()] = Json{{"center", point_to_json(c.center)}, {"marked", std::move(marked)}};
  }
  return Json{{"format", "csst-tile-corners/1"}, {"n", n}, {"tiles", std::move(tiles)}};
}

std::string svg_segments(const std::vector<Segment>& segments, std::size_t n) {
  std::ostringstream out;
  out << svg_header();
  const double width = 40.0 * std::ldexp(1.0, -static_cast<int>(n));
  out << "<g stroke=\"black\" stroke-width=\"" << num(width) << "\" stroke-linecap=\"round\">\n";
  for (const auto& s : segments) {
    out << "<line x1=\"" << num(sx(s.a)) << "\" y1=\"" << num(sy(s.a)) << "\" x2=\"" << num(sx(s.b)) << "\" y2=\""
        << num(sy(s.b)) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string svg_polygons(const std::vector<HullPolygon>& polygons, std::size_t n) {
  std::ostringstream out;
  out << svg_header();
  const double width = 8.0 * std::ldexp(1.0, -static_cast<int>(n));
  out << "<g fill=\"#3060a0\" fill-opacity=\"0.35\" stroke=\"#203050\" stroke-width=\"" << num(width) << "\">\n";
  for (const auto& poly : polygons) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
      out << (i ? " " : "") << num(sx(poly.vertices[i])) << "," << num(sy(poly.vertices[i]));
    }
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string svg_points(const std::vector<Point>& points) {
  std::ostringstream out;
  out << svg_header() << "<g fill=\"black\">\n";
  for (const auto& p : points) out << "<circle cx=\"" << num(sx(p)) << "\" cy=\"" << num(sy(p)) << "\" r=\"0.6\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string svg_polyline(const std::vector<Point>& vertices) {
  std::ostringstream out;
  out << svg_header() << "<polyline fill=\"none\" stroke=\"#b03020\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out << (i ? " " : "") << num(sx(vertices[i])) << "," << num(sy(vertices[i]));
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, path + ": " + ex.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace csst::io
