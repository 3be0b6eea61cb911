#pragma once

// JSON and SVG formats shared by the CLI. Rationals are written as "p/q"
// strings; vertices are referred to by their names.

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "csst/decomposer.hpp"
#include "csst/homeo_matcher.hpp"
#include "csst/metric_tree.hpp"
#include "csst/planar_ifs.hpp"

namespace csst::io {

using Json = nlohmann::json;

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

/// {"format": "csst-tree/1", "vertices": [{"id", "position"?}], "edges": [{"a", "b", "length"}]}
Json tree_to_json(const FiniteMetricTree& t);
FiniteMetricTree tree_from_json(const Json& j);

/// Certificate: {"format": "csst-certificate/1", "alphabet", "depth", "provenance",
/// "normalized_leaves", "levels": [[tile]], "tree"?}. Tiles follow
/// {level, label, kind, marked: [{vertex, sign}], chosen_point, diameter,
///  intersections: [{other_label, vertex, my_sign, other_sign}], vertices?}.
Json decomposition_to_json(const Decomposition& d, bool embed_tree = true);
Decomposition decomposition_from_json(const Json& j);

Json match_report_to_json(const MatchReport& r);

/// {"effective_depth", "pairs": [{label, t_point, s_point}], "leaves", "modulus", "normalized_chains"?}
Json correspondence_to_json(const Correspondence& c);

/// Tiles of level n with center and signed corners.
Json tile_corners_to_json(std::size_t n);

/// Segments of J_n, y flipped, stroke width proportional to 2^-n.
std::string svg_segments(const std::vector<Segment>& segments, std::size_t n);
std::string svg_polygons(const std::vector<HullPolygon>& polygons, std::size_t n);
std::string svg_points(const std::vector<Point>& points);
std::string svg_polyline(const std::vector<Point>& vertices);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace csst::io
