#include "csst/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "csst/crt_sampler.hpp"
#include "csst/decomposer.hpp"
#include "csst/geodesic.hpp"
#include "csst/homeo_matcher.hpp"
#include "csst/io.hpp"
#include "csst/planar_ifs.hpp"

namespace csst::cli {

namespace {

std::uint64_t default_seed() {
  if (const char* s = std::getenv("CSST_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "CSST_SEED is not an unsigned integer");
    }
  }
  return 1;
}

std::vector<std::int64_t> parse_names(const std::string& text, std::size_t count) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad vertex id '" + item + "'");
    }
  }
  if (out.size() != count) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(count) + " comma-separated vertex ids");
  }
  return out;
}

VertexId named(const FiniteMetricTree& t, std::int64_t name) {
  const auto v = t.vertex_named(name);
  if (!v) throw Error(ErrorCode::UnknownVertex, "no vertex with id " + std::to_string(name));
  return *v;
}

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "expected 'x,y', got '" + text + "'");
  return Point(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::string dump(const io::Json& j) { return j.dump(1) + "\n"; }

void print_modulus(std::ostream& out, const Correspondence& c) {
  out << "level  max diam T  max diam S\n";
  for (const auto& m : c.modulus) {
    out << m.level << "  " << to_decimal(m.t_max_diameter) << "  " << to_decimal(m.s_max_diameter) << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuum self-similar tree toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("csst ") + kVersion);

  std::size_t n = 0;
  std::string svg, tree_out, corners_out, json_out;

  auto* render_jn = app.add_subcommand("render-jn", "Segments of J_n");
  render_jn->add_option("--n", n, "Level")->required()->check(CLI::Range(0, 14));
  render_jn->add_option("--svg", svg, "SVG output");
  render_jn->add_option("--tree", tree_out, "Tree JSON output");
  render_jn->add_option("--corners", corners_out, "Tile corner JSON output");

  auto* render_kn = app.add_subcommand("render-kn", "Hull images K_n");
  render_kn->add_option("--n", n, "Level")->required()->check(CLI::Range(0, 10));
  render_kn->add_option("--svg", svg, "SVG output");

  std::string z0_text = "0,0";
  auto* render_cloud = app.add_subcommand("render-cloud", "Points f_w(z0), |w| = n");
  render_cloud->add_option("--n", n, "Level")->required()->check(CLI::Range(0, 12));
  render_cloud->add_option("--z0", z0_text, "Start point 'x,y' inside the hull")->capture_default_str();
  render_cloud->add_option("--svg", svg, "SVG output");

  std::string word_a, word_b;
  auto* dist = app.add_subcommand("dist", "Exact arc length between two addressed points");
  dist->add_option("a", word_a, "Word such as 1(2)")->required();
  dist->add_option("b", word_b, "Word such as (3)")->required();

  std::string eps_text = "1/64";
  auto* arc = app.add_subcommand("arc", "Polyline approximation of an arc");
  arc->add_option("a", word_a, "First word")->required();
  arc->add_option("b", word_b, "Second word")->required();
  arc->add_option("--eps", eps_text, "Hausdorff tolerance")->capture_default_str();
  arc->add_option("--svg", svg, "SVG output");
  arc->add_option("--json", json_out, "Vertex list JSON output");

  std::string tree_in, leaves_text, cert_out;
  std::size_t jn = 0, depth = 8, resolution = 2;
  int m = 3;
  double min_diam = 1e-3;
  bool no_vertices = false;
  auto* decompose_cmd = app.add_subcommand("decompose", "Signed-leaf decomposition of a tree");
  auto* tree_opt = decompose_cmd->add_option("--tree", tree_in, "Tree JSON input");
  auto* jn_opt = decompose_cmd->add_option("--jn", jn, "Use the tree J_n instead")->check(CLI::Range(1, 13));
  tree_opt->excludes(jn_opt);
  decompose_cmd->add_option("--m", m, "Branch valence")->capture_default_str();
  decompose_cmd->add_option("--depth", depth, "Maximal depth")->capture_default_str();
  decompose_cmd->add_option("--min-diam", min_diam, "Stop below this fraction of diam(T)")->capture_default_str();
  decompose_cmd->add_option("--normalized", leaves_text, "Leaf ids p1,p2,p3 for the normalized variant");
  decompose_cmd->add_option("--out", cert_out, "Certificate JSON output");
  decompose_cmd->add_flag("--no-vertices", no_vertices, "Omit tile vertex sets and the tree");

  auto* decompose_csst = app.add_subcommand("decompose-csst", "Closed-form decomposition of the CSST");
  decompose_csst->add_option("--n", n, "Depth")->required()->check(CLI::Range(0, 9));
  decompose_csst->add_option("--resolution", resolution, "Extra J levels for vertex sets")->capture_default_str();
  decompose_csst->add_option("--out", cert_out, "Certificate JSON output");
  decompose_csst->add_flag("--no-vertices", no_vertices, "Omit tile vertex sets and the tree");

  std::string cert_a, cert_b, corr_out, report_out;
  std::string flip_label;
  auto* match = app.add_subcommand("match", "Check two certificates and build the correspondence");
  match->add_option("a", cert_a, "First certificate")->required();
  match->add_option("b", cert_b, "Second certificate")->required();
  match->add_option("--depth", depth, "Depth to check")->required();
  match->add_option("--out", corr_out, "Correspondence JSON output");
  match->add_option("--report", report_out, "Match report JSON output");

  std::string tree_b, leaves_b;
  auto* match_norm = app.add_subcommand("match-normalized", "Normalized decompositions of two trees, matched");
  match_norm->add_option("--tree-a", tree_in, "First tree JSON")->required();
  match_norm->add_option("--leaves-a", leaves_text, "p1,p2,p3")->required();
  match_norm->add_option("--tree-b", tree_b, "Second tree JSON")->required();
  match_norm->add_option("--leaves-b", leaves_b, "q1,q2,q3")->required();
  match_norm->add_option("--depth", depth, "Depth")->required();
  match_norm->add_option("--out", corr_out, "Correspondence JSON output");

  std::size_t grid = 65536, marks = 2000;
  std::uint64_t seed = 0;
  std::string csv_out;
  auto* crt = app.add_subcommand("crt", "Random tree from a Brownian excursion, matched against the CSST");
  crt->add_option("--n", grid, "Grid size")->capture_default_str();
  crt->add_option("--marks", marks, "Number of marks")->capture_default_str();
  auto* seed_opt = crt->add_option("--seed", seed, "Seed (default: $CSST_SEED or 1)");
  crt->add_option("--depth", depth, "Decomposition depth")->capture_default_str();
  crt->add_option("--csv", csv_out, "Excursion CSV output");
  crt->add_option("--tree-out", tree_out, "Tree JSON output");
  crt->add_option("--cert", cert_out, "Certificate JSON output");
  crt->add_option("--out", corr_out, "Correspondence JSON output");

  auto* verify = app.add_subcommand("verify", "Check a certificate");
  verify->add_option("certificate", cert_a, "Certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == crt && seed_opt->count() == 0) seed = default_seed();
    std::string echo = sub->config_to_str(true, false);
    for (auto& ch : echo) {
      if (ch == '\n') ch = ' ';
    }
    err << "csst " << kVersion << " " << sub->get_name() << " " << echo << (sub == crt ? "seed=" + std::to_string(seed) : "")
        << "\n";

    if (sub == render_jn) {
      const auto segments = generate_Jn(n);
      out << "segments: " << segments.size() << "\n";
      out << "segment length: " << format_length(pow2(1 - static_cast<long>(n))) << "\n";
      if (!svg.empty()) io::write_text_file(svg, io::svg_segments(segments, n));
      if (!tree_out.empty()) io::write_text_file(tree_out, dump(io::tree_to_json(from_segments(segments))));
      if (!corners_out.empty()) io::write_text_file(corners_out, dump(io::tile_corners_to_json(n)));
    } else if (sub == render_kn) {
      const auto polys = generate_Kn(n);
      out << "polygons: " << polys.size() << "\n";
      if (!svg.empty()) io::write_text_file(svg, io::svg_polygons(polys, n));
    } else if (sub == render_cloud) {
      const auto points = sample_cloud(n, parse_point(z0_text));
      out << "points: " << points.size() << "\n";
      if (!svg.empty()) io::write_text_file(svg, io::svg_points(points));
    } else if (sub == dist) {
      out << format_length(rho(PeriodicWord::parse(word_a), PeriodicWord::parse(word_b))) << "\n";
    } else if (sub == arc) {
      const PeriodicWord a = PeriodicWord::parse(word_a), b = PeriodicWord::parse(word_b);
      const ArcPolyline poly = arc_polyline(a, b, parse_rational(eps_text));
      out << "arc length: " << format_length(rho(a, b)) << "\n";
      out << "polyline length: " << format_length(poly.polyline_length) << "\n";
      out << "uncovered tail: " << format_length(poly.exact_tail_bound) << "\n";
      out << "vertices: " << poly.vertices.size() << "\n";
      for (const auto& v : poly.vertices) out << "  " << to_string(v) << "\n";
      if (!svg.empty()) io::write_text_file(svg, io::svg_polyline(poly.vertices));
      if (!json_out.empty()) {
        io::Json vs = io::Json::array();
        for (const auto& v : poly.vertices) vs.push_back(io::point_to_json(v));
        io::write_text_file(json_out, dump(io::Json{{"vertices", vs},
                                                    {"polyline_length", to_string(poly.polyline_length)},
                                                    {"exact_tail_bound", to_string(poly.exact_tail_bound)}}));
      }
    } else if (sub == decompose_cmd) {
      std::shared_ptr<const FiniteMetricTree> tree;
      if (!tree_in.empty()) {
        tree = std::make_shared<const FiniteMetricTree>(io::tree_from_json(io::read_json_file(tree_in)));
      } else if (jn_opt->count() > 0) {
        tree = std::make_shared<const FiniteMetricTree>(from_segments(generate_Jn(jn)));
      } else {
        throw CLI::RequiredError("--tree or --jn");
      }
      const StopRule stop{depth, min_diam};
      Decomposition d;
      if (!leaves_text.empty()) {
        const auto p = parse_names(leaves_text, 3);
        d = decompose_normalized(tree, named(*tree, p[0]), named(*tree, p[1]), named(*tree, p[2]), stop);
      } else {
        d = decompose(tree, m, stop);
      }
      const VerifyReport report = verify_certificate(d);
      std::size_t complete = 0;
      try {
        complete = d.complete_depth();
      } catch (const Error&) {
      }
      out << "levels: " << d.levels.size() - 1 << "\n";
      out << "complete depth: " << complete << "\n";
      out << report.summary();
      if (!cert_out.empty()) io::write_text_file(cert_out, dump(io::decomposition_to_json(d, !no_vertices)));
      return report.pass() ? 0 : 1;
    } else if (sub == decompose_csst) {
      const Decomposition d = csst_reference_decomposition(n, resolution);
      const VerifyReport report = verify_certificate(d);
      out << report.summary();
      if (!cert_out.empty()) io::write_text_file(cert_out, dump(io::decomposition_to_json(d, !no_vertices)));
      return report.pass() ? 0 : 1;
    } else if (sub == match) {
      auto a = std::make_shared<const Decomposition>(io::decomposition_from_json(io::read_json_file(cert_a)));
      auto b = std::make_shared<const Decomposition>(io::decomposition_from_json(io::read_json_file(cert_b)));
      const MatchReport report = check_matching(*a, *b, depth);
      out << "depth: " << report.depth << "\n";
      out << "iff1 violations: " << report.iff1.size() << "\n";
      out << "iff2 violations: " << report.iff2.size() << "\n";
      for (const auto* list : {&report.iff1, &report.iff2}) {
        for (std::size_t i = 0; i < std::min<std::size_t>(list->size(), 10); ++i) {
          const auto& v = (*list)[i];
          out << "  " << v.label.str() << (v.other_label.empty() ? "" : " & " + v.other_label.str()) << ": "
              << v.detail << "\n";
        }
      }
      out << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
      if (!report_out.empty()) io::write_text_file(report_out, dump(io::match_report_to_json(report)));
      if (!report.pass) return 1;
      const Correspondence c = build_correspondence(a, b, depth);
      out << "pairs: " << c.chosen.size() << "\n";
      print_modulus(out, c);
      if (!corr_out.empty()) io::write_text_file(corr_out, dump(io::correspondence_to_json(c)));
    } else if (sub == match_norm) {
      auto ta = std::make_shared<const FiniteMetricTree>(io::tree_from_json(io::read_json_file(tree_in)));
      auto tb = std::make_shared<const FiniteMetricTree>(io::tree_from_json(io::read_json_file(tree_b)));
      const auto p = parse_names(leaves_text, 3);
      const auto q = parse_names(leaves_b, 3);
      const Correspondence c = match_normalized(ta, {named(*ta, p[0]), named(*ta, p[1]), named(*ta, p[2])}, tb,
                                                {named(*tb, q[0]), named(*tb, q[1]), named(*tb, q[2])}, depth);
      out << "effective depth: " << c.effective_depth << "\n";
      out << "pairs: " << c.chosen.size() << "\n";
      for (std::size_t k = 0; k < 3; ++k) {
        out << "chain p" << k + 1 << ":";
        for (const auto& u : c.normalized_chains[k]) out << " " << u.str();
        out << "\n";
      }
      print_modulus(out, c);
      if (!corr_out.empty()) io::write_text_file(corr_out, dump(io::correspondence_to_json(c)));
    } else if (sub == crt) {
      const CrtSample sample = crt_tree(grid, marks, seed);
      out << "vertices: " << sample.tree->size() << "\n";
      out << "valence histogram:";
      for (std::size_t v = 1; v < sample.histogram.size(); ++v) out << " " << v << ":" << sample.histogram[v];
      out << "\n";
      for (const auto& line : sample.tie_log) out << "tie: " << line << "\n";
      if (!csv_out.empty()) {
        std::ostringstream csv;
        write_excursion_csv(csv, sample.excursion);
        io::write_text_file(csv_out, csv.str());
      }
      if (!tree_out.empty()) io::write_text_file(tree_out, dump(io::tree_to_json(*sample.tree)));
      auto d = std::make_shared<const Decomposition>(decompose(sample.tree, 3, StopRule{depth, 0.0}));
      auto ref = std::make_shared<const Decomposition>(csst_reference_decomposition(depth));
      if (!cert_out.empty()) io::write_text_file(cert_out, dump(io::decomposition_to_json(*d)));
      const std::size_t reached = d->complete_depth();
      const Correspondence c = build_correspondence(d, ref, depth);
      out << "complete depth: " << reached << " (requested " << depth << ")\n";
      out << "matched depth: " << c.effective_depth << ", pairs: " << c.chosen.size() << "\n";
      print_modulus(out, c);
      if (!corr_out.empty()) io::write_text_file(corr_out, dump(io::correspondence_to_json(c)));
      if (reached < depth) {
        err << "error: DepthUnavailable: the sample supports depth " << reached << ", not " << depth << "\n";
        return 1;
      }
    } else if (sub == verify) {
      const Decomposition d = io::decomposition_from_json(io::read_json_file(cert_a));
      const VerifyReport report = verify_certificate(d);
      out << report.summary();
      return report.pass() ? 0 : 1;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace csst::cli
