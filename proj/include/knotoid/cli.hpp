// Command-line front end. Every verb wraps exactly one library operation;
// inputs come from stdin or a file and are auto-detected as paper syntax or
// JSON. Exit codes: 0 success, 1 validation/computation error, 2 usage error.

#ifndef KNOTOID_CLI_HPP_
#define KNOTOID_CLI_HPP_

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "knotoid/bracket.hpp"
#include "knotoid/lift.hpp"
#include "knotoid/planar.hpp"

namespace knotoid::cli {

namespace detail {

inline std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw MalformedSyntax("cannot open input: " + path);
    buf << f.rdbuf();
  }
  return buf.str();
}

inline bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (text[pos] == '{' || text[pos] == '[');
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSyntax(e.what());
  }
}

inline GeneralizedGaussCode load_ggc(const std::string& text) {
  if (looks_like_json(text)) return ggc_from_json(parse_json(text));
  return parse_ggc(text);
}

inline GaussCode load_gauss(const std::string& text, Kind kind) {
  if (looks_like_json(text)) return gauss_from_json(parse_json(text));
  return parse_gauss(text, kind);
}

/// Diagram verbs also accept a bare code, which gets realized.
inline PlanarDiagram load_diagram(const std::string& text, Kind kind) {
  if (looks_like_json(text)) {
    auto j = parse_json(text);
    if (j.contains("vertices")) return build_diagram(j);
    return realize_code(gauss_from_json(j));
  }
  return realize_code(parse_gauss(text, kind));
}

inline CutSystem load_cuts(const std::string& spec, const PlanarDiagram& d) {
  if (spec.empty() || spec == "auto") return auto_cuts(d);
  std::ifstream f(spec);
  if (!f) throw MalformedSyntax("cannot open cut system: " + spec);
  std::ostringstream buf;
  buf << f.rdbuf();
  auto cs = cuts_from_json(parse_json(buf.str()));
  if (!cuts_valid(d, cs))
    throw InvalidCutSystem("cut system does not fit the diagram");
  return cs;
}

inline void emit(std::ostream& out, const GaussCode& c, bool json) {
  if (json)
    out << to_json(c).dump() << "\n";
  else
    out << serialize(c) << "\n";
}

inline void emit(std::ostream& out, const GeneralizedGaussCode& c, bool json) {
  if (json)
    out << to_json(c).dump() << "\n";
  else
    out << serialize(c) << "\n";
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"combinatorial calculus of knotoids"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string format = "paper";
  std::string cut_spec = "auto";
  std::string kind_name = "knotoid";
  int max_crossings = kDefaultMaxCrossings;
  int edge = 0;
  int turns = 1;
  bool raw = false;

  auto add_common = [&](CLI::App* sub, bool takes_input = true) {
    if (takes_input) sub->add_option("input", input, "input file, - for stdin");
    sub->add_option("--format", format, "output format: paper|json")
        ->check(CLI::IsMember({"paper", "json"}));
    return sub;
  };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", kind_name, "code kind: knotoid|knot")
        ->check(CLI::IsMember({"knotoid", "knot"}));
    return sub;
  };
  auto add_cut = [&](CLI::App* sub) {
    sub->add_option("--cut", cut_spec, "cut system: auto or a JSON file");
    return sub;
  };

  add_kind(add_common(app.add_subcommand("parse", "canonicalize a code")));
  add_kind(add_common(app.add_subcommand("validate", "check a code")));
  for (const char* v : {"reverse", "mirror", "symmetric", "rotate"})
    add_common(app.add_subcommand(v, "apply the involution"));
  add_common(app.add_subcommand("product", "compose two knotoids, one per line"));
  add_common(app.add_subcommand("gauss", "Gauss code of a diagram"));
  add_cut(add_common(
      app.add_subcommand("ggc", "generalized Gauss code of a diagram")));
  add_common(app.add_subcommand("close-under", "underpass closure"));
  add_common(app.add_subcommand("close-over", "overpass closure"));
  add_common(app.add_subcommand("alpha", "cut a knot open along an edge"))
      ->add_option("--edge", edge, "edge to cut");
  add_common(app.add_subcommand("lift", "double branched cover of a gGC"));
  add_cut(add_common(
      app.add_subcommand("double", "annular double of a knotoid diagram")));
  add_cut(add_common(app.add_subcommand("winding", "winding number of the lift")));
  add_cut(add_common(
             app.add_subcommand("twist-embed", "re-embed the lift with full twists")))
      ->add_option("--turns", turns, "number of full twists");
  auto* br = add_kind(add_common(
      app.add_subcommand("bracket", "normalized Kauffman bracket")));
  br->add_option("--max-crossings", max_crossings, "state-sum size guard");
  br->add_flag("--raw", raw, "print the unnormalized bracket");
  add_kind(add_common(
      app.add_subcommand("certify", "bracket nontriviality certificate")))
      ->add_option("--max-crossings", max_crossings, "state-sum size guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  const bool json = format == "json";
  const Kind kind = kind_name == "knot" ? Kind::Knot : Kind::Knotoid;

  try {
    if (verb == "parse") {
      const auto text = detail::slurp(input, in);
      if (kind == Kind::Knot)
        detail::emit(out, canonicalize(detail::load_gauss(text, kind)), json);
      else
        detail::emit(out, canonicalize(detail::load_ggc(text)), json);
    } else if (verb == "validate") {
      const auto text = detail::slurp(input, in);
      if (kind == Kind::Knot)
        validate(detail::load_gauss(text, kind));
      else
        validate(detail::load_ggc(text));
      out << "ok\n";
    } else if (verb == "reverse" || verb == "mirror" || verb == "symmetric" ||
               verb == "rotate") {
      auto g = detail::load_ggc(detail::slurp(input, in));
      if (verb == "reverse") g = reverse_code(g);
      if (verb == "mirror") g = mirror_code(g);
      if (verb == "symmetric") g = symmetric_code(g);
      if (verb == "rotate") g = rotate_code(g);
      detail::emit(out, g, json);
    } else if (verb == "product") {
      std::istringstream lines(detail::slurp(input, in));
      std::string l1, l2;
      if (!std::getline(lines, l1) || !std::getline(lines, l2))
        throw MalformedSyntax("product expects two codes, one per line");
      detail::emit(out,
                   product_code(detail::load_gauss(l1, Kind::Knotoid),
                                detail::load_gauss(l2, Kind::Knotoid)),
                   json);
    } else if (verb == "gauss") {
      detail::emit(
          out, to_gauss(detail::load_diagram(detail::slurp(input, in), kind)),
          json);
    } else if (verb == "ggc") {
      auto d = detail::load_diagram(detail::slurp(input, in), Kind::Knotoid);
      detail::emit(out, to_ggc(d, detail::load_cuts(cut_spec, d)), json);
    } else if (verb == "close-under" || verb == "close-over") {
      auto d = detail::load_diagram(detail::slurp(input, in), Kind::Knotoid);
      detail::emit(
          out, to_gauss(verb == "close-under" ? close_under(d) : close_over(d)),
          json);
    } else if (verb == "alpha") {
      auto d = detail::load_diagram(detail::slurp(input, in), Kind::Knot);
      detail::emit(out, to_gauss(alpha_cut(d, edge)), json);
    } else if (verb == "lift") {
      detail::emit(out, lift_code(detail::load_ggc(detail::slurp(input, in))),
                   json);
    } else if (verb == "double") {
      auto d = detail::load_diagram(detail::slurp(input, in), Kind::Knotoid);
      out << annular_to_json(double_diagram(d, detail::load_cuts(cut_spec, d)))
                 .dump()
          << "\n";
    } else if (verb == "winding") {
      auto d = detail::load_diagram(detail::slurp(input, in), Kind::Knotoid);
      out << winding(double_diagram(d, detail::load_cuts(cut_spec, d))).value
          << "\n";
    } else if (verb == "twist-embed") {
      auto d = detail::load_diagram(detail::slurp(input, in), Kind::Knotoid);
      detail::emit(
          out,
          twist_embed(double_diagram(d, detail::load_cuts(cut_spec, d)), turns),
          json);
    } else if (verb == "bracket") {
      const auto text = detail::slurp(input, in);
      GaussCode c;
      if (detail::looks_like_json(text)) {
        auto j = detail::parse_json(text);
        c = j.contains("vertices") ? to_gauss(build_diagram(j))
                                   : gauss_from_json(j);
      } else {
        c = strip_cuts(parse_ggc(text));
        c.kind = kind;
        validate(c);
      }
      auto b = bracket(c, max_crossings);
      out << (raw ? b.raw : b.normalized).to_string() << "\n";
    } else if (verb == "certify") {
      auto cert = nontriviality_certificate(
          detail::load_gauss(detail::slurp(input, in), kind), max_crossings);
      out << (cert == Certificate::Nontrivial ? "nontrivial" : "inconclusive")
          << "\n";
    }
  } catch (const Error& e) {
    err << e.what() << "\n";  // what() already carries the error id
    return 1;
  }
  return 0;
}

}  // namespace knotoid::cli

#endif  // KNOTOID_CLI_HPP_
