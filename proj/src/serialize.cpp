#include "geofix/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "geofix/errors.hpp"

namespace geofix {

namespace {

void dump_canonical(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) throw DomainError("canonical JSON cannot hold non-finite numbers");
      if (v == 0.0) v = 0.0;  // normalize -0
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      return;
    }
    case json::value_t::string:
      out += json(j.get<std::string>()).dump();
      return;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_canonical(item, out);
      }
      out += ']';
      return;
    }
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate sorted
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_canonical(it.value(), out);
      }
      out += '}';
      return;
    }
    default:
      throw DomainError("unsupported JSON value in canonical dump");
  }
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  dump_canonical(j, out);
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(const json& j) {
  std::uint64_t h = fnv1a64(canonical_dump(j));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json point_to_json(const Point& p) {
  return std::visit(
      [](const auto& q) -> json {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, VecPoint>) {
          return json{{"kind", "vec"}, {"coords", q.x}};
        } else if constexpr (std::is_same_v<T, DiskPoint>) {
          return json{{"kind", "disk"}, {"u", q.u}, {"v", q.v}};
        } else {
          return json{{"kind", "tree"}, {"edge", q.edge}, {"offset", q.offset}};
        }
      },
      p);
}

Point point_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "vec") return VecPoint{j.at("coords").get<std::vector<double>>()};
  if (kind == "disk") return DiskPoint{j.at("u").get<double>(), j.at("v").get<double>()};
  if (kind == "tree") return TreePoint{j.at("edge").get<int>(), j.at("offset").get<double>()};
  throw ConfigError("unknown point kind: " + kind);
}

json tree_to_json(const MetricTree& t) {
  json vertices = json::array();
  for (int v = 0; v < t.vertex_count(); ++v) vertices.push_back(t.vertex_name(v));
  json edges = json::array();
  for (int e = 0; e < t.edge_count(); ++e) {
    const auto& ed = t.edge(e);
    edges.push_back(json{{"ends", {t.vertex_name(ed.u), t.vertex_name(ed.v)}},
                         {"length", ed.length}});
  }
  return json{{"vertices", vertices}, {"edges", edges}};
}

MetricTree tree_from_json(const json& j) {
  auto names = j.at("vertices").get<std::vector<std::string>>();
  std::vector<MetricTree::Edge> edges;
  auto id_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return static_cast<int>(i);
    }
    throw ConfigError("edge references unknown vertex: " + name);
  };
  for (const auto& e : j.at("edges")) {
    const auto& ends = e.at("ends");
    edges.push_back(MetricTree::Edge{id_of(ends.at(0).get<std::string>()),
                                     id_of(ends.at(1).get<std::string>()),
                                     e.at("length").get<double>()});
  }
  return MetricTree(std::move(names), std::move(edges));
}

json space_to_json(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::Euclidean:
      return json{{"kind", "euclidean"}, {"dim", s.dim()}};
    case SpaceKind::PoincareDisk:
      return json{{"kind", "disk"}};
    case SpaceKind::Lp:
      return json{{"kind", "lp"}, {"p", s.p_exponent()}, {"dim", s.dim()}};
    case SpaceKind::MetricTree:
      return json{{"kind", "tree"}, {"tree", tree_to_json(s.tree())}};
  }
  throw DomainError("unreachable space kind");
}

Space space_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") return Space::euclidean(j.at("dim").get<int>());
  if (kind == "disk") return Space::poincare_disk();
  if (kind == "lp") return Space::lp(j.at("p").get<double>(), j.at("dim").get<int>());
  if (kind == "tree") {
    if (j.contains("file")) {
      std::ifstream in(j.at("file").get<std::string>());
      if (!in) throw ConfigError("cannot open tree file: " + j.at("file").get<std::string>());
      json tj = json::parse(in);
      return Space::metric_tree(tree_from_json(tj));
    }
    return Space::metric_tree(tree_from_json(j.at("tree")));
  }
  throw ConfigError("unknown space kind: " + kind);
}

Space parse_space_spec(const std::string& spec) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      std::size_t next = s.find(sep, pos);
      parts.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return parts;
  };
  auto parts = split(spec, ':');
  try {
    if (parts[0] == "euclidean" && parts.size() == 2) return Space::euclidean(std::stoi(parts[1]));
    if (parts[0] == "disk" && parts.size() == 1) return Space::poincare_disk();
    if (parts[0] == "lp" && parts.size() == 3) {
      return Space::lp(std::stod(parts[1]), std::stoi(parts[2]));
    }
    if (parts[0] == "tree" && parts.size() >= 2) {
      std::string path = spec.substr(5);
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open tree file: " + path);
      return Space::metric_tree(tree_from_json(json::parse(in)));
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed space spec: " + spec);
  } catch (const std::out_of_range&) {
    throw ConfigError("malformed space spec: " + spec);
  }
  throw ConfigError("unknown space spec: " + spec +
                    " (expected euclidean:<dim>, disk, lp:<p>:<dim>, tree:<file>)");
}

json set_to_json(const Space& space, const ConvexSet& set) {
  return std::visit(
      [&](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return json{{"type", "ball"}, {"center", point_to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return json{{"type", "half-space"}, {"normal", s.normal}, {"offset", s.offset}};
        } else if constexpr (std::is_same_v<T, Segment>) {
          return json{{"type", "segment"}, {"a", point_to_json(s.a)}, {"b", point_to_json(s.b)}};
        } else {
          json names = json::array();
          for (int v : s.vertices) names.push_back(space.tree().vertex_name(v));
          return json{{"type", "subtree"}, {"vertices", names}};
        }
      },
      set);
}

ConvexSet set_from_json(const Space& space, const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ball") {
    return Ball{point_from_json(j.at("center")), j.at("radius").get<double>()};
  }
  if (type == "half-space") {
    return HalfSpace{j.at("normal").get<std::vector<double>>(), j.at("offset").get<double>()};
  }
  if (type == "segment") {
    return Segment{point_from_json(j.at("a")), point_from_json(j.at("b"))};
  }
  if (type == "subtree") {
    Subtree st;
    for (const auto& name : j.at("vertices")) {
      st.vertices.push_back(space.tree().vertex_id(name.get<std::string>()));
    }
    return st;
  }
  throw ConfigError("unknown set type: " + type);
}

json mapping_to_json(const Space& space, const Mapping& m) {
  return std::visit(
      [&](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return json{{"type", "identity"}};
        } else if constexpr (std::is_same_v<T, ProjectionMap>) {
          return json{{"type", "projection"}, {"set", set_to_json(space, node.set)}};
        } else if constexpr (std::is_same_v<T, AveragedMap>) {
          return json{{"type", "averaged"},
                      {"base", mapping_to_json(space, *node.base)},
                      {"lambda", node.lambda}};
        } else if constexpr (std::is_same_v<T, CompositeMap>) {
          json retr = json::array();
          for (const auto& r : node.retractions) retr.push_back(mapping_to_json(space, *r));
          return json{{"type", "composite"},
                      {"retractions", retr},
                      {"lambdas", node.lambdas},
                      {"weights", node.weights}};
        } else if constexpr (std::is_same_v<T, ScaleMap>) {
          return json{{"type", "scale"}, {"factor", node.factor}, {"anchor", point_to_json(node.anchor)}};
        } else {
          return json{{"type", "rotation"}, {"angle", node.angle}};
        }
      },
      m.node());
}

Mapping mapping_from_json(const Space& space, const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "identity") return identity_map();
  if (type == "projection") return projection_map(set_from_json(space, j.at("set")));
  if (type == "averaged") {
    return averaged_map(mapping_from_json(space, j.at("base")), j.at("lambda").get<double>());
  }
  if (type == "composite") {
    std::vector<Mapping> retr;
    for (const auto& r : j.at("retractions")) retr.push_back(mapping_from_json(space, r));
    return composite_map(std::move(retr), j.at("lambdas").get<std::vector<double>>(),
                         j.at("weights").get<std::vector<double>>());
  }
  if (type == "scale") {
    return scale_map(j.at("factor").get<double>(), point_from_json(j.at("anchor")));
  }
  if (type == "rotation") return rotation_map(j.at("angle").get<double>());
  throw ConfigError("unknown mapping type: " + type);
}

json check_report_to_json(const CheckReport& r) {
  json witness = json::array();
  for (const auto& p : r.witness) witness.push_back(point_to_json(p));
  return json{{"property", property_name(r.property)},
              {"samples", r.samples_tested},
              {"max_violation", r.max_violation},
              {"tolerance", r.tolerance},
              {"passed", r.passed},
              {"witness", witness}};
}

json extended_count_to_json(const ExtendedCount& c) {
  if (c.saturated()) {
    return json{{"saturated", true}, {"log10_magnitude", c.log10_magnitude}};
  }
  return json{{"value", c.value->to_decimal()}};
}

json certificate_to_json(const RegularityCertificate& c) {
  json j{{"epsilon", c.epsilon},
         {"formula", rate_formula_name(c.formula)},
         {"bound", extended_count_to_json(c.bound)},
         {"passes", c.passes}};
  if (c.observed_index) {
    j["observed_index"] = *c.observed_index;
  } else {
    j["observed_index"] = nullptr;
  }
  return j;
}

json trace_to_json(const OrbitTrace& t) {
  json points = json::array();
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    points.push_back(json{{"step", t.point_steps[i]}, {"point", point_to_json(t.points[i])}});
  }
  return json{{"scheme", scheme_name(t.scheme)},
              {"gaps", t.gaps},
              {"points", points},
              {"reached", t.reached},
              {"eps_stop", t.eps_stop},
              {"config_digest", t.config_digest}};
}

namespace {

void append_csv_number(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

std::string trace_to_csv(const OrbitTrace& t) {
  std::string out;
  bool tree = false;
  std::size_t coord_count = 0;
  if (!t.points.empty()) {
    if (const auto* v = std::get_if<VecPoint>(&t.points[0])) {
      coord_count = v->x.size();
      out = "n,gap";
      for (std::size_t i = 0; i < coord_count; ++i) out += ",x" + std::to_string(i);
    } else if (std::holds_alternative<DiskPoint>(t.points[0])) {
      coord_count = 2;
      out = "n,gap,u,v";
    } else {
      tree = true;
      out = "n,gap,edge,offset";
    }
  } else {
    out = "n,gap";
  }
  out += '\n';
  std::size_t next_stored = 0;
  for (std::size_t n = 0; n <= t.gaps.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    if (n < t.gaps.size()) append_csv_number(out, t.gaps[n]);
    while (next_stored < t.point_steps.size() &&
           t.point_steps[next_stored] < static_cast<std::int64_t>(n)) {
      ++next_stored;
    }
    if (next_stored < t.point_steps.size() &&
        t.point_steps[next_stored] == static_cast<std::int64_t>(n)) {
      const Point& p = t.points[next_stored];
      if (tree) {
        const auto& tp = std::get<TreePoint>(p);
        out += ',' + std::to_string(tp.edge) + ',';
        append_csv_number(out, tp.offset);
      } else if (const auto* v = std::get_if<VecPoint>(&p)) {
        for (double c : v->x) {
          out += ',';
          append_csv_number(out, c);
        }
      } else {
        const auto& dp = std::get<DiskPoint>(p);
        out += ',';
        append_csv_number(out, dp.u);
        out += ',';
        append_csv_number(out, dp.v);
      }
    } else if (coord_count > 0 || tree) {
      for (std::size_t i = 0; i < (tree ? 2 : coord_count); ++i) out += ',';
    }
    out += '\n';
  }
  return out;
}

}  // namespace geofix
