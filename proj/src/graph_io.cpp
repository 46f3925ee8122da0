#include "confstab/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "confstab/errors.hpp"

namespace confstab {

using nlohmann::json;

namespace {

json labels_to_json(const Graph& g) {
  json labels = json::object();
  if (!g.has_labels()) return labels;
  json vs = json::array();
  json es = json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (auto l = g.vertex_label(v)) vs.push_back({v, l->coordinate, l->copy});
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (auto l = g.edge_label(e)) es.push_back({e, l->coordinate, l->copy});
  }
  labels["vertices"] = std::move(vs);
  labels["edges"] = std::move(es);
  return labels;
}

GlueMap glue_from_json(const json& j) {
  GlueMap m;
  if (j.is_null()) return m;
  for (const auto& p : j.value("vertices", json::array())) m.vertices.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  for (const auto& p : j.value("edges", json::array())) m.edges.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  return m;
}

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::WedgeFI: return "wedge_fi";
    case FamilyKind::IntervalDelta: return "interval_delta";
    case FamilyKind::CircleLambda: return "circle_lambda";
  }
  return "?";
}

}  // namespace

json graph_to_json(const Graph& g) {
  json j;
  json vs = json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) vs.push_back(v);
  json es = json::array();
  for (const Edge& e : g.edges()) es.push_back({e.tail, e.head});
  j["vertices"] = std::move(vs);
  j["edges"] = std::move(es);
  j["basepoint"] = g.basepoint() ? json(*g.basepoint()) : json(nullptr);
  j["labels"] = labels_to_json(g);
  return j;
}

Graph graph_from_json(const json& j) {
  try {
    const auto& vs = j.at("vertices");
    Graph g;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].get<int>() != static_cast<int>(i)) {
        throw InvalidArgument("graph JSON: vertex ids must be 0, 1, ..., |V|-1 in order");
      }
      g.add_vertex();
    }
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("basepoint") && !j["basepoint"].is_null()) g.set_basepoint(j["basepoint"].get<int>());
    if (j.contains("labels")) {
      const auto& l = j["labels"];
      for (const auto& x : l.value("vertices", json::array())) {
        const int v = x.at(0).get<int>();
        if (!g.has_vertex(v)) throw InvalidArgument("graph JSON: label for missing vertex");
        g.set_vertex_label(v, SummandLabel{x.at(1).get<int>(), x.at(2).get<int>()});
      }
      for (const auto& x : l.value("edges", json::array())) {
        const int e = x.at(0).get<int>();
        if (!g.has_edge(e)) throw InvalidArgument("graph JSON: label for missing edge");
        g.set_edge_label(e, SummandLabel{x.at(1).get<int>(), x.at(2).get<int>()});
      }
    }
    return g;
  } catch (const json::exception& ex) {
    throw InvalidArgument(std::string("graph JSON: ") + ex.what());
  }
}

json family_to_json(const FamilyDescriptor& f) {
  json j;
  j["kind"] = kind_name(f.kind);
  j["base"] = graph_to_json(f.base);
  json ss = json::array();
  for (const Summand& s : f.summands) {
    json glue;
    glue["vertices"] = json::array();
    glue["edges"] = json::array();
    for (const auto& [a, b] : s.glue.vertices) glue["vertices"].push_back({a, b});
    for (const auto& [a, b] : s.glue.edges) glue["edges"].push_back({a, b});
    ss.push_back({{"graph", graph_to_json(s.graph)}, {"glue", glue}});
  }
  j["summands"] = std::move(ss);
  return j;
}

FamilyDescriptor family_from_json(const json& j) {
  try {
    FamilyDescriptor f;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "wedge_fi") {
      f.kind = FamilyKind::WedgeFI;
    } else if (kind == "interval_delta") {
      f.kind = FamilyKind::IntervalDelta;
    } else if (kind == "circle_lambda") {
      f.kind = FamilyKind::CircleLambda;
    } else {
      throw InvalidArgument("family JSON: unknown kind '" + kind + "'");
    }
    if (j.contains("base")) f.base = graph_from_json(j["base"]);
    for (const auto& s : j.at("summands")) {
      f.summands.push_back({graph_from_json(s.at("graph")), glue_from_json(s.value("glue", json()))});
    }
    f.validate();
    return f;
  } catch (const json::exception& ex) {
    throw InvalidArgument(std::string("family JSON: ") + ex.what());
  }
}

std::string to_canonical_string(const json& j) { return j.dump(); }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw InvalidArgument(path.string() + ": " + ex.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace confstab
