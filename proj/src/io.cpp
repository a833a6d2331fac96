#include "mgs/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mgs {
namespace io {

using nlohmann::json;

namespace {

json read_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON document");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

}  // namespace

MetricGraphModel parse_graph(const std::string& text) {
  json j = read_json(text);
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("graph document needs 'vertices' and 'edges'");
  reject_unknown(j, {"vertices", "edges"}, "graph document");

  std::vector<VertexId> vs;
  for (const json& v : j["vertices"]) {
    if (!v.is_number_integer()) throw ParseError("vertex ids must be integers");
    vs.push_back(v.get<VertexId>());
  }
  std::vector<EdgeSpec> es;
  for (const json& e : j["edges"]) {
    if (!e.is_object()) throw ParseError("each edge must be an object");
    reject_unknown(e, {"id", "u", "v", "length"}, "edge record");
    for (const char* k : {"id", "u", "v", "length"})
      if (!e.contains(k)) throw ParseError(std::string("edge record missing '") + k + "'");
    es.push_back({e["id"].get<EdgeId>(), e["u"].get<VertexId>(), e["v"].get<VertexId>(),
                  e["length"].get<double>()});
  }
  return MetricGraphModel::build(vs, es);
}

MetricGraphModel load_graph(const std::string& path) { return parse_graph(slurp(path)); }

DiscreteMeasure parse_measure(const std::string& text, const MetricGraphModel& model) {
  json j = read_json(text);
  if (!j.is_object() || !j.contains("atoms"))
    throw ParseError("measure document needs 'atoms'");
  reject_unknown(j, {"atoms", "normalize"}, "measure document");

  std::vector<DiscreteMeasure::Atom> atoms;
  for (const json& a : j["atoms"]) {
    if (!a.is_object() || !a.contains("mass")) throw ParseError("atom record needs 'mass'");
    GraphPoint p;
    if (a.contains("vertex")) {
      reject_unknown(a, {"vertex", "mass"}, "atom record");
      p = GraphPoint::at_vertex(a["vertex"].get<VertexId>());
    } else {
      reject_unknown(a, {"edge", "offset", "mass"}, "atom record");
      if (!a.contains("edge") || !a.contains("offset"))
        throw ParseError("atom record needs 'edge' and 'offset' (or 'vertex')");
      p = GraphPoint::on_edge(a["edge"].get<EdgeId>(), a["offset"].get<double>());
    }
    atoms.push_back({p, a["mass"].get<double>()});
  }
  DiscreteMeasure mu(model, std::move(atoms));
  if (j.value("normalize", false)) mu = mu.normalized(model);
  return mu;
}

DiscreteMeasure load_measure(const std::string& path, const MetricGraphModel& model) {
  return parse_measure(slurp(path), model);
}

GraphPoint parse_point(const std::string& text, const MetricGraphModel& model) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("point '" + text + "' must be 'edgeId:offset' or 'v:vertexId'");
  std::string head = text.substr(0, colon), tail = text.substr(colon + 1);
  try {
    if (head == "v") return model.canonicalize(GraphPoint::at_vertex(std::stoi(tail)));
    return model.canonicalize(GraphPoint::on_edge(std::stoi(head), std::stod(tail)));
  } catch (const std::invalid_argument&) {
    throw ParseError("cannot parse point '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("cannot parse point '" + text + "'");
  }
}

std::string format_human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_roundtrip(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return format_human(v);
  return std::string(buf, end);
}

}  // namespace io
}  // namespace mgs
