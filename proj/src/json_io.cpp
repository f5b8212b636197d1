#include "curvflow/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "curvflow/error.hpp"

namespace curvflow {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
}

double finite_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + " must be a number");
  return value.get<double>();
}

}  // namespace

Graph parse_graph(std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("graph file must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw ParseError("/vertices must be an array of strings");
  }
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
    const json& v = doc["vertices"][i];
    if (!v.is_string()) throw ParseError("/vertices/" + std::to_string(i) + " must be a string");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const json& arr = doc["edges"];
    if (!arr.is_array()) throw ParseError("/edges must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "/edges/" + std::to_string(i);
      const json& e = arr[i];
      if (!e.is_object()) throw ParseError(where + " must be an object");
      for (const char* key : {"from", "to", "rate"}) {
        if (!e.contains(key)) throw ParseError(where + " is missing \"" + key + "\"");
      }
      if (!e["from"].is_string() || !e["to"].is_string()) {
        throw ParseError(where + " endpoints must be strings");
      }
      edges.push_back({e["from"].get<std::string>(), e["to"].get<std::string>(),
                       finite_number(e["rate"], where + "/rate")});
    }
  }
  return Graph(std::move(vertices), edges);
}

std::string serialize_graph(const Graph& g) {
  // ordered_json keeps "vertices" before "edges"
  nlohmann::ordered_json doc;
  doc["vertices"] = g.vertex_ids();
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::ordered_json item;
    item["from"] = e.from;
    item["to"] = e.to;
    item["rate"] = e.rate;
    doc["edges"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

VertexFunction parse_vertex_function(const Graph& g, std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("vertex function must be a JSON object");
  std::vector<double> values(g.size(), 0.0);
  std::vector<bool> seen(g.size(), false);
  for (const auto& [key, value] : doc.items()) {
    auto v = g.find(key);
    if (!v) throw ParseError("vertex function names unknown vertex '" + key + "'");
    values[*v] = finite_number(value, "/" + key);
    seen[*v] = true;
  }
  for (Vertex x = 0; x < g.size(); ++x) {
    if (!seen[x]) throw ParseError("vertex function has no value for '" + g.id(x) + "'");
  }
  return VertexFunction(std::move(values));
}

std::string serialize_vertex_function(const Graph& g, const VertexFunction& f) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (Vertex x = 0; x < g.size(); ++x) doc[g.id(x)] = f[x];
  return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace curvflow
