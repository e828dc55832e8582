#include "torusopt/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "torusopt/errors.hpp"

namespace torusopt {

using nlohmann::json;

namespace {

long long require_int(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError(std::string(where) + ": missing integer field \"" + key + "\"");
  return j[key].get<long long>();
}

}  // namespace

RawComplex parse_raw_complex(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("num_vertices") || !j["num_vertices"].is_number_integer())
    throw ParseError("missing integer field \"num_vertices\"");
  if (!j.contains("edges") || !j["edges"].is_array()) throw ParseError("missing array field \"edges\"");
  if (!j.contains("faces") || !j["faces"].is_array()) throw ParseError("missing array field \"faces\"");

  RawComplex raw;
  raw.num_vertices = j["num_vertices"].get<long long>();
  for (const json& je : j["edges"]) {
    if (!je.is_object()) throw ParseError("edges: entries must be objects");
    RawEdge e;
    e.id = require_int(je, "id", "edges");
    e.tail = require_int(je, "tail", "edges");
    e.head = require_int(je, "head", "edges");
    e.dx = require_int(je, "dx", "edges");
    e.dy = require_int(je, "dy", "edges");
    if (!je.contains("weight") || !je["weight"].is_number())
      throw ParseError("edges: missing numeric field \"weight\"");
    e.weight = je["weight"].get<Real>();
    raw.edges.push_back(e);
  }
  for (const json& jf : j["faces"]) {
    if (!jf.is_array()) throw ParseError("faces: entries must be arrays");
    std::vector<long long> face;
    for (const json& entry : jf) {
      if (!entry.is_number_integer()) throw ParseError("faces: entries must be integers");
      face.push_back(entry.get<long long>());
    }
    raw.faces.push_back(std::move(face));
  }
  return raw;
}

std::string write_complex_json(const ToroidalComplex& complex, const EdgeWeights& weights) {
  std::ostringstream os;
  os << "{\n  \"num_vertices\": " << complex.num_vertices << ",\n  \"edges\": [\n";
  for (int e = 0; e < complex.num_edges(); ++e) {
    const EdgeRecord& rec = complex.edges[static_cast<size_t>(e)];
    os << "    {\"id\": " << rec.id << ", \"tail\": " << rec.tail << ", \"head\": " << rec.head
       << ", \"dx\": " << rec.label.x() << ", \"dy\": " << rec.label.y()
       << ", \"weight\": " << format_real(weights.c[e]) << "}" << (e + 1 < complex.num_edges() ? "," : "")
       << "\n";
  }
  os << "  ],\n  \"faces\": [\n";
  for (int f = 0; f < complex.num_faces(); ++f) {
    os << "    [";
    const auto& face = complex.faces[static_cast<size_t>(f)];
    for (size_t i = 0; i < face.size(); ++i) {
      const int id = complex.edges[static_cast<size_t>(face[i].edge)].id;
      os << face[i].sign * (id + 1) << (i + 1 < face.size() ? ", " : "");
    }
    os << "]" << (f + 1 < complex.num_faces() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_real(Real value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace torusopt
