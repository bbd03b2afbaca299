#pragma once

// Net documents (JSON in), geometry export (OBJ out), and verification
// reports. JSON output is canonical: sorted keys, 17-significant-digit
// floats, so golden files and byte-level comparisons are stable.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "holomin/planar_net.hpp"
#include "holomin/vec3.hpp"

namespace holomin {

using Json = nlohmann::json;

// --- canonical JSON ----------------------------------------------------------

namespace detail {

inline void appendCanonical(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate key-sorted
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        appendCanonical(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        appendCanonical(j[k], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) throw MeshError("non-finite number in document");
      if (v == 0.0) v = 0.0;  // canonicalize negative zero
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string canonicalDump(const Json& j) {
  std::string out;
  detail::appendCanonical(j, out);
  out += '\n';
  return out;
}

// --- net documents -----------------------------------------------------------

// Either a planar net (complex positions) or a spatial realization, with an
// optional real value per unordered edge (a quadratic differential or a
// labeling). Vertex ids are arbitrary but unique; edge keys are "min:max".
struct NetDocument {
  int version = 1;
  std::vector<int> ids;
  std::optional<PlanarNet> z;
  std::optional<std::vector<Vec3d>> p;
  std::vector<std::vector<int>> facesById;
  std::vector<std::tuple<int, int, double>> edgeTable;  // (min id, max id, value)
  Json meta = Json::object();
};

inline Json toJson(const NetDocument& doc) {
  Json j;
  j["version"] = doc.version;
  Json vertices = Json::array();
  for (size_t k = 0; k < doc.ids.size(); ++k) {
    Json v;
    v["id"] = doc.ids[k];
    if (doc.z) v["z"] = Json::array({(*doc.z)[k].real(), (*doc.z)[k].imag()});
    if (doc.p) v["p"] = Json::array({(*doc.p)[k].x, (*doc.p)[k].y, (*doc.p)[k].z});
    vertices.push_back(v);
  }
  j["vertices"] = vertices;
  j["faces"] = doc.facesById;
  if (!doc.edgeTable.empty()) {
    Json edges = Json::array();
    for (const auto& [a, b, value] : doc.edgeTable) {
      Json e;
      e["k"] = std::to_string(a) + ":" + std::to_string(b);
      e["q"] = value;
      edges.push_back(e);
    }
    j["edges"] = edges;
  }
  if (!doc.meta.empty()) j["meta"] = doc.meta;
  return j;
}

inline NetDocument netDocumentFromJson(const Json& j) {
  NetDocument doc;
  if (!j.is_object() || !j.contains("version") || !j.contains("vertices") || !j.contains("faces"))
    throw MeshError("net document must contain version, vertices, and faces");
  doc.version = j.at("version").get<int>();
  if (doc.version != 1) throw MeshError("unsupported net document version");
  bool sawZ = false, sawP = false;
  for (const Json& v : j.at("vertices")) {
    doc.ids.push_back(v.at("id").get<int>());
    if (v.contains("z")) {
      sawZ = true;
      if (!doc.z) doc.z.emplace();
      doc.z->push_back(Complex(v.at("z").at(0).get<double>(), v.at("z").at(1).get<double>()));
    }
    if (v.contains("p")) {
      sawP = true;
      if (!doc.p) doc.p.emplace();
      doc.p->push_back(Vec3d{v.at("p").at(0).get<double>(), v.at("p").at(1).get<double>(),
                             v.at("p").at(2).get<double>()});
    }
  }
  if (sawZ && sawP) throw MeshError("net document mixes planar and spatial positions");
  if (!sawZ && !sawP) throw MeshError("net document has no vertex positions");
  if ((doc.z && doc.z->size() != doc.ids.size()) || (doc.p && doc.p->size() != doc.ids.size()))
    throw MeshError("every vertex needs a position of the same kind");
  for (const Json& f : j.at("faces")) doc.facesById.push_back(f.get<std::vector<int>>());
  if (j.contains("edges")) {
    for (const Json& e : j.at("edges")) {
      const std::string key = e.at("k").get<std::string>();
      const size_t colon = key.find(':');
      if (colon == std::string::npos) throw MeshError("edge key must look like \"i:j\"");
      const int a = std::stoi(key.substr(0, colon));
      const int b = std::stoi(key.substr(colon + 1));
      if (a > b) throw MeshError("edge key must be ordered min:max, got " + key);
      doc.edgeTable.emplace_back(a, b, e.at("q").get<double>());
    }
  }
  if (j.contains("meta")) doc.meta = j.at("meta");
  return doc;
}

// A net document materialized against the mesh layer: dense mesh, positions,
// and the edge table pushed onto edge ids.
struct MaterializedNet {
  Mesh mesh;
  std::vector<int> ids;  // dense index -> original id
  std::optional<PlanarNet> z;
  std::optional<std::vector<Vec3d>> p;
  std::optional<QuadDiff> q;
  Json meta;
};

inline MaterializedNet materialize(const NetDocument& doc) {
  MaterializedNet net{buildMeshFromIds(doc.ids, doc.facesById).mesh, doc.ids, doc.z, doc.p,
                      std::nullopt, doc.meta};
  if (!doc.edgeTable.empty()) {
    std::unordered_map<int, int> toDense;
    for (size_t k = 0; k < doc.ids.size(); ++k) toDense[doc.ids[k]] = static_cast<int>(k);
    QuadDiff q(net.mesh);
    for (const auto& [a, b, value] : doc.edgeTable) {
      const auto ia = toDense.find(a), ib = toDense.find(b);
      if (ia == toDense.end() || ib == toDense.end())
        throw MeshError("edge table references unknown vertex id");
      const int e = net.mesh.edgeIndex(ia->second, ib->second);
      if (e < 0)
        throw MeshError("edge table key " + std::to_string(a) + ":" + std::to_string(b) +
                        " is not an edge of the mesh");
      q.values[static_cast<size_t>(e)] = value;
    }
    net.q = q;
  }
  return net;
}

// --- complex surface sidecar ---------------------------------------------------

// One complex 3-vector per face of the companion net document, in the same
// face order, based at baseFace = origin.
struct SurfaceDocument {
  int version = 1;
  int baseFace = 0;
  std::vector<Vec3c> F;
  Json meta = Json::object();
};

inline Json toJson(const SurfaceDocument& doc) {
  Json j;
  j["version"] = doc.version;
  j["type"] = "complex-surface";
  j["base_face"] = doc.baseFace;
  Json values = Json::array();
  for (const Vec3c& v : doc.F) {
    values.push_back(Json::array({Json::array({v.x.real(), v.x.imag()}),
                                  Json::array({v.y.real(), v.y.imag()}),
                                  Json::array({v.z.real(), v.z.imag()})}));
  }
  j["F"] = values;
  if (!doc.meta.empty()) j["meta"] = doc.meta;
  return j;
}

inline SurfaceDocument surfaceDocumentFromJson(const Json& j) {
  SurfaceDocument doc;
  if (!j.is_object() || j.value("type", "") != "complex-surface")
    throw MeshError("not a complex-surface document");
  doc.version = j.at("version").get<int>();
  doc.baseFace = j.at("base_face").get<int>();
  for (const Json& v : j.at("F")) {
    doc.F.push_back(Vec3c{Complex(v.at(0).at(0).get<double>(), v.at(0).at(1).get<double>()),
                          Complex(v.at(1).at(0).get<double>(), v.at(1).at(1).get<double>()),
                          Complex(v.at(2).at(0).get<double>(), v.at(2).at(1).get<double>())});
  }
  if (j.contains("meta")) doc.meta = j.at("meta");
  return doc;
}

// --- verification reports ------------------------------------------------------

struct CheckResult {
  std::string name;
  double maxResidual = 0.0;
  double tolerance = 0.0;
  std::string offender;  // worst element, e.g. "vertex 12"
  bool pass = false;
};

struct ReportDocument {
  std::vector<CheckResult> checks;

  void add(const std::string& name, double maxResidual, double tolerance,
           const std::string& offender) {
    for (const CheckResult& c : checks)
      if (c.name == name) throw MeshError("duplicate check name in report: " + name);
    checks.push_back({name, maxResidual, tolerance, offender, maxResidual <= tolerance});
  }

  bool allPass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

inline Json toJson(const ReportDocument& report) {
  Json j;
  j["version"] = 1;
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    Json e;
    e["name"] = c.name;
    e["max_residual"] = c.maxResidual;
    e["tolerance"] = c.tolerance;
    e["offender"] = c.offender;
    e["pass"] = c.pass;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

// --- files ---------------------------------------------------------------------

inline Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

inline void saveJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("cannot write " + path);
  out << canonicalDump(j);
}

// OBJ export: one vertex line per position, one polygon line per face cycle
// (1-based). With fan triangulation each polygon is fanned from its
// lowest-index corner.
inline void writeObj(std::ostream& out, const std::vector<Vec3d>& positions,
                     const std::vector<std::vector<int>>& polygons, bool triangulateFan = false) {
  char buf[160];
  const auto canon = [](double v) { return v == 0.0 ? 0.0 : v; };  // drop negative zero
  for (const Vec3d& p : positions) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", canon(p.x), canon(p.y), canon(p.z));
    out << buf;
  }
  const auto writeFace = [&](const std::vector<int>& cycle) {
    out << 'f';
    for (int v : cycle) out << ' ' << (v + 1);
    out << '\n';
  };
  for (const auto& polygon : polygons) {
    if (!triangulateFan || polygon.size() <= 3) {
      writeFace(polygon);
      continue;
    }
    size_t root = 0;
    for (size_t k = 1; k < polygon.size(); ++k)
      if (polygon[k] < polygon[root]) root = k;
    const size_t n = polygon.size();
    for (size_t k = 1; k + 1 < n; ++k)
      writeFace({polygon[root], polygon[(root + k) % n], polygon[(root + k + 1) % n]});
  }
}

inline void writeObjFile(const std::string& path, const std::vector<Vec3d>& positions,
                         const std::vector<std::vector<int>>& polygons,
                         bool triangulateFan = false) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("cannot write " + path);
  writeObj(out, positions, polygons, triangulateFan);
}

}  // namespace holomin
