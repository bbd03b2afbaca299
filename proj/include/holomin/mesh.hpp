#pragma once

// Oriented cell decompositions of surfaces with boundary.
//
// Faces are simple cyclic vertex lists, counterclockwise in the reference
// orientation. Edges are undirected pairs stored in canonical (a<b) order,
// sorted lexicographically so edge ids are deterministic. For a directed
// edge i->j the "left" face is the one whose cycle traverses (i,j); dual
// edges are oriented from the right face to the left face. An edge is
// interior when both sides carry a face; a vertex is interior when its
// incident faces close into a single rotation cycle.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace holomin {

class MeshError : public std::runtime_error {
 public:
  explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Mesh {
  struct Edge {
    int a = -1, b = -1;       // endpoints, a < b
    int leftOfAB = -1;        // face whose cycle contains (a,b)
    int leftOfBA = -1;        // face whose cycle contains (b,a)
    bool interior() const { return leftOfAB >= 0 && leftOfBA >= 0; }
  };

  int numVertices = 0;
  std::vector<std::vector<int>> faces;
  std::vector<Edge> edges;

  std::vector<bool> vertexInterior;
  std::vector<bool> edgeInterior;  // mirrors edges[e].interior()

  // Rotation system. At interior vertices both lists are full CCW cycles
  // (faceFan[k] sits between neighbor k and neighbor k+1); at boundary
  // vertices they are open fans starting at the first boundary edge in CCW
  // order, with faceFan one entry shorter than neighborFan.
  std::vector<std::vector<int>> neighborFan;
  std::vector<std::vector<int>> faceFan;

  int numFaces() const { return static_cast<int>(faces.size()); }
  int numEdges() const { return static_cast<int>(edges.size()); }

  int edgeIndex(int i, int j) const {
    const auto it = edgeLookup_.find(edgeKey(i, j));
    return it == edgeLookup_.end() ? -1 : it->second;
  }

  int requireEdge(int i, int j) const {
    const int e = edgeIndex(i, j);
    if (e < 0) throw MeshError("no edge between vertices " + std::to_string(i) + " and " + std::to_string(j));
    return e;
  }

  bool isInteriorEdge(int i, int j) const {
    const int e = edgeIndex(i, j);
    return e >= 0 && edges[static_cast<size_t>(e)].interior();
  }

  // Face left of the directed edge i->j, or -1.
  int leftFace(int i, int j) const {
    const Edge& e = edges[static_cast<size_t>(requireEdge(i, j))];
    return i < j ? e.leftOfAB : e.leftOfBA;
  }
  int rightFace(int i, int j) const { return leftFace(j, i); }

  std::vector<int> interiorVertices() const {
    std::vector<int> out;
    for (int v = 0; v < numVertices; ++v)
      if (vertexInterior[static_cast<size_t>(v)]) out.push_back(v);
    return out;
  }

  std::vector<int> interiorEdges() const {
    std::vector<int> out;
    for (int e = 0; e < numEdges(); ++e)
      if (edges[static_cast<size_t>(e)].interior()) out.push_back(e);
    return out;
  }

  int countBoundaryEdges() const {
    int n = 0;
    for (const Edge& e : edges)
      if (!e.interior()) ++n;
    return n;
  }

  int vertexDegree(int v) const { return static_cast<int>(neighborFan[static_cast<size_t>(v)].size()); }

  static int64_t edgeKey(int i, int j) {
    const int64_t lo = std::min(i, j), hi = std::max(i, j);
    return (lo << 32) | hi;
  }

  std::unordered_map<int64_t, int> edgeLookup_;
};

namespace detail {

// Walks the corner records around one vertex into a rotation fan. The CCW
// successor of a face at v is the face whose cycle enters v from the current
// face's predecessor vertex.
inline void buildVertexFan(Mesh& mesh, int v,
                           const std::vector<std::array<int, 3>>& corners) {
  // corners: (nextVertex, prevVertex, face)
  std::unordered_map<int, size_t> byNext;
  for (size_t c = 0; c < corners.size(); ++c) {
    if (!byNext.emplace(corners[c][0], c).second)
      throw MeshError("non-manifold corner at vertex " + std::to_string(v) +
                      ": two faces leave through the same edge");
  }
  std::unordered_map<int, size_t> byPrev;
  for (size_t c = 0; c < corners.size(); ++c) {
    if (!byPrev.emplace(corners[c][1], c).second)
      throw MeshError("non-manifold corner at vertex " + std::to_string(v) +
                      ": two faces enter through the same edge");
  }

  // Rewind to the CCW-first corner (whose outgoing edge has no predecessor
  // face); if none exists the fan is closed and the vertex interior.
  size_t start = 0;
  bool closed = true;
  for (size_t c = 0; c < corners.size(); ++c) {
    if (byPrev.find(corners[c][0]) == byPrev.end()) {
      start = c;
      closed = false;
      break;
    }
  }

  std::vector<int> nbrs, fan;
  size_t cur = start;
  for (size_t steps = 0;; ++steps) {
    if (steps > corners.size())
      throw MeshError("non-manifold vertex star at vertex " + std::to_string(v));
    nbrs.push_back(corners[cur][0]);
    fan.push_back(corners[cur][2]);
    const auto it = byNext.find(corners[cur][1]);
    if (it == byNext.end()) {
      nbrs.push_back(corners[cur][1]);  // trailing boundary edge
      break;
    }
    if (it->second == start) {
      if (!closed) throw MeshError("non-manifold vertex star at vertex " + std::to_string(v));
      break;
    }
    cur = it->second;
  }
  if (fan.size() != corners.size())
    throw MeshError("non-manifold vertex star at vertex " + std::to_string(v) +
                    ": incident faces split into several fans");

  mesh.vertexInterior[static_cast<size_t>(v)] = closed;
  mesh.neighborFan[static_cast<size_t>(v)] = std::move(nbrs);
  mesh.faceFan[static_cast<size_t>(v)] = std::move(fan);
}

}  // namespace detail

inline Mesh buildMesh(int vertexCount, const std::vector<std::vector<int>>& faceCycles) {
  if (vertexCount <= 0) throw MeshError("mesh needs at least one vertex");
  Mesh mesh;
  mesh.numVertices = vertexCount;
  mesh.faces = faceCycles;

  // Collect undirected edges; ids are lexicographic in (min,max).
  std::vector<std::pair<int, int>> pairs;
  for (const auto& face : faceCycles) {
    if (face.size() < 3) throw MeshError("face with fewer than 3 vertices");
    std::vector<int> sorted(face);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw MeshError("face repeats a vertex");
    for (size_t k = 0; k < face.size(); ++k) {
      const int i = face[k], j = face[(k + 1) % face.size()];
      if (i < 0 || i >= vertexCount || j < 0 || j >= vertexCount)
        throw MeshError("face references undeclared vertex");
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  mesh.edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    Mesh::Edge e;
    e.a = a;
    e.b = b;
    mesh.edgeLookup_.emplace(Mesh::edgeKey(a, b), static_cast<int>(mesh.edges.size()));
    mesh.edges.push_back(e);
  }

  // Attach faces to their directed edges; each direction at most once.
  for (int f = 0; f < mesh.numFaces(); ++f) {
    const auto& face = mesh.faces[static_cast<size_t>(f)];
    for (size_t k = 0; k < face.size(); ++k) {
      const int i = face[k], j = face[(k + 1) % face.size()];
      Mesh::Edge& e = mesh.edges[static_cast<size_t>(mesh.edgeIndex(i, j))];
      int& slot = (i < j) ? e.leftOfAB : e.leftOfBA;
      if (slot >= 0) {
        const int other = (i < j) ? e.leftOfBA : e.leftOfAB;
        const std::string what = (other >= 0)
            ? "non-manifold edge"
            : "inconsistent orientation on edge";
        throw MeshError(what + " {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                        "}: faces " + std::to_string(slot) + " and " + std::to_string(f) +
                        " traverse it the same way");
      }
      slot = f;
    }
  }

  mesh.edgeInterior.resize(mesh.edges.size());
  for (size_t e = 0; e < mesh.edges.size(); ++e) mesh.edgeInterior[e] = mesh.edges[e].interior();

  // Rotation fans and interior classification.
  mesh.vertexInterior.assign(static_cast<size_t>(vertexCount), false);
  mesh.neighborFan.assign(static_cast<size_t>(vertexCount), {});
  mesh.faceFan.assign(static_cast<size_t>(vertexCount), {});
  std::vector<std::vector<std::array<int, 3>>> corners(static_cast<size_t>(vertexCount));
  for (int f = 0; f < mesh.numFaces(); ++f) {
    const auto& face = mesh.faces[static_cast<size_t>(f)];
    const size_t n = face.size();
    for (size_t k = 0; k < n; ++k) {
      const int v = face[k];
      const int next = face[(k + 1) % n];
      const int prev = face[(k + n - 1) % n];
      corners[static_cast<size_t>(v)].push_back({next, prev, f});
    }
  }
  for (int v = 0; v < vertexCount; ++v) {
    if (corners[static_cast<size_t>(v)].empty())
      throw MeshError("isolated vertex " + std::to_string(v));
    detail::buildVertexFan(mesh, v, corners[static_cast<size_t>(v)]);
  }
  return mesh;
}

// Id-based entry point: face cycles reference arbitrary unique vertex ids,
// which get densified in the order given. Returns the mesh plus the id list.
struct MeshWithIds {
  Mesh mesh;
  std::vector<int> vertexIds;  // dense index -> original id
};

inline MeshWithIds buildMeshFromIds(const std::vector<int>& vertexIds,
                                    const std::vector<std::vector<int>>& faceCyclesById) {
  std::unordered_map<int, int> toDense;
  for (size_t k = 0; k < vertexIds.size(); ++k) {
    if (!toDense.emplace(vertexIds[k], static_cast<int>(k)).second)
      throw MeshError("duplicate vertex id " + std::to_string(vertexIds[k]));
  }
  std::vector<std::vector<int>> dense(faceCyclesById.size());
  for (size_t f = 0; f < faceCyclesById.size(); ++f) {
    dense[f].reserve(faceCyclesById[f].size());
    for (int id : faceCyclesById[f]) {
      const auto it = toDense.find(id);
      if (it == toDense.end()) throw MeshError("face references undeclared vertex id " + std::to_string(id));
      dense[f].push_back(it->second);
    }
  }
  return {buildMesh(static_cast<int>(vertexIds.size()), dense), vertexIds};
}

// Dual cell decomposition restricted to what a surface with boundary
// supports: one dual vertex per primal face, one dual face per interior
// primal vertex (its CCW face fan). Dual faces of boundary vertices are
// unbounded and not represented.
struct DualMesh {
  Mesh mesh;                      // vertices indexed like primal faces
  std::vector<int> primalVertex;  // dual face index -> primal interior vertex
};

inline DualMesh dualMesh(const Mesh& primal) {
  DualMesh dual;
  std::vector<std::vector<int>> dualFaces;
  for (int v = 0; v < primal.numVertices; ++v) {
    if (!primal.vertexInterior[static_cast<size_t>(v)]) continue;
    dualFaces.push_back(primal.faceFan[static_cast<size_t>(v)]);
    dual.primalVertex.push_back(v);
  }
  if (dualFaces.empty()) throw MeshError("dual mesh is empty: no interior vertices");
  dual.mesh = buildMesh(primal.numFaces(), dualFaces);
  return dual;
}

}  // namespace holomin
