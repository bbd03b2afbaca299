#pragma once

// Rigidity-theoretic certificates: edge stresses on the Gauss map balancing
// at interior vertices, and the equivalent force/torque balance read off the
// polar realization of a triangulated spherical net.

#include "holomin/curvature.hpp"

namespace holomin {

// Real stress coefficient per interior edge, df(e*_ij) = k_ij (N_j - N_i).
struct StressField {
  explicit StressField(const Mesh& m) : k(m.edges.size(), 0.0), residual(m.edges.size(), 0.0) {}
  std::vector<double> k;
  std::vector<double> residual;  // |df - k (N_j - N_i)| per edge

  double on(const Mesh& m, int i, int j) const {
    return k[static_cast<size_t>(m.requireEdge(i, j))];
  }
};

// Extracts k by projection onto N_j - N_i; the orthogonal residual is kept as
// a health metric. Degenerate edges (df = 0) carry k = 0.
inline StressField stressFromAminimal(const Mesh& mesh, const RealSurface& f,
                                      const GaussMap& gauss) {
  StressField stress(mesh);
  const double scale = surfaceScale(mesh, f);
  const double degenerateTol = 1e-14 * std::max(scale, 1e-300);
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    const Vec3d df = dualEdgeVector(mesh, f, e);
    const Vec3d dn = gauss[static_cast<size_t>(edge.b)] - gauss[static_cast<size_t>(edge.a)];
    if (mag(dn) < 1e-12) {
      if (mag(df) > degenerateTol)
        throw MeshError("equal Gauss map values on stressed edge {" + std::to_string(edge.a) + "," +
                        std::to_string(edge.b) + "}: stress coefficient undefined");
      continue;
    }
    const double k = dot(df, dn) / dot(dn, dn);
    stress.k[static_cast<size_t>(e)] = k;
    stress.residual[static_cast<size_t>(e)] = mag(df - k * dn);
  }
  return stress;
}

// Equilibrium sum_j k_ij (N_j - N_i) per interior vertex.
inline std::vector<Vec3d> equilibriumResiduals(const Mesh& mesh, const GaussMap& gauss,
                                               const StressField& stress) {
  std::vector<Vec3d> out(static_cast<size_t>(mesh.numVertices));
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    Vec3d sum{};
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)])
      sum += stress.on(mesh, v, nbr) * (gauss[static_cast<size_t>(nbr)] - gauss[static_cast<size_t>(v)]);
    out[static_cast<size_t>(v)] = sum;
  }
  return out;
}

// Pole of each face plane with respect to the unit sphere: the solution of
// <N_a, pole> = 1 over the face's three vertices. Triangulations only; a face
// whose plane passes through the origin has no pole.
inline std::vector<Vec3d> polarMesh(const Mesh& mesh, const GaussMap& gauss) {
  detail::requireTriangulated(mesh);
  std::vector<Vec3d> poles(static_cast<size_t>(mesh.numFaces()));
  for (int face = 0; face < mesh.numFaces(); ++face) {
    const auto& tri = mesh.faces[static_cast<size_t>(face)];
    const Vec3d& p = gauss[static_cast<size_t>(tri[0])];
    const Vec3d& q = gauss[static_cast<size_t>(tri[1])];
    const Vec3d& r = gauss[static_cast<size_t>(tri[2])];
    const double det = dot(p, cross(q, r));
    if (std::abs(det) < 1e-12)
      throw MeshError("face " + std::to_string(face) + " is coplanar with the origin: no pole");
    // Cramer: rows p,q,r, right-hand side (1,1,1).
    const Vec3d qr = cross(q, r), rp = cross(r, p), pq = cross(p, q);
    poles[static_cast<size_t>(face)] = (qr + rp + pq) / det;
  }
  return poles;
}

// Tangency point shared by the polar planes of two sphere points.
inline Vec3d tangencyPoint(const Vec3d& ni, const Vec3d& nj) {
  const double denom = 1.0 + dot(ni, nj);
  if (denom < 1e-12) throw MeshError("antipodal normals have no common tangency point");
  return (ni + nj) / denom;
}

struct FaceBalance {
  Vec3d force{};   // sum_j k_ij N_i x N_j
  Vec3d torque{};  // sum_j k_ij r_ij x (N_i x N_j)
};

// Force and torque balance of the stress transported to the polar mesh,
// evaluated per interior dual face (per interior vertex of the Gauss map).
inline std::vector<FaceBalance> forceTorqueBalance(const Mesh& mesh, const GaussMap& gauss,
                                                   const StressField& stress) {
  std::vector<FaceBalance> out(static_cast<size_t>(mesh.numVertices));
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    FaceBalance fb;
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) {
      const double k = stress.on(mesh, v, nbr);
      const Vec3d& ni = gauss[static_cast<size_t>(v)];
      const Vec3d& nj = gauss[static_cast<size_t>(nbr)];
      if (k != 0.0 && mag(cross(ni, nj)) < 1e-12)
        throw MeshError("parallel normals on stressed edge {" + std::to_string(v) + "," +
                        std::to_string(nbr) + "}");
      fb.force += k * cross(ni, nj);
      fb.torque += k * cross(tangencyPoint(ni, nj), cross(ni, nj));
    }
    out[static_cast<size_t>(v)] = fb;
  }
  return out;
}

}  // namespace holomin
