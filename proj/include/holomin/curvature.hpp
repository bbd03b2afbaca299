#pragma once

// Curvature and area analytics. Surface verification (A-/C-minimality,
// dihedral angles, scalar mean curvature, mixed area, associated-family
// identities) operates on dual realizations f : faces -> R^3 with a vertex
// Gauss map. The variational side (vector area, total area, mean curvature
// vector, cotangent balance, finite-difference gradients) operates on primal
// realizations f : vertices -> R^3 with a sign per face.

#include <functional>

#include "holomin/weierstrass.hpp"

namespace holomin {

inline double surfaceScale(const Mesh& mesh, const RealSurface& f) {
  double s = 0.0;
  for (const Mesh::Edge& e : mesh.edges) {
    if (!e.interior()) continue;
    s = std::max(s, mag(f.f[static_cast<size_t>(e.leftOfAB)] - f.f[static_cast<size_t>(e.leftOfBA)]));
  }
  return s;
}

inline Vec3d dualEdgeVector(const Mesh& mesh, const RealSurface& f, int edge) {
  const Mesh::Edge& e = mesh.edges[static_cast<size_t>(edge)];
  return f.f[static_cast<size_t>(e.leftOfAB)] - f.f[static_cast<size_t>(e.leftOfBA)];
}

// --- A-minimality -------------------------------------------------------------

struct AminimalReport {
  std::vector<double> crossResidual;  // |dN x df| per edge id (interior only)
  std::vector<double> dotResidual;    // |<N_i + N_j, df>| per edge id
  double maxCross = 0.0;
  double maxDot = 0.0;
  int worstEdge = -1;
  double scale = 0.0;

  bool passes(double relTol) const {
    return std::max(maxCross, maxDot) <= relTol * std::max(scale, 1e-300);
  }
};

inline AminimalReport verifyAminimal(const Mesh& mesh, const RealSurface& f,
                                     const GaussMap& gauss) {
  AminimalReport report;
  report.crossResidual.assign(mesh.edges.size(), 0.0);
  report.dotResidual.assign(mesh.edges.size(), 0.0);
  report.scale = surfaceScale(mesh, f);
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    const Vec3d df = dualEdgeVector(mesh, f, e);
    const Vec3d dn = gauss[static_cast<size_t>(edge.b)] - gauss[static_cast<size_t>(edge.a)];
    const double rc = mag(cross(dn, df));
    const double rd = std::abs(dot(gauss[static_cast<size_t>(edge.a)] + gauss[static_cast<size_t>(edge.b)], df));
    report.crossResidual[static_cast<size_t>(e)] = rc;
    report.dotResidual[static_cast<size_t>(e)] = rd;
    if (std::max(rc, rd) > std::max(report.maxCross, report.maxDot)) report.worstEdge = e;
    report.maxCross = std::max(report.maxCross, rc);
    report.maxDot = std::max(report.maxDot, rd);
  }
  return report;
}

// --- dihedral angles and C-minimality ------------------------------------------

struct EdgeCurvature {
  double alpha = 0.0;        // signed dihedral angle in (-pi, pi)
  double k = 0.0;            // df = k N_i x N_j coefficient
  double length = 0.0;       // |df|
  double tanHalfTerm = 0.0;  // |df| tan(alpha/2), evaluated algebraically
  double kResidual = 0.0;    // |df - k N_i x N_j|
  bool degenerate = false;   // df = 0: angle not materialized, term vanishes
};

inline EdgeCurvature edgeCurvature(const Vec3d& ni, const Vec3d& nj, const Vec3d& df,
                                   double degenerateTol) {
  EdgeCurvature ec;
  ec.length = mag(df);
  const Vec3d nc = cross(ni, nj);
  const double cosA = dot(ni, nj);
  if (ec.length <= degenerateTol) {
    ec.degenerate = true;
    return ec;
  }
  if (mag(nc) < 1e-12) {
    if (cosA < 0.0) throw MeshError("antipodal face normals on an edge with nonzero length");
    throw MeshError("equal face normals on an edge with nonzero length: no dihedral coefficient");
  }
  ec.k = dot(df, nc) / dot(nc, nc);
  ec.kResidual = mag(df - ec.k * nc);
  const double sinA = dot(nc, df) / ec.length;
  ec.alpha = std::atan2(sinA, cosA);
  ec.tanHalfTerm = dot(nc, df) / (1.0 + cosA);
  return ec;
}

inline std::vector<EdgeCurvature> dihedralAndK(const Mesh& mesh, const RealSurface& f,
                                               const GaussMap& gauss) {
  const double scale = surfaceScale(mesh, f);
  const double degenerateTol = 1e-14 * std::max(scale, 1e-300);
  std::vector<EdgeCurvature> out(mesh.edges.size());
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    out[static_cast<size_t>(e)] = edgeCurvature(gauss[static_cast<size_t>(edge.a)],
                                                gauss[static_cast<size_t>(edge.b)],
                                                dualEdgeVector(mesh, f, e), degenerateTol);
  }
  return out;
}

// Scalar mean curvature per interior vertex (per face of the dual surface):
//   H_i = sum_j |df(e*_ij)| tan(alpha_ij / 2)
// computed as sum_j <N_i x N_j, df(e*_ij)> / (1 + <N_i, N_j>), which is exact
// on degenerate edges and avoids trig roundoff.
inline std::vector<double> scalarMeanCurvature(const Mesh& mesh, const RealSurface& f,
                                               const GaussMap& gauss) {
  std::vector<double> h(static_cast<size_t>(mesh.numVertices), 0.0);
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    double sum = 0.0;
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) {
      const int e = mesh.requireEdge(v, nbr);
      const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
      Vec3d df = dualEdgeVector(mesh, f, e);
      if (edge.a != v) df = -df;  // orient the dual edge as e*_{v,nbr}
      const double denom = 1.0 + dot(gauss[static_cast<size_t>(v)], gauss[static_cast<size_t>(nbr)]);
      if (denom < 1e-12) throw MeshError("antipodal normals on edge at vertex " + std::to_string(v));
      sum += dot(cross(gauss[static_cast<size_t>(v)], gauss[static_cast<size_t>(nbr)]), df) / denom;
    }
    h[static_cast<size_t>(v)] = sum;
  }
  return h;
}

struct CminimalReport {
  double maxPlanarity = 0.0;  // worst distance of a face corner from the face plane
  double maxH = 0.0;          // worst |H| over interior vertices
  int worstPlanarityVertex = -1;
  int worstHVertex = -1;
  double scale = 0.0;

  bool passes(double planarityRelTol, double hRelTol) const {
    const double s = std::max(scale, 1e-300);
    return maxPlanarity <= planarityRelTol * s && maxH <= hRelTol * s;
  }
};

// Planar faces with the prescribed normals plus vanishing scalar mean
// curvature; report-only.
inline CminimalReport verifyCminimal(const Mesh& mesh, const RealSurface& f,
                                     const GaussMap& gauss) {
  CminimalReport report;
  report.scale = surfaceScale(mesh, f);
  const auto h = scalarMeanCurvature(mesh, f, gauss);
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    if (std::abs(h[static_cast<size_t>(v)]) > report.maxH) {
      report.maxH = std::abs(h[static_cast<size_t>(v)]);
      report.worstHVertex = v;
    }
    const auto& fan = mesh.faceFan[static_cast<size_t>(v)];
    Vec3d centroid{};
    for (int face : fan) centroid += f.f[static_cast<size_t>(face)];
    centroid = centroid / static_cast<double>(fan.size());
    for (int face : fan) {
      const double dev = std::abs(dot(f.f[static_cast<size_t>(face)] - centroid, gauss[static_cast<size_t>(v)]));
      if (dev > report.maxPlanarity) {
        report.maxPlanarity = dev;
        report.worstPlanarityVertex = v;
      }
    }
  }
  return report;
}

// Mixed area of the dual surface against a polar realization per face,
// evaluated around each interior vertex. Agrees with the scalar mean
// curvature when the polar incidences <N_vertex, polar_face> = 1 hold.
inline std::vector<double> mixedAreaConical(const Mesh& mesh, const RealSurface& f,
                                            const GaussMap& gauss,
                                            const std::vector<Vec3d>& polar,
                                            double incidenceTol = 1e-8) {
  for (int v = 0; v < mesh.numVertices; ++v)
    for (int face : mesh.faceFan[static_cast<size_t>(v)])
      if (std::abs(dot(gauss[static_cast<size_t>(v)], polar[static_cast<size_t>(face)]) - 1.0) > incidenceTol)
        throw MeshError("polar realization violates incidence at vertex " + std::to_string(v) +
                        ", face " + std::to_string(face));
  std::vector<double> mixed(static_cast<size_t>(mesh.numVertices), 0.0);
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    const auto& fan = mesh.faceFan[static_cast<size_t>(v)];
    const size_t nf = fan.size();
    double sum = 0.0;
    for (size_t r = 0; r < nf; ++r) {
      const Vec3d& fr = f.f[static_cast<size_t>(fan[r])];
      const Vec3d& fs = f.f[static_cast<size_t>(fan[(r + 1) % nf])];
      const Vec3d& pr = polar[static_cast<size_t>(fan[r])];
      const Vec3d& ps = polar[static_cast<size_t>(fan[(r + 1) % nf])];
      sum += dot(cross(fr, ps) + cross(pr, fs), gauss[static_cast<size_t>(v)]);
    }
    mixed[static_cast<size_t>(v)] = 0.5 * sum;
  }
  return mixed;
}

// --- associated-family identities ----------------------------------------------

struct ThetaCurvature {
  double h = 0.0;       // sum_j <dN x df, (N_i+N_j)/|N_i+N_j|^2>
  double dotSum = 0.0;  // sum_j <dN, df>
};

inline std::vector<ThetaCurvature> thetaCurvatures(const Mesh& mesh, const RealSurface& f,
                                                   const GaussMap& gauss,
                                                   double antipodalEps = kAntipodalEps) {
  std::vector<ThetaCurvature> out(static_cast<size_t>(mesh.numVertices));
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    ThetaCurvature tc;
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) {
      const int e = mesh.requireEdge(v, nbr);
      const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
      Vec3d df = dualEdgeVector(mesh, f, e);
      if (edge.a != v) df = -df;
      const Vec3d dn = gauss[static_cast<size_t>(nbr)] - gauss[static_cast<size_t>(v)];
      const Vec3d nsum = gauss[static_cast<size_t>(v)] + gauss[static_cast<size_t>(nbr)];
      if (mag(nsum) < antipodalEps)
        throw MeshError("antipodal normals on edge {" + std::to_string(v) + "," + std::to_string(nbr) + "}");
      tc.h += dot(cross(dn, df), nsum) / dot(nsum, nsum);
      tc.dotSum += dot(dn, df);
    }
    out[static_cast<size_t>(v)] = tc;
  }
  return out;
}

struct ThetaEdgeResiduals {
  double maxCross = 0.0;  // | df^theta x dN + q sin(theta) (N_i + N_j) |
  double maxDot = 0.0;    // | <df^theta, dN> - 2 q cos(theta) |
  double scale = 0.0;
};

// Edge identities of the associated family of a Weierstrass surface. With the
// canonical P-net normalization q = mu/2 these are the labeled identities
//   df^theta x dN = -mu sin(theta) (N_i+N_j)/2,  <df^theta, dN> = mu cos(theta).
inline ThetaEdgeResiduals thetaEdgeResiduals(const Mesh& mesh, const RealSurface& f,
                                             const GaussMap& gauss, const QuadDiff& q,
                                             double theta) {
  ThetaEdgeResiduals out;
  out.scale = surfaceScale(mesh, f);
  const double s = std::sin(theta), c = std::cos(theta);
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    const Vec3d df = dualEdgeVector(mesh, f, e);
    const Vec3d dn = gauss[static_cast<size_t>(edge.b)] - gauss[static_cast<size_t>(edge.a)];
    const Vec3d nsum = gauss[static_cast<size_t>(edge.a)] + gauss[static_cast<size_t>(edge.b)];
    const double qe = q.values[static_cast<size_t>(e)];
    out.maxCross = std::max(out.maxCross, mag(cross(df, dn) + (qe * s) * nsum));
    out.maxDot = std::max(out.maxDot, std::abs(dot(df, dn) - 2.0 * qe * c));
  }
  return out;
}

// --- vector area and the variational side ----------------------------------------

inline Vec3d vectorArea(const std::vector<Vec3d>& polygon) {
  if (polygon.size() < 3) throw MeshError("vector area needs at least 3 vertices");
  Vec3d area{};
  for (size_t r = 0; r < polygon.size(); ++r)
    area += cross(polygon[r], polygon[(r + 1) % polygon.size()]);
  return 0.5 * area;
}

inline std::vector<Vec3d> facePolygon(const Mesh& mesh, const std::vector<Vec3d>& f, int face) {
  std::vector<Vec3d> polygon;
  polygon.reserve(mesh.faces[static_cast<size_t>(face)].size());
  for (int v : mesh.faces[static_cast<size_t>(face)]) polygon.push_back(f[static_cast<size_t>(v)]);
  return polygon;
}

// Polygon of the dual face around an interior vertex, in CCW fan order.
inline std::vector<Vec3d> dualFacePolygon(const Mesh& mesh, const RealSurface& f, int vertex) {
  std::vector<Vec3d> polygon;
  const auto& fan = mesh.faceFan[static_cast<size_t>(vertex)];
  polygon.reserve(fan.size());
  for (int face : fan) polygon.push_back(f.f[static_cast<size_t>(face)]);
  return polygon;
}

// Total signed area: sum_phi sigma_phi |A_phi|. Faces with vanishing vector
// area contribute zero and are reported through zeroAreaFaces when asked for.
inline double totalArea(const Mesh& mesh, const std::vector<Vec3d>& f,
                        const std::vector<double>& sigma,
                        std::vector<int>* zeroAreaFaces = nullptr) {
  double area = 0.0;
  for (int face = 0; face < mesh.numFaces(); ++face) {
    const double m = mag(vectorArea(facePolygon(mesh, f, face)));
    if (m == 0.0) {
      if (zeroAreaFaces) zeroAreaFaces->push_back(face);
      continue;
    }
    area += sigma[static_cast<size_t>(face)] * m;
  }
  return area;
}

// Mean curvature vector field at interior vertices,
//   H_i = 1/2 sum_j dN_sigma(e*_ij) x df(e_ij),  N_sigma = sigma A/|A|.
// Vanishes exactly at critical points of the total area with fixed boundary;
// under these orientation conventions it is minus the area gradient, i.e.
// d/dt Area(f + t fdot) = -sum_i <H_i, fdot_i>.
inline std::vector<Vec3d> meanCurvatureVector(const Mesh& mesh, const std::vector<Vec3d>& f,
                                              const std::vector<double>& sigma) {
  std::vector<Vec3d> normals(static_cast<size_t>(mesh.numFaces()));
  std::vector<bool> normalValid(static_cast<size_t>(mesh.numFaces()), false);
  for (int face = 0; face < mesh.numFaces(); ++face) {
    const Vec3d a = vectorArea(facePolygon(mesh, f, face));
    const double m = mag(a);
    if (m > 0.0) {
      normals[static_cast<size_t>(face)] = (sigma[static_cast<size_t>(face)] / m) * a;
      normalValid[static_cast<size_t>(face)] = true;
    }
  }
  std::vector<Vec3d> h(static_cast<size_t>(mesh.numVertices));
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    Vec3d sum{};
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) {
      const int left = mesh.leftFace(v, nbr);
      const int right = mesh.rightFace(v, nbr);
      if (!normalValid[static_cast<size_t>(left)] || !normalValid[static_cast<size_t>(right)])
        throw MeshError("zero vector area on a face adjacent to interior vertex " + std::to_string(v));
      const Vec3d dn = normals[static_cast<size_t>(left)] - normals[static_cast<size_t>(right)];
      const Vec3d df = f[static_cast<size_t>(nbr)] - f[static_cast<size_t>(v)];
      sum += cross(dn, df);
    }
    h[static_cast<size_t>(v)] = 0.5 * sum;
  }
  return h;
}

// Cotangent balance on triangulations,
//   sum_j (cot(angle jki) + cot(angle ilj)) df(e_ij);
// equals twice the mean curvature vector with sigma = 1.
inline std::vector<Vec3d> cotanBalance(const Mesh& mesh, const std::vector<Vec3d>& f) {
  detail::requireTriangulated(mesh);
  const auto cotAt = [&](int apex, int p, int r) {
    const Vec3d u = f[static_cast<size_t>(p)] - f[static_cast<size_t>(apex)];
    const Vec3d v = f[static_cast<size_t>(r)] - f[static_cast<size_t>(apex)];
    const double area = mag(cross(u, v));
    if (area == 0.0) throw MeshError("degenerate triangle: face does not span a plane");
    return dot(u, v) / area;
  };
  std::vector<Vec3d> out(static_cast<size_t>(mesh.numVertices));
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    Vec3d sum{};
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) {
      double weight = 0.0;
      for (int face : {mesh.leftFace(v, nbr), mesh.rightFace(v, nbr)}) {
        const auto& tri = mesh.faces[static_cast<size_t>(face)];
        int apex = -1;
        for (int w : tri)
          if (w != v && w != nbr) apex = w;
        weight += cotAt(apex, v, nbr);
      }
      sum += weight * (f[static_cast<size_t>(nbr)] - f[static_cast<size_t>(v)]);
    }
    out[static_cast<size_t>(v)] = sum;
  }
  return out;
}

inline constexpr double kFdStep = 1e-5;

// Central-difference gradient of the total area in the interior vertex
// positions; the independent oracle for the mean curvature vector field
// (gradient = -H under these conventions).
inline std::vector<Vec3d> areaGradientFd(const Mesh& mesh, const std::vector<Vec3d>& f,
                                         const std::vector<double>& sigma, double step = kFdStep) {
  std::vector<Vec3d> grad(static_cast<size_t>(mesh.numVertices));
  std::vector<Vec3d> work = f;
  const auto evalAt = [&]() {
    std::vector<int> zeros;
    const double area = totalArea(mesh, work, sigma, &zeros);
    if (!zeros.empty())
      throw MeshError("vector area crossed zero during finite-difference perturbation");
    return area;
  };
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    for (int c = 0; c < 3; ++c) {
      const double saved = work[static_cast<size_t>(v)][c];
      work[static_cast<size_t>(v)][c] = saved + step;
      const double plus = evalAt();
      work[static_cast<size_t>(v)][c] = saved - step;
      const double minus = evalAt();
      work[static_cast<size_t>(v)][c] = saved;
      grad[static_cast<size_t>(v)][c] = (plus - minus) / (2.0 * step);
    }
  }
  return grad;
}

inline double areaDirectionalDerivativeFd(const Mesh& mesh, const std::vector<Vec3d>& f,
                                          const std::vector<double>& sigma,
                                          const std::vector<Vec3d>& direction,
                                          double step = kFdStep) {
  std::vector<Vec3d> plus = f, minus = f;
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    plus[static_cast<size_t>(v)] += step * direction[static_cast<size_t>(v)];
    minus[static_cast<size_t>(v)] -= step * direction[static_cast<size_t>(v)];
  }
  return (totalArea(mesh, plus, sigma) - totalArea(mesh, minus, sigma)) / (2.0 * step);
}

// --- vector-area constancy across the family -------------------------------------

struct FamilyAreaReport {
  double maxDeviation = 0.0;  // max over theta, dual faces of |A^theta - A^0|
  double maxSinAngle = 0.0;   // worst |sin(angle(A^0, N))|
  double scale = 0.0;         // max |A^0|
};

inline FamilyAreaReport vectorAreaFamilyCheck(const Mesh& mesh, const ComplexSurface& surface,
                                              const GaussMap& gauss,
                                              const std::vector<double>& thetas) {
  FamilyAreaReport report;
  std::vector<Vec3d> baseArea(static_cast<size_t>(mesh.numVertices));
  const RealSurface f0 = associatedSurface(surface, 0.0);
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    const Vec3d a0 = vectorArea(dualFacePolygon(mesh, f0, v));
    baseArea[static_cast<size_t>(v)] = a0;
    report.scale = std::max(report.scale, mag(a0));
    if (mag(a0) > 0.0)
      report.maxSinAngle = std::max(report.maxSinAngle, mag(cross(a0 / mag(a0), gauss[static_cast<size_t>(v)])));
  }
  for (double theta : thetas) {
    const RealSurface ft = associatedSurface(surface, theta);
    for (int v = 0; v < mesh.numVertices; ++v) {
      if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
      const Vec3d at = vectorArea(dualFacePolygon(mesh, ft, v));
      report.maxDeviation = std::max(report.maxDeviation, mag(at - baseArea[static_cast<size_t>(v)]));
    }
  }
  return report;
}

inline std::vector<double> thetaSamples(int count) {
  std::vector<double> thetas(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k)
    thetas[static_cast<size_t>(k)] = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
  return thetas;
}

}  // namespace holomin
