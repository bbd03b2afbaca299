#pragma once

// P-graphs (quadrivalent, even faces), their alternating edge labelings,
// the parallelogram property for planar realizations, built-in generators,
// and the dual of a cross-ratio -1 quad net with its diagonal sublattices.

#include <cmath>
#include <deque>

#include "holomin/planar_net.hpp"

namespace holomin {

// +/-1 per interior edge, keyed by edge id; 0 marks edges without a label
// (only possible on non-P-graph input, never produced here).
struct PLabeling {
  explicit PLabeling(const Mesh& m) : values(m.edges.size(), 0) {}
  std::vector<int> values;

  int on(const Mesh& m, int i, int j) const {
    return values[static_cast<size_t>(m.requireEdge(i, j))];
  }
};

inline void requirePGraph(const Mesh& mesh) {
  for (int v = 0; v < mesh.numVertices; ++v)
    if (mesh.vertexInterior[static_cast<size_t>(v)] && mesh.vertexDegree(v) != 4)
      throw MeshError("not a P-graph: interior vertex " + std::to_string(v) + " has degree " +
                      std::to_string(mesh.vertexDegree(v)));
  for (const auto& f : mesh.faces)
    if (f.size() % 2 != 0)
      throw MeshError("not a P-graph: face with odd number of edges");
}

// Alternating labeling around every interior vertex. Two labelings exist per
// connected constraint component (global sign); the lowest-id edge of each
// component is normalized to +1. Parity conflicts (possible only without
// simple connectivity) are reported, not resolved.
inline PLabeling pLabeling(const Mesh& mesh) {
  requirePGraph(mesh);
  PLabeling mu(mesh);

  // Opposite edges agree, cyclically adjacent edges differ.
  std::vector<std::vector<std::pair<int, int>>> constraints(mesh.edges.size());
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    const auto& ring = mesh.neighborFan[static_cast<size_t>(v)];
    std::array<int, 4> e{};
    for (int k = 0; k < 4; ++k) e[static_cast<size_t>(k)] = mesh.requireEdge(v, ring[static_cast<size_t>(k)]);
    for (int k = 0; k < 4; ++k) {
      const int e0 = e[static_cast<size_t>(k)], e1 = e[static_cast<size_t>((k + 1) % 4)];
      constraints[static_cast<size_t>(e0)].push_back({e1, -1});
      constraints[static_cast<size_t>(e1)].push_back({e0, -1});
    }
  }

  for (int seed = 0; seed < mesh.numEdges(); ++seed) {
    if (!mesh.edgeInterior[static_cast<size_t>(seed)] || mu.values[static_cast<size_t>(seed)] != 0)
      continue;
    mu.values[static_cast<size_t>(seed)] = 1;  // lowest id in this component
    std::deque<int> frontier{seed};
    while (!frontier.empty()) {
      const int cur = frontier.front();
      frontier.pop_front();
      for (const auto& [other, rel] : constraints[static_cast<size_t>(cur)]) {
        const int expected = rel * mu.values[static_cast<size_t>(cur)];
        if (mu.values[static_cast<size_t>(other)] == 0) {
          mu.values[static_cast<size_t>(other)] = expected;
          frontier.push_back(other);
        } else if (mu.values[static_cast<size_t>(other)] != expected) {
          throw MeshError("inconsistent P-labeling parity (surface is not simply connected)");
        }
      }
    }
  }
  return mu;
}

// Parallelogram-property residual per interior vertex, alternating signs in
// CCW ring order, starting with + on the lowest-id incident edge. Zero at
// every interior vertex iff the realization is a P-net.
inline std::vector<Complex> pnetResiduals(const Mesh& mesh, const PlanarNet& z) {
  requireNondegenerate(mesh, z);
  for (int v = 0; v < mesh.numVertices; ++v)
    if (mesh.vertexInterior[static_cast<size_t>(v)] && mesh.vertexDegree(v) != 4)
      throw MeshError("not a P-graph: interior vertex " + std::to_string(v) + " has degree " +
                      std::to_string(mesh.vertexDegree(v)));
  std::vector<Complex> residuals(static_cast<size_t>(mesh.numVertices), 0.0);
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    const auto& ring = mesh.neighborFan[static_cast<size_t>(v)];
    int lowest = 0;
    for (int k = 1; k < 4; ++k)
      if (mesh.requireEdge(v, ring[static_cast<size_t>(k)]) <
          mesh.requireEdge(v, ring[static_cast<size_t>(lowest)]))
        lowest = k;
    Complex sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double sign = ((k - lowest) % 2 == 0) ? 1.0 : -1.0;
      sum += sign / (z[static_cast<size_t>(ring[static_cast<size_t>(k)])] - z[static_cast<size_t>(v)]);
    }
    residuals[static_cast<size_t>(v)] = sum;
  }
  return residuals;
}

inline double maxInteriorMag(const Mesh& mesh, const std::vector<Complex>& perVertex) {
  double worst = 0.0;
  for (int v = 0; v < mesh.numVertices; ++v)
    if (mesh.vertexInterior[static_cast<size_t>(v)])
      worst = std::max(worst, std::abs(perVertex[static_cast<size_t>(v)]));
  return worst;
}

// --- built-in generators -----------------------------------------------------

enum class NetKind { Grid, Exp, RegularCirclePattern };

struct NetParams {
  int m = 0, n = 0;       // vertices per row / column, both >= 2
  double a = 0.0;         // exp: horizontal log-spacing
  double b = 0.0;         // exp: vertical rotation step
  double radius = 1.0;    // circle pattern radius
};

// An m x n quad grid with its planar positions; vid(i,j) = j*m + i.
struct GridNet {
  int m = 0, n = 0;
  Mesh mesh;
  PlanarNet z;
  NetKind kind = NetKind::Grid;

  int vid(int i, int j) const { return j * m + i; }
};

inline GridNet generateNet(NetKind kind, const NetParams& params) {
  const int m = params.m, n = params.n;
  if (m < 2 || n < 2)
    throw MeshError("net sizes must be at least 2x2, got " + std::to_string(m) + "x" +
                    std::to_string(n));
  GridNet net;
  net.m = m;
  net.n = n;
  net.kind = kind;
  std::vector<std::vector<int>> faces;
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < m; ++i)
      faces.push_back({net.vid(i, j), net.vid(i + 1, j), net.vid(i + 1, j + 1), net.vid(i, j + 1)});
  net.mesh = buildMesh(m * n, faces);

  net.z.resize(static_cast<size_t>(m * n));
  switch (kind) {
    case NetKind::Grid:
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) net.z[static_cast<size_t>(net.vid(i, j))] = Complex(i, j);
      break;
    case NetKind::Exp: {
      if (params.a == 0.0) throw MeshError("exp net requires a != 0 (degenerate horizontal edges)");
      if (std::abs(std::sin(params.b / 2.0)) < 1e-12)
        throw MeshError("exp net requires exp(ib) != 1 (degenerate vertical edges)");
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
          net.z[static_cast<size_t>(net.vid(i, j))] =
              std::exp(Complex(params.a * i, params.b * j));
      break;
    }
    case NetKind::RegularCirclePattern: {
      if (params.radius <= 0.0) throw MeshError("circle pattern radius must be positive");
      // Intersection points of the equal-radius orthogonal pattern: a
      // sqrt(2)-scaled, 45-degree rotated grid. Circles sit on the faces.
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
          net.z[static_cast<size_t>(net.vid(i, j))] =
              params.radius * Complex(1.0, 1.0) * Complex(i, j);
      break;
    }
  }
  requireNondegenerate(net.mesh, net.z);
  return net;
}

// Circumcircle of a generated circle-pattern face (center, radius); used to
// check the orthogonal-intersection geometry.
struct Circle {
  Complex center;
  double radius = 0.0;
};

inline Circle faceCircumcircle(const Mesh& mesh, const PlanarNet& z, int face) {
  const auto& cycle = mesh.faces[static_cast<size_t>(face)];
  // Circumcenter of the first three vertices.
  const Complex p = z[static_cast<size_t>(cycle[0])], q = z[static_cast<size_t>(cycle[1])],
                r = z[static_cast<size_t>(cycle[2])];
  const Complex u = q - p, v = r - p;
  const double det = 2.0 * (u.real() * v.imag() - u.imag() * v.real());
  if (det == 0.0) throw MeshError("collinear face vertices: no circumcircle");
  const double u2 = std::norm(u), v2 = std::norm(v);
  const Complex center =
      p + Complex((v.imag() * u2 - u.imag() * v2) / det, (u.real() * v2 - v.real() * u2) / det);
  return {center, std::abs(q - center)};
}

inline Complex crossRatio(Complex z1, Complex z2, Complex z3, Complex z4) {
  return (z1 - z2) * (z3 - z4) / ((z2 - z3) * (z4 - z1));
}

// Dual of a quad net whose faces all have cross-ratio -1:
//   dz*(horizontal) = 1/conj(dz),  dz*(vertical) = -1/conj(dz),
// integrated over a spanning tree from vid(0,0) with z*(0,0) = 0.
inline PlanarNet isothermicDual(const GridNet& net, double crTol = 1e-8) {
  requireNondegenerate(net.mesh, net.z);
  const int m = net.m, n = net.n;
  double worstDev = 0.0;
  int worstFace = -1;
  for (int f = 0; f < net.mesh.numFaces(); ++f) {
    const auto& q = net.mesh.faces[static_cast<size_t>(f)];
    const Complex cr = crossRatio(net.z[static_cast<size_t>(q[0])], net.z[static_cast<size_t>(q[1])],
                                  net.z[static_cast<size_t>(q[2])], net.z[static_cast<size_t>(q[3])]);
    const double dev = std::abs(cr + 1.0);
    if (dev > worstDev) {
      worstDev = dev;
      worstFace = f;
    }
  }
  if (worstDev > crTol)
    throw MeshError("quad net is not isothermic: face " + std::to_string(worstFace) +
                    " has cross-ratio off -1 by " + std::to_string(worstDev));

  const auto dzStar = [&](int i0, int j0, int i1, int j1) {
    const Complex dz = net.z[static_cast<size_t>(net.vid(i1, j1))] - net.z[static_cast<size_t>(net.vid(i0, j0))];
    const Complex w = 1.0 / std::conj(dz);
    return (j0 == j1) ? w : -w;  // horizontal : vertical
  };

  PlanarNet zstar(static_cast<size_t>(m * n), 0.0);
  std::vector<bool> known(static_cast<size_t>(m * n), false);
  known[0] = true;
  std::deque<std::pair<int, int>> frontier{{0, 0}};
  while (!frontier.empty()) {
    const auto [i, j] = frontier.front();
    frontier.pop_front();
    const std::array<std::pair<int, int>, 4> steps{{{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}}};
    for (const auto& [i2, j2] : steps) {
      if (i2 < 0 || i2 >= m || j2 < 0 || j2 >= n) continue;
      if (known[static_cast<size_t>(net.vid(i2, j2))]) continue;
      zstar[static_cast<size_t>(net.vid(i2, j2))] =
          zstar[static_cast<size_t>(net.vid(i, j))] + dzStar(i, j, i2, j2);
      known[static_cast<size_t>(net.vid(i2, j2))] = true;
      frontier.push_back({i2, j2});
    }
  }
  return zstar;
}

// Largest closedness defect of the dual edge 1-form around the quads; zero
// (up to roundoff) exactly when all cross-ratios are -1.
inline double isothermicDualClosedness(const GridNet& net) {
  double worst = 0.0;
  const auto w = [&](int i0, int j0, int i1, int j1) {
    const Complex dz = net.z[static_cast<size_t>(net.vid(i1, j1))] - net.z[static_cast<size_t>(net.vid(i0, j0))];
    const Complex v = 1.0 / std::conj(dz);
    return (j0 == j1) ? v : -v;
  };
  for (int j = 0; j + 1 < net.n; ++j)
    for (int i = 0; i + 1 < net.m; ++i) {
      const Complex loop = w(i, j, i + 1, j) + w(i + 1, j, i + 1, j + 1) - w(i, j + 1, i + 1, j + 1) -
                           w(i, j, i, j + 1);
      worst = std::max(worst, std::abs(loop));
    }
  return worst;
}

// Diagonal sublattice of a grid net: vertices with (i+j) parity, faces the
// diamonds around opposite-parity grid points. The result is again a P-graph.
struct SubNet {
  Mesh mesh;
  PlanarNet z;
  std::vector<int> parentVertex;  // sublattice index -> parent grid vertex
};

inline SubNet sublatticePnet(const GridNet& net, const PlanarNet& positions, int parity) {
  if (parity != 0 && parity != 1) throw MeshError("parity must be 0 or 1");
  const int m = net.m, n = net.n;
  // Diamonds around every opposite-parity grid point whose four neighbors
  // exist; grid corners of the right parity that touch no diamond are
  // dropped rather than kept isolated.
  std::vector<std::array<int, 4>> diamonds;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      if ((i + j) % 2 == parity) continue;
      if (i - 1 < 0 || i + 1 >= m || j - 1 < 0 || j + 1 >= n) continue;
      diamonds.push_back({net.vid(i - 1, j), net.vid(i, j - 1), net.vid(i + 1, j), net.vid(i, j + 1)});
    }
  if (diamonds.empty()) throw MeshError("sublattice has no complete diamond faces");
  SubNet sub;
  std::vector<int> dense(static_cast<size_t>(m * n), -1);
  std::vector<std::vector<int>> faces;
  for (const auto& d : diamonds) {
    std::vector<int> cycle;
    for (int parent : d) {
      if (dense[static_cast<size_t>(parent)] < 0) {
        dense[static_cast<size_t>(parent)] = static_cast<int>(sub.parentVertex.size());
        sub.parentVertex.push_back(parent);
        sub.z.push_back(positions[static_cast<size_t>(parent)]);
      }
      cycle.push_back(dense[static_cast<size_t>(parent)]);
    }
    faces.push_back(cycle);
  }
  sub.mesh = buildMesh(static_cast<int>(sub.parentVertex.size()), faces);
  requireNondegenerate(sub.mesh, sub.z);
  return sub;
}

}  // namespace holomin
