#pragma once

// Shared geometry fixtures for the test suites.

#include <random>

#include "holomin/holomin.hpp"

namespace holomin::testing {

// Triangulated m x n grid, all diagonals in the same direction, z = i + I j.
struct TriGrid {
  int m = 0, n = 0;
  Mesh mesh;
  PlanarNet z;
  int vid(int i, int j) const { return j * m + i; }
};

inline TriGrid triangulatedGrid(int m, int n) {
  TriGrid grid;
  grid.m = m;
  grid.n = n;
  std::vector<std::vector<int>> faces;
  const auto vid = [m](int i, int j) { return j * m + i; };
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < m; ++i) {
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  grid.mesh = buildMesh(m * n, faces);
  grid.z.resize(static_cast<size_t>(m * n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) grid.z[static_cast<size_t>(vid(i, j))] = Complex(i, j);
  return grid;
}

// Octahedron with unit-axis vertices, faces CCW seen from outside. The dual
// realization with cube corners has every dihedral angle at 90 degrees.
struct OctahedronCube {
  Mesh mesh;          // vertices 0..5 = +x,-x,+y,-y,+z,-z
  GaussMap normals;   // the vertex positions themselves
  RealSurface cube;   // one corner of the cube per face
};

inline OctahedronCube octahedronWithCube(double cubeEdge = 1.0) {
  OctahedronCube oc;
  const std::vector<std::vector<int>> faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                               {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  oc.mesh = buildMesh(6, faces);
  oc.normals = {Vec3d{1, 0, 0}, Vec3d{-1, 0, 0}, Vec3d{0, 1, 0},
                Vec3d{0, -1, 0}, Vec3d{0, 0, 1}, Vec3d{0, 0, -1}};
  oc.cube.f.resize(faces.size());
  const auto sgn = [&](int face, int axisPlus, int axisMinus) {
    for (int v : faces[static_cast<size_t>(face)]) {
      if (v == axisPlus) return 0.5 * cubeEdge;
      if (v == axisMinus) return -0.5 * cubeEdge;
    }
    throw MeshError("octahedron face misses an axis");
  };
  for (int f = 0; f < oc.mesh.numFaces(); ++f)
    oc.cube.f[static_cast<size_t>(f)] = Vec3d{sgn(f, 0, 1), sgn(f, 2, 3), sgn(f, 4, 5)};
  return oc;
}

// Cone of triangles over a regular ring; the apex is the only interior vertex.
struct Tent {
  Mesh mesh;
  std::vector<Vec3d> f;
  int apex = 0;
};

inline Tent tent(int ringSize = 8, double radius = 1.0, double height = 1.0) {
  Tent t;
  std::vector<std::vector<int>> faces;
  for (int k = 0; k < ringSize; ++k) faces.push_back({0, 1 + k, 1 + (k + 1) % ringSize});
  t.mesh = buildMesh(ringSize + 1, faces);
  t.f.resize(static_cast<size_t>(ringSize + 1));
  t.f[0] = {0.0, 0.0, height};
  for (int k = 0; k < ringSize; ++k) {
    const double phi = 2.0 * M_PI * k / ringSize;
    t.f[static_cast<size_t>(1 + k)] = {radius * std::cos(phi), radius * std::sin(phi), 0.0};
  }
  return t;
}

// Triangulated grid patch with deterministic pseudo-random heights.
struct Patch3d {
  Mesh mesh;
  std::vector<Vec3d> f;
};

inline Patch3d randomPatch(int m, int n, unsigned seed, double amplitude = 0.3) {
  const TriGrid grid = triangulatedGrid(m, n);
  Patch3d patch;
  patch.mesh = grid.mesh;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  patch.f.resize(grid.z.size());
  for (size_t v = 0; v < grid.z.size(); ++v)
    patch.f[v] = {grid.z[v].real(), grid.z[v].imag(), u(rng)};
  return patch;
}

inline std::mt19937_64 makeRng(unsigned seed) { return std::mt19937_64(seed); }

// Random normalized Moebius coefficients with moderate determinant, retried
// until no vertex of z maps near infinity and the lifted net is admissible.
inline MobiusCoeffs randomAdmissibleMobius(std::mt19937_64& rng, const Mesh& mesh,
                                           const PlanarNet& z, double antipodalEps = kAntipodalEps) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Complex a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng)), d(g(rng), g(rng));
    const Complex det = a * d - b * c;
    if (std::abs(det) < 0.3 || std::abs(det) > 30.0) continue;
    const MobiusCoeffs phi = MobiusCoeffs::normalized(a, b, c, d);
    try {
      const PlanarNet w = applyMobius(mesh, z, phi);
      requireAdmissible(mesh, stereographicLift(w), antipodalEps);
      return phi;
    } catch (const MeshError&) {
      continue;
    }
  }
  throw MeshError("failed to sample an admissible Moebius transformation");
}

// Canonical minimal-surface family of a P-net: the labeling scaled to the
// normalization df = mu (N_j - N_i)/|N_j - N_i|^2, i.e. q = mu/2.
struct PnetFamily {
  QuadDiff q;
  GaussMap gauss;
  ComplexSurface surface;
};

inline PnetFamily pnetFamily(const Mesh& mesh, const PlanarNet& z, int baseFace = 0) {
  const PLabeling mu = pLabeling(mesh);
  QuadDiff q(mesh);
  for (size_t e = 0; e < mu.values.size(); ++e) q.values[e] = 0.5 * mu.values[e];
  PnetFamily fam{q, stereographicLift(z), {}};
  requireAdmissible(mesh, fam.gauss);
  fam.surface = integrateSurface(mesh, weierstrassForm(mesh, z, q), baseFace);
  return fam;
}

// Patch of the cubic Schwarz-P-style polyhedron: boundary squares of the
// solid {unit cubes with at least two even coordinates}, restricted to a
// window of cube coordinates in [lo, hi]^3. Faces are oriented outward.
struct CubicPatch {
  Mesh mesh;                  // the polyhedron itself (vertices = corners)
  std::vector<Vec3d> corners; // positions per vertex
  GaussMap faceNormals;       // outward unit normal per square
};

inline CubicPatch cubicSchwarzPatch(int lo = -2, int hi = 1) {
  const auto inSolid = [](int i, int j, int k) {
    const int evens = (i % 2 == 0) + (j % 2 == 0) + (k % 2 == 0);
    return evens >= 2;
  };
  const auto inWindow = [&](int i, int j, int k) {
    return i >= lo && i <= hi && j >= lo && j <= hi && k >= lo && k <= hi;
  };

  std::vector<std::array<int, 3>> corners;
  std::unordered_map<int64_t, int> cornerIndex;
  const auto key = [](int x, int y, int z) {
    return (static_cast<int64_t>(x + 512) << 20) | (static_cast<int64_t>(y + 512) << 10) |
           static_cast<int64_t>(z + 512);
  };
  const auto corner = [&](int x, int y, int z) {
    const auto [it, inserted] = cornerIndex.try_emplace(key(x, y, z), static_cast<int>(corners.size()));
    if (inserted) corners.push_back({x, y, z});
    return it->second;
  };

  std::vector<std::vector<int>> faces;
  std::vector<Vec3d> normals;
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j)
      for (int k = lo; k <= hi; ++k) {
        if (!inSolid(i, j, k)) continue;
        // Outward square towards each non-solid neighbor inside the window.
        const std::array<std::array<int, 3>, 6> dirs = {
            {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
        for (const auto& d : dirs) {
          const int ni = i + d[0], nj = j + d[1], nk = k + d[2];
          if (!inWindow(ni, nj, nk) || inSolid(ni, nj, nk)) continue;
          // Square between the two cubes, CCW around the outward normal d.
          const int bx = i + (d[0] > 0 ? 1 : 0), by = j + (d[1] > 0 ? 1 : 0),
                    bz = k + (d[2] > 0 ? 1 : 0);
          std::vector<int> cycle;
          if (d[0] != 0) {
            cycle = {corner(bx, j, k), corner(bx, j + 1, k), corner(bx, j + 1, k + 1),
                     corner(bx, j, k + 1)};
            if (d[0] < 0) std::reverse(cycle.begin(), cycle.end());
          } else if (d[1] != 0) {
            cycle = {corner(i, by, k), corner(i, by, k + 1), corner(i + 1, by, k + 1),
                     corner(i + 1, by, k)};
            if (d[1] < 0) std::reverse(cycle.begin(), cycle.end());
          } else {
            cycle = {corner(i, j, bz), corner(i + 1, j, bz), corner(i + 1, j + 1, bz),
                     corner(i, j + 1, bz)};
            if (d[2] < 0) std::reverse(cycle.begin(), cycle.end());
          }
          faces.push_back(cycle);
          normals.push_back(Vec3d{static_cast<double>(d[0]), static_cast<double>(d[1]),
                                  static_cast<double>(d[2])});
        }
      }

  CubicPatch patch;
  patch.mesh = buildMesh(static_cast<int>(corners.size()), faces);
  patch.corners.resize(corners.size());
  for (size_t c = 0; c < corners.size(); ++c)
    patch.corners[c] = Vec3d{static_cast<double>(corners[c][0]), static_cast<double>(corners[c][1]),
                             static_cast<double>(corners[c][2])};
  patch.faceNormals = normals;
  return patch;
}

}  // namespace holomin::testing
