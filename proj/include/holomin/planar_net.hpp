#pragma once

// Planar realizations z : V -> C and discrete holomorphic quadratic
// differentials: real edge weights q with sum q = 0 and sum q/dz = 0 around
// every interior vertex. Includes the Moebius action on nets and the
// construction of q from cotangent-harmonic vertex functions.

#include <complex>
#include <limits>

#include "holomin/mesh.hpp"
#include "holomin/vec3.hpp"

namespace holomin {

using PlanarNet = std::vector<Complex>;

// Real value per interior edge, keyed by edge id (orientation-free).
struct QuadDiff {
  explicit QuadDiff(const Mesh& m) : values(m.edges.size(), 0.0) {}
  std::vector<double> values;

  double on(const Mesh& m, int i, int j) const {
    return values[static_cast<size_t>(m.requireEdge(i, j))];
  }
  void set(const Mesh& m, int i, int j, double v) {
    values[static_cast<size_t>(m.requireEdge(i, j))] = v;
  }
  double maxAbs() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
  }
};

inline void requireNondegenerate(const Mesh& mesh, const PlanarNet& z) {
  if (static_cast<int>(z.size()) != mesh.numVertices)
    throw MeshError("planar net size does not match vertex count");
  for (const Mesh::Edge& e : mesh.edges) {
    if (z[static_cast<size_t>(e.a)] == z[static_cast<size_t>(e.b)])
      throw MeshError("degenerate edge {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                      "}: equal planar positions");
  }
}

inline double maxEdgeLength(const Mesh& mesh, const PlanarNet& z) {
  double s = 0.0;
  for (const Mesh::Edge& e : mesh.edges)
    s = std::max(s, std::abs(z[static_cast<size_t>(e.b)] - z[static_cast<size_t>(e.a)]));
  return s;
}

// Residuals of the two defining sums per interior vertex, with the largest
// term magnitudes as the natural scales for relative tolerances.
struct QhdReport {
  std::vector<double> sumQ;         // per vertex, interior only
  std::vector<Complex> sumQOverDz;  // per vertex, interior only
  double termScaleQ = 0.0;
  double termScaleQOverDz = 0.0;
  int worstVertexQ = -1;
  int worstVertexQOverDz = -1;
  double maxSumQ = 0.0;
  double maxSumQOverDz = 0.0;

  bool passes(double relTol) const {
    const double floor = 1e-300;
    return maxSumQ <= relTol * std::max(termScaleQ, floor) &&
           maxSumQOverDz <= relTol * std::max(termScaleQOverDz, floor);
  }
};

inline QhdReport verifyQhd(const Mesh& mesh, const PlanarNet& z, const QuadDiff& q) {
  requireNondegenerate(mesh, z);
  QhdReport report;
  report.sumQ.assign(static_cast<size_t>(mesh.numVertices), 0.0);
  report.sumQOverDz.assign(static_cast<size_t>(mesh.numVertices), 0.0);
  for (int e = 0; e < mesh.numEdges(); ++e)
    if (mesh.edgeInterior[static_cast<size_t>(e)]) {
      const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
      const double qe = q.values[static_cast<size_t>(e)];
      report.termScaleQ = std::max(report.termScaleQ, std::abs(qe));
      report.termScaleQOverDz = std::max(
          report.termScaleQOverDz,
          std::abs(qe) / std::abs(z[static_cast<size_t>(edge.b)] - z[static_cast<size_t>(edge.a)]));
    }
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    double sq = 0.0;
    Complex sqdz = 0.0;
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) {
      const double qe = q.on(mesh, v, nbr);
      sq += qe;
      sqdz += qe / (z[static_cast<size_t>(nbr)] - z[static_cast<size_t>(v)]);
    }
    report.sumQ[static_cast<size_t>(v)] = sq;
    report.sumQOverDz[static_cast<size_t>(v)] = sqdz;
    if (std::abs(sq) > report.maxSumQ) {
      report.maxSumQ = std::abs(sq);
      report.worstVertexQ = v;
    }
    if (std::abs(sqdz) > report.maxSumQOverDz) {
      report.maxSumQOverDz = std::abs(sqdz);
      report.worstVertexQOverDz = v;
    }
  }
  return report;
}

// Normalized Moebius coefficients, ad - bc = 1.
struct MobiusCoeffs {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static MobiusCoeffs normalized(Complex a, Complex b, Complex c, Complex d) {
    const Complex det = a * d - b * c;
    if (std::abs(det) == 0.0) throw MeshError("Moebius coefficients are singular (ad - bc = 0)");
    const Complex s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
  }

  Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }

  MobiusCoeffs compose(const MobiusCoeffs& o) const {
    // Matrix product; determinants multiply, so normalization is preserved.
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

inline PlanarNet applyMobius(const Mesh& mesh, const PlanarNet& z, const MobiusCoeffs& phi) {
  PlanarNet w(z.size());
  for (size_t v = 0; v < z.size(); ++v) {
    const Complex denom = phi.c * z[v] + phi.d;
    if (std::abs(denom) <= 1e-14 * std::max(1.0, std::abs(phi.c * z[v]) + std::abs(phi.d)))
      throw MeshError("Moebius transform maps vertex " + std::to_string(v) + " to infinity");
    w[v] = (phi.a * z[v] + phi.b) / denom;
  }
  requireNondegenerate(mesh, w);
  return w;
}

// --- cotangent-harmonic machinery on triangulations -------------------------

inline double signedTriangleArea(Complex zi, Complex zj, Complex zk) {
  return 0.5 * std::imag(std::conj(zj - zi) * (zk - zi));
}

// Gradient of the piecewise-linear interpolant of u over one triangle, as the
// complex number c with du = Re(conj(c) dz).
inline Complex triangleGradient(Complex zi, Complex zj, Complex zk, double ui, double uj,
                                double uk) {
  const double area = signedTriangleArea(zi, zj, zk);
  if (area == 0.0) throw MeshError("degenerate triangle in planar net");
  const Complex num = ui * (zk - zj) + uj * (zi - zk) + uk * (zj - zi);
  return Complex(0.0, 1.0) * num / (2.0 * area);
}

namespace detail {

inline void requireTriangulated(const Mesh& mesh) {
  for (const auto& f : mesh.faces)
    if (f.size() != 3) throw MeshError("operation requires a triangulated mesh");
}

// Per-face gradients of u in the z-plane.
inline std::vector<Complex> faceGradients(const Mesh& mesh, const PlanarNet& z,
                                          const std::vector<double>& u) {
  requireTriangulated(mesh);
  std::vector<Complex> grads(static_cast<size_t>(mesh.numFaces()));
  for (int f = 0; f < mesh.numFaces(); ++f) {
    const auto& tri = mesh.faces[static_cast<size_t>(f)];
    grads[static_cast<size_t>(f)] =
        triangleGradient(z[static_cast<size_t>(tri[0])], z[static_cast<size_t>(tri[1])],
                         z[static_cast<size_t>(tri[2])], u[static_cast<size_t>(tri[0])],
                         u[static_cast<size_t>(tri[1])], u[static_cast<size_t>(tri[2])]);
  }
  return grads;
}

}  // namespace detail

// q_ij = i * (conj grad_left - conj grad_right) * dz(e_ij). The product is
// real up to roundoff whatever u is; the imaginary residue is checked against
// imagRelTol and then dropped.
inline QuadDiff qhdFromHarmonic(const Mesh& mesh, const PlanarNet& z, const std::vector<double>& u,
                                double imagRelTol = 1e-12) {
  requireNondegenerate(mesh, z);
  const auto grads = detail::faceGradients(mesh, z, u);
  QuadDiff q(mesh);
  double scale = 0.0;
  double worstImag = 0.0;
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    const Complex dz = z[static_cast<size_t>(edge.b)] - z[static_cast<size_t>(edge.a)];
    const Complex duDual =
        std::conj(grads[static_cast<size_t>(edge.leftOfAB)]) - std::conj(grads[static_cast<size_t>(edge.leftOfBA)]);
    const Complex product = Complex(0.0, 1.0) * duDual * dz;
    q.values[static_cast<size_t>(e)] = product.real();
    scale = std::max(scale, std::abs(product));
    worstImag = std::max(worstImag, std::abs(product.imag()));
  }
  if (worstImag > imagRelTol * std::max(scale, 1e-300))
    throw MeshError("quadratic differential from vertex function has imaginary residue " +
                    std::to_string(worstImag));
  return q;
}

// Cotangent-Laplacian residual per interior vertex:
//   sum_j (cot(angle jki) + cot(angle ilj)) (u_j - u_i).
inline std::vector<double> cotanHarmonicResiduals(const Mesh& mesh, const PlanarNet& z,
                                                  const std::vector<double>& u) {
  requireNondegenerate(mesh, z);
  detail::requireTriangulated(mesh);
  const auto cotAt = [&](int apex, int p, int r) {
    const Complex w1 = z[static_cast<size_t>(p)] - z[static_cast<size_t>(apex)];
    const Complex w2 = z[static_cast<size_t>(r)] - z[static_cast<size_t>(apex)];
    // Interior angle lies in (0,pi), so the sine is the unsigned cross.
    const double crossArea = std::abs(std::imag(std::conj(w1) * w2));
    if (crossArea == 0.0) throw MeshError("degenerate triangle in planar net");
    return (w1.real() * w2.real() + w1.imag() * w2.imag()) / crossArea;
  };
  std::vector<double> residuals(static_cast<size_t>(mesh.numVertices), 0.0);
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    double sum = 0.0;
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) {
      const int left = mesh.leftFace(v, nbr);
      const int right = mesh.rightFace(v, nbr);
      double weight = 0.0;
      for (int f : {left, right}) {
        const auto& tri = mesh.faces[static_cast<size_t>(f)];
        int apex = -1;
        for (int w : tri)
          if (w != v && w != nbr) apex = w;
        weight += cotAt(apex, v, nbr);
      }
      sum += weight * (u[static_cast<size_t>(nbr)] - u[static_cast<size_t>(v)]);
    }
    residuals[static_cast<size_t>(v)] = sum;
  }
  return residuals;
}

}  // namespace holomin
