#pragma once

// Weierstrass machinery: stereographic lift of a planar net, the C^3-valued
// dual 1-form of a holomorphic quadratic differential, integration to the
// complex surface, the associated family, conjugation, and Goursat
// transforms.

#include "holomin/dual_form.hpp"
#include "holomin/planar_net.hpp"

namespace holomin {

using GaussMap = std::vector<Vec3d>;

struct ComplexSurface {
  std::vector<Vec3c> F;  // one position per face (dual vertex)
  int baseFace = 0;
};

struct RealSurface {
  std::vector<Vec3d> f;  // one position per face (dual vertex)
};

inline constexpr double kAntipodalEps = 1e-8;

// Inverse stereographic projection onto the unit sphere.
inline Vec3d liftPoint(Complex z) {
  const double n2 = std::norm(z);
  return Vec3d{2.0 * z.real(), 2.0 * z.imag(), n2 - 1.0} / (1.0 + n2);
}

inline Complex stereographicProject(const Vec3d& n) {
  return Complex(n.x, n.y) / (1.0 - n.z);
}

inline GaussMap stereographicLift(const PlanarNet& z) {
  GaussMap gauss(z.size());
  for (size_t v = 0; v < z.size(); ++v) gauss[v] = liftPoint(z[v]);
  return gauss;
}

// Rejects edges whose endpoints are (nearly) antipodal on the sphere; the
// edge scalar of the representation blows up there.
inline void requireAdmissible(const Mesh& mesh, const GaussMap& gauss,
                              double eps = kAntipodalEps) {
  for (const Mesh::Edge& e : mesh.edges) {
    if (mag(gauss[static_cast<size_t>(e.a)] + gauss[static_cast<size_t>(e.b)]) < eps)
      throw MeshError("inadmissible Gauss map: vertices " + std::to_string(e.a) + " and " +
                      std::to_string(e.b) + " are antipodal");
  }
}

inline Vec3c weierstrassEdgeValue(Complex zi, Complex zj, double q) {
  const Complex zz = zi * zj;
  return (q / (zj - zi)) * Vec3c{1.0 - zz, Complex(0.0, 1.0) * (1.0 + zz), zi + zj};
}

inline constexpr double kQhdRelTol = 1e-9;

// The defining dual 1-form of the representation. Refuses non-holomorphic q;
// closedness at interior vertices is then automatic.
inline DualOneForm<Vec3c> weierstrassForm(const Mesh& mesh, const PlanarNet& z, const QuadDiff& q,
                                          double qhdRelTol = kQhdRelTol) {
  const QhdReport report = verifyQhd(mesh, z, q);
  if (!report.passes(qhdRelTol)) {
    const int v = report.maxSumQ / std::max(report.termScaleQ, 1e-300) >
                          report.maxSumQOverDz / std::max(report.termScaleQOverDz, 1e-300)
                      ? report.worstVertexQ
                      : report.worstVertexQOverDz;
    throw MeshError("quadratic differential is not holomorphic: worst residual at vertex " +
                    std::to_string(v));
  }
  DualOneForm<Vec3c> form(mesh);
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    form.values[static_cast<size_t>(e)] =
        weierstrassEdgeValue(z[static_cast<size_t>(edge.a)], z[static_cast<size_t>(edge.b)],
                             q.values[static_cast<size_t>(e)]);
  }
  return form;
}

inline ComplexSurface integrateSurface(const Mesh& mesh, const DualOneForm<Vec3c>& form,
                                       int baseFace = 0, double relTol = kClosednessRelTol,
                                       TreeOrder order = TreeOrder::BfsAscending) {
  ComplexSurface surface;
  surface.baseFace = baseFace;
  surface.F = integrateDualOneForm(mesh, form, baseFace, Vec3c{}, relTol, order);
  return surface;
}

// Member of the associated family, f^theta = Re(e^{i theta} F).
inline RealSurface associatedSurface(const ComplexSurface& surface, double theta) {
  const Complex phase = std::exp(Complex(0.0, theta));
  RealSurface out;
  out.f.resize(surface.F.size());
  for (size_t k = 0; k < surface.F.size(); ++k) out.f[k] = real(phase * surface.F[k]);
  return out;
}

// Conjugate of an A-minimal surface: integrates N x df. The two candidate
// forms N_i x df and N_j x df must agree (that is A-minimality); closedness
// failure is reported against the worst vertex.
inline RealSurface conjugateFromAminimal(const Mesh& mesh, const RealSurface& f,
                                         const GaussMap& gauss, int baseFace = 0,
                                         double relTol = kClosednessRelTol) {
  DualOneForm<Vec3d> omega(mesh);
  double scale = 0.0;
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    const Vec3d df = f.f[static_cast<size_t>(edge.leftOfAB)] - f.f[static_cast<size_t>(edge.leftOfBA)];
    omega.values[static_cast<size_t>(e)] = cross(gauss[static_cast<size_t>(edge.a)], df);
    scale = std::max(scale, mag(df));
  }
  // Consistency of the two cross products, i.e. dN x df = 0.
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    const Vec3d df = f.f[static_cast<size_t>(edge.leftOfAB)] - f.f[static_cast<size_t>(edge.leftOfBA)];
    const Vec3d mismatch = cross(gauss[static_cast<size_t>(edge.b)] - gauss[static_cast<size_t>(edge.a)], df);
    if (mag(mismatch) > 1e-7 * std::max(scale, 1e-300))
      throw MeshError("surface is not A-minimal: dN x df = " + std::to_string(mag(mismatch)) +
                      " on edge {" + std::to_string(edge.a) + "," + std::to_string(edge.b) + "}");
  }
  RealSurface out;
  out.f = integrateDualOneForm(mesh, omega, baseFace, Vec3d{}, relTol);
  return out;
}

// --- Goursat transforms ------------------------------------------------------

// Complex-orthogonal matrix induced by a normalized Moebius transformation.
inline Mat3c goursatMatrix(const MobiusCoeffs& phi) {
  const Complex a = phi.a, b = phi.b, c = phi.c, d = phi.d;
  const Complex i(0.0, 1.0);
  Mat3c m;
  m.rows[0] = {0.5 * (a * a - b * b - c * c + d * d), 0.5 * i * (a * a + b * b - c * c - d * d),
               -a * b + c * d};
  m.rows[1] = {0.5 * i * (-a * a + b * b - c * c + d * d), 0.5 * (a * a + b * b + c * c + d * d),
               i * (a * b + c * d)};
  m.rows[2] = {-a * c + b * d, -i * (a * c + b * d), a * d + b * c};
  return m;
}

struct GoursatResult {
  ComplexSurface F;
  PlanarNet z;
  GaussMap gauss;
  Mat3c matrix;
};

// Transforms a surface based at the origin by acting with the Goursat matrix
// and moves the Gauss map by the Moebius transformation. The transformed
// differences satisfy the representation formula on the transformed net.
inline GoursatResult goursatTransform(const Mesh& mesh, const ComplexSurface& surface,
                                      const PlanarNet& z, const MobiusCoeffs& phi,
                                      double antipodalEps = kAntipodalEps) {
  GoursatResult out;
  out.matrix = goursatMatrix(phi);
  out.z = applyMobius(mesh, z, phi);
  out.gauss = stereographicLift(out.z);
  requireAdmissible(mesh, out.gauss, antipodalEps);
  out.F.baseFace = surface.baseFace;
  out.F.F.resize(surface.F.size());
  const Vec3c base = surface.F[static_cast<size_t>(surface.baseFace)];
  for (size_t k = 0; k < surface.F.size(); ++k)
    out.F.F[k] = out.matrix.apply(surface.F[k] - base);
  return out;
}

}  // namespace holomin
