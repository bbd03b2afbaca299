#include <catch_amalgamated.hpp>

#include "../support/fixtures.hpp"

using namespace holomin;
using holomin::testing::pnetFamily;
using holomin::testing::PnetFamily;

namespace {

double maxVec3cDev(const Vec3c& a, const Vec3c& b) { return mag(a - b); }

}  // namespace

TEST_CASE("stereographic lift hits the textbook points") {
  CHECK(mag(liftPoint(Complex(0, 0)) - Vec3d{0, 0, -1}) <= 1e-15);
  CHECK(mag(liftPoint(Complex(1, 0)) - Vec3d{1, 0, 0}) <= 1e-15);
  CHECK(mag(liftPoint(Complex(1, 1)) - Vec3d{2.0 / 3, 2.0 / 3, 1.0 / 3}) <= 1e-15);
  for (const Complex z : {Complex(0.3, -2.0), Complex(4.0, 1.0), Complex(-0.1, 0.0)}) {
    CHECK(mag(liftPoint(z)) == Catch::Approx(1.0).margin(1e-14));
    CHECK(std::abs(stereographicProject(liftPoint(z)) - z) <= 1e-13);
  }
}

TEST_CASE("antipodal edges are flagged") {
  // z and -1/conj(z) lift to antipodal sphere points.
  const Complex z0(0.7, 0.4);
  const Complex z1 = -1.0 / std::conj(z0);
  const Mesh mesh = buildMesh(3, {{0, 1, 2}});
  const GaussMap gauss = stereographicLift({z0, z1, Complex(2.0, 0.0)});
  CHECK(mag(gauss[0] + gauss[1]) <= 1e-14);
  CHECK_THROWS_WITH(requireAdmissible(mesh, gauss),
                    Catch::Matchers::ContainsSubstring("antipodal"));
}

TEST_CASE("edge values match direct substitution") {
  // Edge 0 -> 1 with q = 1.
  const Vec3c e1 = weierstrassEdgeValue(Complex(0, 0), Complex(1, 0), 1.0);
  CHECK(maxVec3cDev(e1, Vec3c{1.0, Complex(0, 1), 1.0}) <= 1e-15);
  // Edge 0 -> i with q = -1.
  const Vec3c e2 = weierstrassEdgeValue(Complex(0, 0), Complex(0, 1), -1.0);
  CHECK(maxVec3cDev(e2, Vec3c{Complex(0, 1), -1.0, -1.0}) <= 1e-15);
}

TEST_CASE("form of a holomorphic differential is closed") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 3, .n = 3});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const auto form = weierstrassForm(net.mesh, net.z, fam.q);
  const auto worst = worstClosednessResidual(net.mesh, form);
  CHECK(worst.magnitude <= 1e-14);
}

TEST_CASE("closedness and holomorphicity fail together") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 4, .n = 4});
  PnetFamily fam = pnetFamily(net.mesh, net.z);
  QuadDiff broken = fam.q;
  broken.set(net.mesh, net.vid(1, 1), net.vid(2, 1), 0.35);
  CHECK(!verifyQhd(net.mesh, net.z, broken).passes(1e-9));
  CHECK_THROWS_WITH(weierstrassForm(net.mesh, net.z, broken),
                    Catch::Matchers::ContainsSubstring("not holomorphic"));
  // Bypassing the refusal, the raw form is visibly non-closed.
  DualOneForm<Vec3c> raw(net.mesh);
  for (int e = 0; e < net.mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = net.mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    raw.values[static_cast<size_t>(e)] =
        weierstrassEdgeValue(net.z[static_cast<size_t>(edge.a)], net.z[static_cast<size_t>(edge.b)],
                             broken.values[static_cast<size_t>(e)]);
  }
  CHECK(worstClosednessResidual(net.mesh, raw).magnitude > 1e-3);
}

TEST_CASE("zero differential integrates to a constant surface") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 3, .n = 3});
  const auto surface =
      integrateSurface(net.mesh, weierstrassForm(net.mesh, net.z, QuadDiff(net.mesh)));
  for (const Vec3c& F : surface.F) CHECK(mag(F) == 0.0);
}

TEST_CASE("surface integration is tree independent") {
  const GridNet net = generateNet(NetKind::Exp, {.m = 6, .n = 6, .a = 0.3, .b = 0.4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const auto form = weierstrassForm(net.mesh, net.z, fam.q);
  const auto f1 = integrateSurface(net.mesh, form, 0, kClosednessRelTol, TreeOrder::BfsAscending);
  const auto f2 = integrateSurface(net.mesh, form, 0, kClosednessRelTol, TreeOrder::BfsDescending);
  const double scale = form.maxEdgeMagnitude();
  for (size_t k = 0; k < f1.F.size(); ++k) CHECK(maxVec3cDev(f1.F[k], f2.F[k]) <= 1e-13 * scale);
}

TEST_CASE("edge identities tie the form to the Gauss map") {
  const GridNet net = generateNet(NetKind::Exp, {.m = 5, .n = 5, .a = 0.25, .b = 0.45});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const auto form = weierstrassForm(net.mesh, net.z, fam.q);
  double scale = 0.0;
  for (int e = 0; e < net.mesh.numEdges(); ++e)
    if (net.mesh.edgeInterior[static_cast<size_t>(e)])
      scale = std::max(scale, mag(form.values[static_cast<size_t>(e)]));
  for (int e = 0; e < net.mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = net.mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    const Complex zi = net.z[static_cast<size_t>(edge.a)], zj = net.z[static_cast<size_t>(edge.b)];
    const Vec3d ni = fam.gauss[static_cast<size_t>(edge.a)], nj = fam.gauss[static_cast<size_t>(edge.b)];
    const double s = fam.q.values[static_cast<size_t>(e)] * (1.0 + std::norm(zi)) *
                     (1.0 + std::norm(zj)) / (2.0 * std::norm(zj - zi));
    const Vec3c v = form.values[static_cast<size_t>(e)];
    CHECK(mag(real(v) - s * (nj - ni)) <= 1e-10 * scale);
    CHECK(mag(real(Complex(0, 1) * v) - s * cross(ni, nj)) <= 1e-10 * scale);
    // Planarity of the conjugate surface's faces.
    CHECK(std::abs(dot(ni, real(Complex(0, 1) * v))) <= 1e-12 * scale);
    CHECK(std::abs(dot(nj, real(Complex(0, 1) * v))) <= 1e-12 * scale);
  }
}

TEST_CASE("associated family phases act componentwise") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 4, .n = 4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const auto& F = fam.surface;
  const RealSurface f0 = associatedSurface(F, 0.0);
  const RealSurface fPi = associatedSurface(F, M_PI);
  const RealSurface fHalf = associatedSurface(F, M_PI / 2.0);
  for (size_t k = 0; k < F.F.size(); ++k) {
    CHECK(mag(f0.f[k] - real(F.F[k])) <= 1e-15);
    CHECK(mag(fPi.f[k] + real(F.F[k])) <= 1e-14);
    CHECK(mag(fHalf.f[k] + imag(F.F[k])) <= 1e-14);
  }
}

TEST_CASE("conjugation matches the quarter turn of the family") {
  const GridNet net = generateNet(NetKind::Exp, {.m = 6, .n = 6, .a = 0.3, .b = 0.4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const RealSurface f = associatedSurface(fam.surface, 0.0);
  const RealSurface conj = conjugateFromAminimal(net.mesh, f, fam.gauss);
  const RealSurface quarter = associatedSurface(fam.surface, M_PI / 2.0);
  const double scale = surfaceScale(net.mesh, f);
  // Equal up to one global translation.
  const Vec3d shift = quarter.f[0] - conj.f[0];
  for (size_t k = 0; k < conj.f.size(); ++k)
    CHECK(mag(conj.f[k] + shift - quarter.f[k]) <= 1e-10 * scale);
}

TEST_CASE("conjugating a constant surface stays constant") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 3, .n = 3});
  RealSurface f;
  f.f.assign(static_cast<size_t>(net.mesh.numFaces()), Vec3d{1.0, 2.0, 3.0});
  const RealSurface conj = conjugateFromAminimal(net.mesh, f, stereographicLift(net.z));
  for (const Vec3d& v : conj.f) CHECK(mag(v) == 0.0);
}

TEST_CASE("conjugation rejects surfaces that are not A-minimal") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 4, .n = 4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  RealSurface f = associatedSurface(fam.surface, 0.0);
  f.f[4] += Vec3d{0.05, 0.0, 0.0};
  CHECK_THROWS_WITH(conjugateFromAminimal(net.mesh, f, fam.gauss),
                    Catch::Matchers::ContainsSubstring("not A-minimal"));
}

TEST_CASE("Goursat matrix special cases") {
  CHECK(maxEntryDeviation(goursatMatrix(MobiusCoeffs{}), Mat3c::identity()) == 0.0);

  const double s = 0.37;
  const Mat3c dil = goursatMatrix(MobiusCoeffs::normalized(std::exp(s), 0.0, 0.0, std::exp(-s)));
  Mat3c expected;
  expected.rows[0] = {std::cosh(2 * s), Complex(0, 1) * std::sinh(2 * s), 0.0};
  expected.rows[1] = {Complex(0, -1) * std::sinh(2 * s), std::cosh(2 * s), 0.0};
  expected.rows[2] = {0.0, 0.0, 1.0};
  CHECK(maxEntryDeviation(dil, expected) <= 1e-14);

  const double phi = 1.1;
  const Mat3c rot = goursatMatrix(
      MobiusCoeffs::normalized(std::exp(Complex(0, phi / 2)), 0.0, 0.0, std::exp(Complex(0, -phi / 2))));
  Mat3c rz;
  rz.rows[0] = {std::cos(phi), -std::sin(phi), 0.0};
  rz.rows[1] = {std::sin(phi), std::cos(phi), 0.0};
  rz.rows[2] = {0.0, 0.0, 1.0};
  CHECK(maxEntryDeviation(rot, rz) <= 1e-14);
}

TEST_CASE("Goursat matrices are complex orthogonal") {
  auto rng = holomin::testing::makeRng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Complex a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng)), d(g(rng), g(rng));
    const Complex det = a * d - b * c;
    if (std::abs(det) < 0.3 || std::abs(det) > 30.0) {
      --trial;
      continue;
    }
    const Mat3c m = goursatMatrix(MobiusCoeffs::normalized(a, b, c, d));
    CHECK(maxEntryDeviation(m * m.transposed(), Mat3c::identity()) <= 1e-12);
  }
}

TEST_CASE("Goursat matrices compose with the Moebius group") {
  auto rng = holomin::testing::makeRng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const MobiusCoeffs phi = MobiusCoeffs::normalized(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)),
                                                      Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    const MobiusCoeffs psi = MobiusCoeffs::normalized(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)),
                                                      Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    const Mat3c lhs = goursatMatrix(phi.compose(psi));
    const Mat3c rhs = goursatMatrix(phi) * goursatMatrix(psi);
    // With coefficients composed as matrices the double-cover sign is fixed.
    CHECK(maxEntryDeviation(lhs, rhs) <= 1e-11);
  }
}

TEST_CASE("identity transform leaves the surface untouched") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 4, .n = 4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const GoursatResult out = goursatTransform(net.mesh, fam.surface, net.z, MobiusCoeffs{});
  for (size_t k = 0; k < fam.surface.F.size(); ++k)
    CHECK(maxVec3cDev(out.F.F[k], fam.surface.F[k]) == 0.0);
}

TEST_CASE("rotation transforms act as rigid rotations") {
  const GridNet net = generateNet(NetKind::Exp, {.m = 5, .n = 5, .a = 0.3, .b = 0.4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const double phi = 0.8;
  const MobiusCoeffs rot =
      MobiusCoeffs::normalized(std::exp(Complex(0, phi / 2)), 0.0, 0.0, std::exp(Complex(0, -phi / 2)));
  const GoursatResult out = goursatTransform(net.mesh, fam.surface, net.z, rot);
  // Edge lengths of the real parts agree: the family is rigidly rotated.
  const RealSurface before = associatedSurface(fam.surface, 0.0);
  const RealSurface after = associatedSurface(out.F, 0.0);
  const double scale = surfaceScale(net.mesh, before);
  for (int e = 0; e < net.mesh.numEdges(); ++e) {
    if (!net.mesh.edgeInterior[static_cast<size_t>(e)]) continue;
    CHECK(std::abs(mag(dualEdgeVector(net.mesh, before, e)) -
                   mag(dualEdgeVector(net.mesh, after, e))) <= 1e-12 * scale);
  }
}

TEST_CASE("transformed differences satisfy the representation on the moved net") {
  const GridNet net = generateNet(NetKind::Exp, {.m = 5, .n = 5, .a = 0.3, .b = 0.4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  auto rng = holomin::testing::makeRng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const MobiusCoeffs phi = holomin::testing::randomAdmissibleMobius(rng, net.mesh, net.z);
    const GoursatResult out = goursatTransform(net.mesh, fam.surface, net.z, phi);
    const auto expected = weierstrassForm(net.mesh, out.z, fam.q);
    double scale = 0.0;
    for (int e = 0; e < net.mesh.numEdges(); ++e)
      if (net.mesh.edgeInterior[static_cast<size_t>(e)])
        scale = std::max(scale, mag(expected.values[static_cast<size_t>(e)]));
    for (int e = 0; e < net.mesh.numEdges(); ++e) {
      const Mesh::Edge& edge = net.mesh.edges[static_cast<size_t>(e)];
      if (!edge.interior()) continue;
      const Vec3c dF = out.F.F[static_cast<size_t>(edge.leftOfAB)] - out.F.F[static_cast<size_t>(edge.leftOfBA)];
      CHECK(mag(dF - expected.values[static_cast<size_t>(e)]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("axis rotations carry the surface by the real rotation matrix") {
  const GridNet net = generateNet(NetKind::Exp, {.m = 5, .n = 5, .a = 0.3, .b = 0.4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const double phi = 0.8;
  const MobiusCoeffs rot = MobiusCoeffs::normalized(std::exp(Complex(0, phi / 2)), 0.0, 0.0,
                                                    std::exp(Complex(0, -phi / 2)));
  const GoursatResult out = goursatTransform(net.mesh, fam.surface, net.z, rot);
  const auto rotate = [&](const Vec3d& v) {
    return Vec3d{std::cos(phi) * v.x - std::sin(phi) * v.y,
                 std::sin(phi) * v.x + std::cos(phi) * v.y, v.z};
  };
  const RealSurface before = associatedSurface(fam.surface, 0.0);
  const RealSurface after = associatedSurface(out.F, 0.0);
  const double scale = surfaceScale(net.mesh, before);
  for (size_t k = 0; k < before.f.size(); ++k)
    CHECK(mag(after.f[k] - rotate(before.f[k])) <= 1e-12 * scale);
  // Curvature reports are identical: the scalar mean curvature of the
  // rotated conjugate member matches vertexwise.
  const auto hBefore = scalarMeanCurvature(net.mesh, associatedSurface(fam.surface, M_PI / 2),
                                           fam.gauss);
  const auto hAfter = scalarMeanCurvature(net.mesh, associatedSurface(out.F, M_PI / 2), out.gauss);
  for (int v : net.mesh.interiorVertices())
    CHECK(std::abs(hBefore[static_cast<size_t>(v)] - hAfter[static_cast<size_t>(v)]) <= 1e-12);
}

TEST_CASE("differences of the integrated surface reproduce the form") {
  const GridNet net = generateNet(NetKind::Exp, {.m = 6, .n = 6, .a = 0.3, .b = 0.4});
  const PnetFamily fam = pnetFamily(net.mesh, net.z);
  const auto form = weierstrassForm(net.mesh, net.z, fam.q);
  const auto back = faceDifferential(net.mesh, fam.surface.F);
  const double scale = form.maxEdgeMagnitude();
  for (int e = 0; e < net.mesh.numEdges(); ++e)
    if (net.mesh.edgeInterior[static_cast<size_t>(e)])
      CHECK(mag(back.values[static_cast<size_t>(e)] - form.values[static_cast<size_t>(e)]) <=
            1e-10 * scale);
}
