#include <catch_amalgamated.hpp>

#include "../support/fixtures.hpp"

using namespace holomin;
using holomin::testing::triangulatedGrid;
using holomin::testing::TriGrid;

namespace {

QuadDiff gridLabelingAsQ(const Mesh& mesh) {
  const PLabeling mu = pLabeling(mesh);
  QuadDiff q(mesh);
  for (size_t e = 0; e < mu.values.size(); ++e) q.values[e] = mu.values[e];
  return q;
}

// Independent oracle for the diagonal-triangulated unit grid: the cotangent
// weights reduce to twice the 5-point Laplacian (axis weights cot45+cot45,
// diagonal weights cot90 = 0).
double fivePointLaplacian(const TriGrid& grid, const std::vector<double>& u, int i, int j) {
  const auto at = [&](int a, int b) { return u[static_cast<size_t>(grid.vid(a, b))]; };
  return at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j);
}

}  // namespace

TEST_CASE("integer grid labeling is a holomorphic quadratic differential") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 5, .n = 5});
  const QuadDiff q = gridLabelingAsQ(net.mesh);
  const QhdReport report = verifyQhd(net.mesh, net.z, q);
  CHECK(report.maxSumQ <= 1e-12);
  CHECK(report.maxSumQOverDz <= 1e-12);
  CHECK(report.passes(1e-12));
}

TEST_CASE("zero differential has zero residuals") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 4, .n = 4});
  const QhdReport report = verifyQhd(net.mesh, net.z, QuadDiff(net.mesh));
  CHECK(report.maxSumQ == 0.0);
  CHECK(report.maxSumQOverDz == 0.0);
}

TEST_CASE("single nonzero edge shows up at both endpoints") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 4, .n = 4});
  QuadDiff q(net.mesh);
  const int a = net.vid(1, 1), b = net.vid(2, 1);
  q.set(net.mesh, a, b, 1.0);
  const QhdReport report = verifyQhd(net.mesh, net.z, q);
  CHECK(report.sumQ[static_cast<size_t>(a)] == 1.0);
  CHECK(report.sumQ[static_cast<size_t>(b)] == 1.0);
  CHECK(!report.passes(1e-9));
}

TEST_CASE("identity coefficients leave the net unchanged") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 4, .n = 4});
  const PlanarNet w = applyMobius(net.mesh, net.z, MobiusCoeffs{});
  for (size_t v = 0; v < w.size(); ++v) CHECK(w[v] == net.z[v]);
}

TEST_CASE("inversion normalizes and evaluates as 1/z") {
  const MobiusCoeffs inv = MobiusCoeffs::normalized(0.0, 1.0, 1.0, 0.0);
  CHECK(std::abs(inv.a * inv.d - inv.b * inv.c - 1.0) <= 1e-15);
  CHECK(std::abs(inv.apply(2.0) - 0.5) <= 1e-15);
  CHECK_THROWS_WITH(MobiusCoeffs::normalized(1.0, 2.0, 2.0, 4.0),
                    Catch::Matchers::ContainsSubstring("singular"));
}

TEST_CASE("a vertex mapping to infinity is named") {
  // Shift the grid so one vertex sits at -d/c = 1+1i.
  const GridNet net = generateNet(NetKind::Grid, {.m = 3, .n = 3});
  const MobiusCoeffs phi = MobiusCoeffs::normalized(1.0, 0.0, 1.0, Complex(-1.0, -1.0));
  CHECK_THROWS_WITH(applyMobius(net.mesh, net.z, phi),
                    Catch::Matchers::ContainsSubstring("infinity") &&
                        Catch::Matchers::ContainsSubstring("4"));
}

TEST_CASE("holomorphicity is Moebius invariant") {
  const GridNet net = generateNet(NetKind::Grid, {.m = 6, .n = 6});
  const QuadDiff q = gridLabelingAsQ(net.mesh);
  auto rng = holomin::testing::makeRng(101);
  for (int trial = 0; trial < 25; ++trial) {
    const MobiusCoeffs phi = holomin::testing::randomAdmissibleMobius(rng, net.mesh, net.z);
    const PlanarNet w = applyMobius(net.mesh, net.z, phi);
    const QhdReport report = verifyQhd(net.mesh, w, q);
    CHECK(report.passes(1e-9));
  }
}

TEST_CASE("linear vertex functions give the zero differential") {
  const TriGrid grid = triangulatedGrid(5, 5);
  std::vector<double> u(grid.z.size());
  for (size_t v = 0; v < grid.z.size(); ++v)
    u[v] = 2.0 * grid.z[v].real() - 0.7 * grid.z[v].imag() + 3.0;
  const QuadDiff q = qhdFromHarmonic(grid.mesh, grid.z, u);
  CHECK(q.maxAbs() <= 1e-13);
  for (double r : cotanHarmonicResiduals(grid.mesh, grid.z, u)) CHECK(std::abs(r) <= 1e-12);
}

TEST_CASE("constant vertex functions are harmonic") {
  const TriGrid grid = triangulatedGrid(4, 4);
  const std::vector<double> u(grid.z.size(), 5.0);
  for (double r : cotanHarmonicResiduals(grid.mesh, grid.z, u)) CHECK(r == 0.0);
}

TEST_CASE("harmonic monomials yield holomorphic differentials") {
  const TriGrid grid = triangulatedGrid(6, 6);
  const auto check = [&](auto&& fn) {
    std::vector<double> u(grid.z.size());
    for (int j = 0; j < grid.n; ++j)
      for (int i = 0; i < grid.m; ++i) u[static_cast<size_t>(grid.vid(i, j))] = fn(i, j);
    // Independent oracle: 5-point Laplacian over the explicit grid.
    for (int j = 1; j + 1 < grid.n; ++j)
      for (int i = 1; i + 1 < grid.m; ++i)
        CHECK(std::abs(fivePointLaplacian(grid, u, i, j)) <= 1e-11);
    for (double r : cotanHarmonicResiduals(grid.mesh, grid.z, u)) CHECK(std::abs(r) <= 1e-11);
    const QuadDiff q = qhdFromHarmonic(grid.mesh, grid.z, u);
    CHECK(verifyQhd(grid.mesh, grid.z, q).passes(1e-10));
  };
  check([](int m, int n) { return static_cast<double>(m) * m - static_cast<double>(n) * n; });
  check([](int m, int n) {
    return static_cast<double>(m) * m * m - 3.0 * m * static_cast<double>(n) * n;
  });
}

TEST_CASE("construction sums split into exact and harmonic parts") {
  // For any vertex function the q/dz sum telescopes to zero (the dual form
  // of the conjugate gradients is exact), while the plain q sum equals the
  // cotangent residual, so it vanishes exactly for harmonic input.
  const TriGrid grid = triangulatedGrid(5, 5);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u(grid.z.size());
  for (double& v : u) v = dist(rng);
  const QuadDiff q = qhdFromHarmonic(grid.mesh, grid.z, u);
  const QhdReport report = verifyQhd(grid.mesh, grid.z, q);
  CHECK(report.maxSumQOverDz <= 1e-12 * std::max(report.termScaleQOverDz, 1.0));
  const auto cotan = cotanHarmonicResiduals(grid.mesh, grid.z, u);
  double worstMatch = 0.0, worstCotan = 0.0;
  for (int v : grid.mesh.interiorVertices()) {
    worstMatch = std::max(worstMatch, std::abs(report.sumQ[static_cast<size_t>(v)] -
                                               cotan[static_cast<size_t>(v)]));
    worstCotan = std::max(worstCotan, std::abs(cotan[static_cast<size_t>(v)]));
  }
  CHECK(worstMatch <= 1e-12 * std::max(worstCotan, 1.0));
  CHECK(worstCotan > 1e-3);  // random data is far from harmonic
}

TEST_CASE("degenerate triangles are rejected") {
  const Mesh mesh = buildMesh(4, {{0, 1, 2}, {0, 2, 3}});
  const PlanarNet z = {Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 1)};
  const std::vector<double> u = {0.0, 1.0, 0.0, 2.0};
  CHECK_THROWS_WITH(qhdFromHarmonic(mesh, z, u),
                    Catch::Matchers::ContainsSubstring("degenerate triangle"));
}

TEST_CASE("degenerate planar edges are rejected") {
  const Mesh mesh = buildMesh(3, {{0, 1, 2}});
  const PlanarNet z = {Complex(0, 0), Complex(0, 0), Complex(0, 1)};
  QuadDiff q(mesh);
  CHECK_THROWS_WITH(verifyQhd(mesh, z, q), Catch::Matchers::ContainsSubstring("degenerate edge"));
}
