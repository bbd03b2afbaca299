// Command line front end: net generation, verification reports, and surface
// construction/export.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 input or
// usage error.

#include <CLI11.hpp>
#include <iostream>

#include "holomin/holomin.hpp"

using namespace holomin;

namespace {

struct Tolerances {
  double qhd = 1e-9;
  double pnet = 1e-9;
  double aminimal = 1e-10;
  double planarity = 1e-8;
  double meanCurv = 1e-10;
  double family = 1e-10;
  double stress = 1e-10;
  double fd = 1e-6;
  double closedness = kClosednessRelTol;
  double antipodal = kAntipodalEps;
};

void addToleranceFlags(CLI::App* cmd, Tolerances& tol) {
  cmd->add_option("--tol-qhd", tol.qhd, "relative tolerance for the defining sums");
  cmd->add_option("--tol-pnet", tol.pnet, "relative tolerance for parallelogram residuals");
  cmd->add_option("--tol-aminimal", tol.aminimal, "relative tolerance for dN x df and <N_i+N_j, df>");
  cmd->add_option("--tol-planarity", tol.planarity, "relative face planarity tolerance");
  cmd->add_option("--tol-h", tol.meanCurv, "relative scalar mean curvature tolerance");
  cmd->add_option("--tol-family", tol.family, "relative tolerance for associated-family identities");
  cmd->add_option("--tol-stress", tol.stress, "relative tolerance for stress balances");
  cmd->add_option("--tol-fd", tol.fd, "finite-difference gradient tolerance");
  cmd->add_option("--tol-closedness", tol.closedness, "relative closedness tolerance");
  cmd->add_option("--tol-antipodal", tol.antipodal, "admissibility margin for the Gauss map");
}

int finishReport(const ReportDocument& report, const std::string& reportPath) {
  for (const CheckResult& c : report.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  max=" << c.maxResidual
              << "  tol=" << c.tolerance;
    if (!c.offender.empty()) std::cout << "  worst=" << c.offender;
    std::cout << "\n";
  }
  if (!reportPath.empty()) saveJsonFile(reportPath, toJson(report));
  if (report.allPass()) {
    std::cout << "all checks passed\n";
    return 0;
  }
  std::cout << "verification failed\n";
  return 1;
}

MaterializedNet loadPlanarNet(const std::string& path) {
  MaterializedNet net = materialize(netDocumentFromJson(loadJsonFile(path)));
  if (!net.z) throw MeshError("net document has no planar positions");
  requireNondegenerate(net.mesh, *net.z);
  return net;
}

QuadDiff requireQ(const MaterializedNet& net) {
  if (!net.q) throw MeshError("net document has no edge table");
  return *net.q;
}

ComplexSurface loadSurface(const std::string& path, const Mesh& mesh) {
  const SurfaceDocument doc = surfaceDocumentFromJson(loadJsonFile(path));
  if (static_cast<int>(doc.F.size()) != mesh.numFaces())
    throw MeshError("surface document has " + std::to_string(doc.F.size()) + " values for " +
                    std::to_string(mesh.numFaces()) + " faces");
  return ComplexSurface{doc.F, doc.baseFace};
}

std::string vertexName(const MaterializedNet& net, int denseIndex) {
  if (denseIndex < 0) return "";
  return "vertex " + std::to_string(net.ids[static_cast<size_t>(denseIndex)]);
}

// --- gen ----------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  NetParams params{.m = 5, .n = 5, .a = 0.3, .b = 0.4, .radius = 1.0};
  std::string out;
};

int runGen(const GenArgs& args) {
  NetKind kind;
  if (args.kind == "grid")
    kind = NetKind::Grid;
  else if (args.kind == "exp")
    kind = NetKind::Exp;
  else if (args.kind == "regular_circle_pattern")
    kind = NetKind::RegularCirclePattern;
  else
    throw MeshError("unknown net kind '" + args.kind + "'");

  const GridNet net = generateNet(kind, args.params);
  const PLabeling mu = pLabeling(net.mesh);

  NetDocument doc;
  doc.ids.resize(static_cast<size_t>(net.mesh.numVertices));
  for (int v = 0; v < net.mesh.numVertices; ++v) doc.ids[static_cast<size_t>(v)] = v;
  doc.z = net.z;
  doc.facesById = net.mesh.faces;
  for (int e = 0; e < net.mesh.numEdges(); ++e) {
    if (!net.mesh.edgeInterior[static_cast<size_t>(e)]) continue;
    const Mesh::Edge& edge = net.mesh.edges[static_cast<size_t>(e)];
    doc.edgeTable.emplace_back(edge.a, edge.b, static_cast<double>(mu.values[static_cast<size_t>(e)]));
  }
  doc.meta["kind"] = args.kind;
  doc.meta["m"] = args.params.m;
  doc.meta["n"] = args.params.n;
  if (kind == NetKind::Exp) {
    doc.meta["a"] = args.params.a;
    doc.meta["b"] = args.params.b;
  }
  if (kind == NetKind::RegularCirclePattern) doc.meta["radius"] = args.params.radius;
  doc.meta["edge_values"] = "p-labeling";
  saveJsonFile(args.out, toJson(doc));
  std::cout << "wrote " << args.out << " (" << net.mesh.numVertices << " vertices, "
            << net.mesh.numFaces() << " faces)\n";
  return 0;
}

// --- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string what;
  std::string netPath;
  std::string surfacePath;
  double theta = 0.0;
  bool thetaSet = false;
  int thetaCount = 16;
  double fdStep = kFdStep;
  std::string reportPath;
  Tolerances tol;
};

int runVerify(const VerifyArgs& args) {
  ReportDocument report;
  const MaterializedNet net = loadPlanarNet(args.netPath);

  if (args.what == "qhd") {
    const QhdReport qr = verifyQhd(net.mesh, *net.z, requireQ(net));
    report.add("qhd_sum_q", qr.maxSumQ, args.tol.qhd * std::max(qr.termScaleQ, 1e-300),
               vertexName(net, qr.worstVertexQ));
    report.add("qhd_sum_q_over_dz", qr.maxSumQOverDz,
               args.tol.qhd * std::max(qr.termScaleQOverDz, 1e-300),
               vertexName(net, qr.worstVertexQOverDz));
    return finishReport(report, args.reportPath);
  }

  if (args.what == "pnet") {
    const auto residuals = pnetResiduals(net.mesh, *net.z);
    double termScale = 0.0;
    for (const Mesh::Edge& e : net.mesh.edges)
      termScale = std::max(termScale, 1.0 / std::abs((*net.z)[static_cast<size_t>(e.b)] -
                                                     (*net.z)[static_cast<size_t>(e.a)]));
    double worst = 0.0;
    int worstVertex = -1;
    for (int v : net.mesh.interiorVertices())
      if (std::abs(residuals[static_cast<size_t>(v)]) > worst) {
        worst = std::abs(residuals[static_cast<size_t>(v)]);
        worstVertex = v;
      }
    report.add("pnet_parallelogram", worst, args.tol.pnet * termScale, vertexName(net, worstVertex));
    return finishReport(report, args.reportPath);
  }

  // The remaining checks consume a built surface.
  if (args.surfacePath.empty()) throw MeshError("this check needs --surface");
  const ComplexSurface F = loadSurface(args.surfacePath, net.mesh);
  const GaussMap gauss = stereographicLift(*net.z);
  requireAdmissible(net.mesh, gauss, args.tol.antipodal);

  if (args.what == "aminimal") {
    const RealSurface f = associatedSurface(F, args.thetaSet ? args.theta : 0.0);
    const AminimalReport ar = verifyAminimal(net.mesh, f, gauss);
    const double tol = args.tol.aminimal * std::max(ar.scale, 1e-300);
    report.add("aminimal_cross", ar.maxCross, tol, "");
    report.add("aminimal_dot", ar.maxDot, tol, "");
    return finishReport(report, args.reportPath);
  }

  if (args.what == "cminimal") {
    const RealSurface f = associatedSurface(F, args.thetaSet ? args.theta : M_PI / 2.0);
    const CminimalReport cr = verifyCminimal(net.mesh, f, gauss);
    report.add("cminimal_planarity", cr.maxPlanarity,
               args.tol.planarity * std::max(cr.scale, 1e-300),
               vertexName(net, cr.worstPlanarityVertex));
    report.add("cminimal_scalar_mean_curvature", cr.maxH,
               args.tol.meanCurv * std::max(cr.scale, 1e-300), vertexName(net, cr.worstHVertex));
    return finishReport(report, args.reportPath);
  }

  if (args.what == "family") {
    const QuadDiff q = requireQ(net);
    const std::vector<double> thetas = thetaSamples(args.thetaCount);
    double worstH = 0.0, worstDot = 0.0, worstEdgeCross = 0.0, worstEdgeDot = 0.0, scale = 0.0;
    for (double theta : thetas) {
      const RealSurface f = associatedSurface(F, theta);
      scale = std::max(scale, surfaceScale(net.mesh, f));
      const auto tcs = thetaCurvatures(net.mesh, f, gauss, args.tol.antipodal);
      for (int v : net.mesh.interiorVertices()) {
        worstH = std::max(worstH, std::abs(tcs[static_cast<size_t>(v)].h));
        worstDot = std::max(worstDot, std::abs(tcs[static_cast<size_t>(v)].dotSum));
      }
      const ThetaEdgeResiduals ter = thetaEdgeResiduals(net.mesh, f, gauss, q, theta);
      worstEdgeCross = std::max(worstEdgeCross, ter.maxCross);
      worstEdgeDot = std::max(worstEdgeDot, ter.maxDot);
    }
    const double tol = args.tol.family * std::max(scale, 1e-300);
    report.add("family_scalar_mean_curvature", worstH, tol, "");
    report.add("family_dot_sum", worstDot, tol, "");
    report.add("family_edge_cross", worstEdgeCross, tol, "");
    report.add("family_edge_dot", worstEdgeDot, tol, "");
    const FamilyAreaReport far = vectorAreaFamilyCheck(net.mesh, F, gauss, thetas);
    report.add("family_vector_area_constancy", far.maxDeviation,
               args.tol.family * std::max(far.scale, 1e-300), "");
    report.add("family_vector_area_alignment", far.maxSinAngle, args.tol.family, "");
    return finishReport(report, args.reportPath);
  }

  if (args.what == "stress") {
    const RealSurface f = associatedSurface(F, args.thetaSet ? args.theta : 0.0);
    const StressField stress = stressFromAminimal(net.mesh, f, gauss);
    double kScale = 0.0, worstResidual = 0.0;
    for (double k : stress.k) kScale = std::max(kScale, std::abs(k));
    for (double r : stress.residual) worstResidual = std::max(worstResidual, r);
    const auto eq = equilibriumResiduals(net.mesh, gauss, stress);
    const auto fb = forceTorqueBalance(net.mesh, gauss, stress);
    double worstEq = 0.0, worstForce = 0.0, worstTorque = 0.0;
    int worstVertex = -1;
    for (int v : net.mesh.interiorVertices()) {
      if (mag(eq[static_cast<size_t>(v)]) > worstEq) {
        worstEq = mag(eq[static_cast<size_t>(v)]);
        worstVertex = v;
      }
      worstForce = std::max(worstForce, mag(fb[static_cast<size_t>(v)].force));
      worstTorque = std::max(worstTorque, mag(fb[static_cast<size_t>(v)].torque));
    }
    const double tol = args.tol.stress * std::max(kScale, 1e-300);
    report.add("stress_projection_residual", worstResidual, tol, "");
    report.add("stress_equilibrium", worstEq, tol, vertexName(net, worstVertex));
    report.add("stress_force_balance", worstForce, tol, "");
    report.add("stress_torque_balance", worstTorque, tol, "");
    return finishReport(report, args.reportPath);
  }

  if (args.what == "area-grad") {
    const DualMesh dual = dualMesh(net.mesh);
    double worstGrad = 0.0, worstH = 0.0, scale = 0.0;
    for (double theta : thetaSamples(args.thetaCount)) {
      const RealSurface f = associatedSurface(F, theta);
      std::vector<Vec3d> positions(static_cast<size_t>(dual.mesh.numVertices));
      for (int k = 0; k < dual.mesh.numVertices; ++k)
        positions[static_cast<size_t>(k)] = f.f[static_cast<size_t>(k)];
      std::vector<double> sigma(dual.primalVertex.size());
      for (size_t df = 0; df < dual.primalVertex.size(); ++df) {
        const int pv = dual.primalVertex[df];
        const Vec3d area = vectorArea(dualFacePolygon(net.mesh, f, pv));
        sigma[df] = dot(gauss[static_cast<size_t>(pv)], area) >= 0.0 ? 1.0 : -1.0;
      }
      for (const Mesh::Edge& e : dual.mesh.edges)
        scale = std::max(scale, mag(positions[static_cast<size_t>(e.b)] -
                                    positions[static_cast<size_t>(e.a)]));
      const auto grad = areaGradientFd(dual.mesh, positions, sigma, args.fdStep);
      const auto h = meanCurvatureVector(dual.mesh, positions, sigma);
      for (int v : dual.mesh.interiorVertices()) {
        worstGrad = std::max(worstGrad, mag(grad[static_cast<size_t>(v)]));
        worstH = std::max(worstH, mag(h[static_cast<size_t>(v)]));
      }
    }
    report.add("area_gradient_fd", worstGrad, args.tol.fd * std::max(scale, 1e-300), "");
    report.add("mean_curvature_vector", worstH, args.tol.meanCurv * std::max(scale, 1e-300), "");
    return finishReport(report, args.reportPath);
  }

  throw MeshError("unknown check '" + args.what + "'");
}

// --- build --------------------------------------------------------------------

struct BuildArgs {
  std::string netPath;
  std::string outPrefix;
  std::vector<double> thetas;
  bool conjugate = false;
  std::vector<double> goursat;  // 4 reals or 8 re/im pairs
  bool triangulateFan = false;
  int baseFace = 0;
  Tolerances tol;
};

std::vector<std::vector<int>> dualFaceCycles(const Mesh& mesh) {
  std::vector<std::vector<int>> polygons;
  for (int v : mesh.interiorVertices()) polygons.push_back(mesh.faceFan[static_cast<size_t>(v)]);
  return polygons;
}

void writeSurfaceObj(const std::string& path, const Mesh& mesh, const RealSurface& f,
                     bool triangulateFan) {
  writeObjFile(path, f.f, dualFaceCycles(mesh), triangulateFan);
  std::cout << "wrote " << path << "\n";
}

int runBuild(const BuildArgs& args) {
  const MaterializedNet net = loadPlanarNet(args.netPath);
  const QuadDiff q = requireQ(net);

  PlanarNet z = *net.z;
  ComplexSurface surface = integrateSurface(
      net.mesh, weierstrassForm(net.mesh, z, q, args.tol.qhd), args.baseFace, args.tol.closedness);
  GaussMap gauss = stereographicLift(z);
  requireAdmissible(net.mesh, gauss, args.tol.antipodal);

  Json buildMeta = Json::object();
  buildMeta["source"] = args.netPath;

  if (!args.goursat.empty()) {
    MobiusCoeffs phi;
    if (args.goursat.size() == 4)
      phi = MobiusCoeffs::normalized(args.goursat[0], args.goursat[1], args.goursat[2],
                                     args.goursat[3]);
    else if (args.goursat.size() == 8)
      phi = MobiusCoeffs::normalized(Complex(args.goursat[0], args.goursat[1]),
                                     Complex(args.goursat[2], args.goursat[3]),
                                     Complex(args.goursat[4], args.goursat[5]),
                                     Complex(args.goursat[6], args.goursat[7]));
    else
      throw MeshError("--goursat expects 4 real or 8 re,im coefficients");
    const GoursatResult moved = goursatTransform(net.mesh, surface, z, phi, args.tol.antipodal);
    surface = moved.F;
    z = moved.z;
    gauss = moved.gauss;
    buildMeta["goursat"] = args.goursat;

    // The transformed net document, for re-verification of the outputs.
    NetDocument netOut;
    netOut.ids = net.ids;
    netOut.z = z;
    netOut.facesById = net.mesh.faces;
    for (int e = 0; e < net.mesh.numEdges(); ++e)
      if (net.mesh.edgeInterior[static_cast<size_t>(e)]) {
        const Mesh::Edge& edge = net.mesh.edges[static_cast<size_t>(e)];
        netOut.edgeTable.emplace_back(net.ids[static_cast<size_t>(edge.a)],
                                      net.ids[static_cast<size_t>(edge.b)],
                                      q.values[static_cast<size_t>(e)]);
      }
    netOut.meta = buildMeta;
    saveJsonFile(args.outPrefix + ".net.json", toJson(netOut));
    std::cout << "wrote " << args.outPrefix << ".net.json\n";
  }

  // Complex surface sidecar for round-tripping.
  SurfaceDocument sidecar;
  sidecar.baseFace = args.baseFace;
  sidecar.F = surface.F;
  sidecar.meta = buildMeta;
  saveJsonFile(args.outPrefix + ".F.json", toJson(sidecar));
  std::cout << "wrote " << args.outPrefix << ".F.json\n";

  if (args.conjugate) {
    const RealSurface f = associatedSurface(surface, 0.0);
    writeSurfaceObj(args.outPrefix + "_aminimal.obj", net.mesh, f, args.triangulateFan);
    const RealSurface conj =
        conjugateFromAminimal(net.mesh, f, gauss, args.baseFace, args.tol.closedness);
    writeSurfaceObj(args.outPrefix + "_conjugate.obj", net.mesh, conj, args.triangulateFan);
    return 0;
  }

  std::vector<double> thetas = args.thetas;
  if (thetas.empty()) thetas = {0.0};
  for (size_t k = 0; k < thetas.size(); ++k) {
    const RealSurface f = associatedSurface(surface, thetas[k]);
    writeSurfaceObj(args.outPrefix + "_theta_" + std::to_string(k) + ".obj", net.mesh, f,
                    args.triangulateFan);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete minimal surfaces from holomorphic quadratic differentials"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* genCmd = app.add_subcommand("gen", "generate a built-in net document");
  genCmd->add_option("kind", gen.kind, "grid | exp | regular_circle_pattern")->required();
  genCmd->add_option("--m", gen.params.m, "vertices per row");
  genCmd->add_option("--n", gen.params.n, "vertices per column");
  genCmd->add_option("--a", gen.params.a, "exp net horizontal spacing");
  genCmd->add_option("--b", gen.params.b, "exp net vertical rotation");
  genCmd->add_option("--radius", gen.params.radius, "circle pattern radius");
  genCmd->add_option("-o,--out", gen.out, "output net JSON path")->required();

  VerifyArgs verify;
  CLI::App* verifyCmd = app.add_subcommand("verify", "run a verification report");
  verifyCmd
      ->add_option("what", verify.what,
                   "qhd | pnet | aminimal | cminimal | family | stress | area-grad")
      ->required();
  verifyCmd->add_option("--net", verify.netPath, "net JSON document")->required();
  verifyCmd->add_option("--surface", verify.surfacePath, "complex surface sidecar JSON");
  auto* thetaOpt = verifyCmd->add_option("--theta", verify.theta, "family phase for the check");
  verifyCmd->add_option("--thetas", verify.thetaCount, "number of phase samples for sweeps");
  verifyCmd->add_option("--step", verify.fdStep, "finite-difference step");
  verifyCmd->add_option("--report", verify.reportPath, "write the report JSON here");
  addToleranceFlags(verifyCmd, verify.tol);

  BuildArgs build;
  CLI::App* buildCmd = app.add_subcommand("build", "build surfaces and export OBJ");
  buildCmd->add_option("--net", build.netPath, "net JSON document")->required();
  buildCmd->add_option("--out-prefix", build.outPrefix, "output path prefix")->required();
  buildCmd->add_option("--theta", build.thetas, "family phases to export")->delimiter(',');
  buildCmd->add_flag("--conjugate", build.conjugate, "export the conjugate pair");
  buildCmd
      ->add_option("--goursat", build.goursat, "Moebius coefficients a,b,c,d (4 real or 8 re,im)")
      ->delimiter(',');
  buildCmd->add_flag("--triangulate-fan", build.triangulateFan, "fan-triangulate OBJ polygons");
  buildCmd->add_option("--base-face", build.baseFace, "integration base face");
  addToleranceFlags(buildCmd, build.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }
  verify.thetaSet = thetaOpt->count() > 0;

  try {
    if (genCmd->parsed()) return runGen(gen);
    if (verifyCmd->parsed()) return runVerify(verify);
    if (buildCmd->parsed()) return runBuild(build);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
