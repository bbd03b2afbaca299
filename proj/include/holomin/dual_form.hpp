#pragma once

// Discrete dual 1-forms and their calculus: antisymmetric values on oriented
// interior dual edges, closedness residuals around interior vertices, and
// integration of closed forms to face functions over a spanning tree of the
// dual graph.

#include <deque>
#include <optional>
#include <type_traits>

#include "holomin/mesh.hpp"
#include "holomin/vec3.hpp"

namespace holomin {

// Value per interior dual edge, stored on the canonical orientation
// (min endpoint -> max endpoint), so antisymmetry holds exactly.
template <typename V>
struct DualOneForm {
  explicit DualOneForm(const Mesh& m) : mesh(&m), values(m.edges.size(), V{}) {}

  const Mesh* mesh = nullptr;
  std::vector<V> values;

  // Value on the dual edge of i->j (oriented right face -> left face).
  V on(int i, int j) const {
    const int e = mesh->requireEdge(i, j);
    if (!mesh->edges[static_cast<size_t>(e)].interior())
      throw MeshError("dual 1-form evaluated on boundary edge {" + std::to_string(i) + "," +
                      std::to_string(j) + "}");
    return i < j ? values[static_cast<size_t>(e)] : V{} - values[static_cast<size_t>(e)];
  }

  void set(int i, int j, const V& v) {
    const int e = mesh->requireEdge(i, j);
    values[static_cast<size_t>(e)] = i < j ? v : V{} - v;
  }

  double maxEdgeMagnitude() const {
    double s = 0.0;
    for (int e = 0; e < mesh->numEdges(); ++e)
      if (mesh->edgeInterior[static_cast<size_t>(e)])
        s = std::max(s, mag(values[static_cast<size_t>(e)]));
    return s;
  }
};

// Differential of a face function as a dual 1-form: dg(e*_ij) = g(left) - g(right).
template <typename V>
DualOneForm<V> faceDifferential(const Mesh& mesh, const std::vector<V>& g) {
  DualOneForm<V> form(mesh);
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    form.values[static_cast<size_t>(e)] =
        g[static_cast<size_t>(edge.leftOfAB)] - g[static_cast<size_t>(edge.leftOfBA)];
  }
  return form;
}

// Sum of form values over the dual edges leaving each interior vertex.
// Entries at boundary vertices stay value-initialized.
template <typename V>
std::vector<V> closednessResiduals(const Mesh& mesh, const DualOneForm<V>& form) {
  std::vector<V> residuals(static_cast<size_t>(mesh.numVertices), V{});
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    V sum{};
    for (int nbr : mesh.neighborFan[static_cast<size_t>(v)]) sum += form.on(v, nbr);
    residuals[static_cast<size_t>(v)] = sum;
  }
  return residuals;
}

struct WorstResidual {
  int vertex = -1;
  double magnitude = 0.0;
};

template <typename V>
WorstResidual worstClosednessResidual(const Mesh& mesh, const DualOneForm<V>& form) {
  const auto residuals = closednessResiduals(mesh, form);
  WorstResidual worst;
  for (int v = 0; v < mesh.numVertices; ++v) {
    if (!mesh.vertexInterior[static_cast<size_t>(v)]) continue;
    const double m = mag(residuals[static_cast<size_t>(v)]);
    if (m > worst.magnitude || worst.vertex < 0) worst = {v, m};
  }
  return worst;
}

enum class TreeOrder { BfsAscending, BfsDescending, DfsAscending };

inline constexpr double kClosednessRelTol = 1e-9;

// Integrates a closed dual 1-form to a function on faces with the given base
// value. The spanning tree is deterministic: traversal from baseFace with
// neighbor candidates ordered by dual-edge id. Closedness makes the result
// tree-independent up to roundoff.
template <typename V>
std::vector<V> integrateDualOneForm(const Mesh& mesh, const DualOneForm<V>& form, int baseFace,
                                    const V& baseValue, double relTol = kClosednessRelTol,
                                    TreeOrder order = TreeOrder::BfsAscending) {
  if (baseFace < 0 || baseFace >= mesh.numFaces()) throw MeshError("base face out of range");
  const double scale = form.maxEdgeMagnitude();
  const WorstResidual worst = worstClosednessResidual(mesh, form);
  if (worst.vertex >= 0 && worst.magnitude > relTol * std::max(scale, 1e-300))
    throw MeshError("dual 1-form is not closed: residual " + std::to_string(worst.magnitude) +
                    " at interior vertex " + std::to_string(worst.vertex));

  // Dual adjacency: interior edges indexed ascending, flipped for the
  // alternate-tree comparison.
  std::vector<std::vector<int>> incident(static_cast<size_t>(mesh.numFaces()));
  for (int e = 0; e < mesh.numEdges(); ++e) {
    const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
    if (!edge.interior()) continue;
    incident[static_cast<size_t>(edge.leftOfAB)].push_back(e);
    incident[static_cast<size_t>(edge.leftOfBA)].push_back(e);
  }
  if (order == TreeOrder::BfsDescending)
    for (auto& list : incident) std::reverse(list.begin(), list.end());

  std::vector<V> g(static_cast<size_t>(mesh.numFaces()), V{});
  std::vector<bool> known(static_cast<size_t>(mesh.numFaces()), false);
  g[static_cast<size_t>(baseFace)] = baseValue;
  known[static_cast<size_t>(baseFace)] = true;
  std::deque<int> frontier{baseFace};
  int reached = 1;
  while (!frontier.empty()) {
    int cur;
    if (order == TreeOrder::DfsAscending) {
      cur = frontier.back();
      frontier.pop_back();
    } else {
      cur = frontier.front();
      frontier.pop_front();
    }
    for (int e : incident[static_cast<size_t>(cur)]) {
      const Mesh::Edge& edge = mesh.edges[static_cast<size_t>(e)];
      const int left = edge.leftOfAB, right = edge.leftOfBA;
      const int next = (left == cur) ? right : left;
      if (known[static_cast<size_t>(next)]) continue;
      // Crossing from right to left adds the canonical value.
      if (next == left)
        g[static_cast<size_t>(next)] = g[static_cast<size_t>(cur)] + form.values[static_cast<size_t>(e)];
      else
        g[static_cast<size_t>(next)] = g[static_cast<size_t>(cur)] - form.values[static_cast<size_t>(e)];
      known[static_cast<size_t>(next)] = true;
      ++reached;
      frontier.push_back(next);
    }
  }
  if (reached != mesh.numFaces())
    throw MeshError("dual graph over interior edges is disconnected: reached " +
                    std::to_string(reached) + " of " + std::to_string(mesh.numFaces()) + " faces");
  return g;
}

}  // namespace holomin
