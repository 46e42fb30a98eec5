#pragma once

// Graph-indexed assembly of manifold pairs and their critical-point
// counts.
//
// A connected multigraph Gamma (loops and parallel edges welcome) with m
// vertices and e edges directs a gluing: every vertex contributes a block
// built from the smoothed suspension (2 critical points each), every edge
// a fiber-sum tube.  The result is a pair
//
//   domain:  Sigma^{2n} # e * S^n x S^n # c * S^1 x S^{2n-1},
//   target:  # c * S^1 x S^n,
//
// with c = e - m + 1 the cycle rank, carrying exactly 2m = 2e - 2c + 2
// critical points.  phi_verdict turns a requested (e, c) into the best
// statement available: an exact count, an upper bound, a known fibration
// with none, or "open".

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hopfcrit/homology.hpp"
#include "hopfcrit/hopf.hpp"

namespace hopfcrit {

struct FiberSumGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // endpoints stored low-high

  int edge_count() const { return static_cast<int>(edges.size()); }
  /// First Betti number of the graph; meaningful once validated connected.
  int cycle_rank() const { return edge_count() - vertices + 1; }
};

inline std::vector<int> vertex_valences(const FiberSumGraph& g) {
  std::vector<int> val(static_cast<std::size_t>(g.vertices), 0);
  for (const auto& [u, v] : g.edges) {
    val[static_cast<std::size_t>(u)] += 1;
    val[static_cast<std::size_t>(v)] += 1;  // a loop counts twice
  }
  return val;
}

inline bool is_connected(const FiberSumGraph& g) {
  if (g.vertices < 1) return false;
  std::vector<int> parent(static_cast<std::size_t>(g.vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& [u, v] : g.edges) parent[static_cast<std::size_t>(find(u))] = find(v);
  const int root = find(0);
  for (int v = 1; v < g.vertices; ++v)
    if (find(v) != root) return false;
  return true;
}

inline void validate_graph(const FiberSumGraph& g) {
  if (g.vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (const auto& [u, v] : g.edges)
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices)
      throw std::invalid_argument("edge endpoint out of range: [" + std::to_string(u) + ", " +
                                  std::to_string(v) + "]");
  if (!is_connected(g)) throw std::invalid_argument("graph must be connected");
}

inline FiberSumGraph load_graph(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph document must be a JSON object");
  if (!j.contains("vertices") || !j["vertices"].is_number_integer())
    throw std::invalid_argument("graph document needs an integer \"vertices\" field");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw std::invalid_argument("graph document needs an \"edges\" array");
  FiberSumGraph g;
  g.vertices = j["vertices"].get<int>();
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw std::invalid_argument("each edge must be a two-element integer array");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u > v) std::swap(u, v);
    g.edges.emplace_back(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  validate_graph(g);
  return g;
}

inline FiberSumGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("graph file " + path + " is not valid JSON: " + e.what());
  }
  return load_graph(j);
}

inline nlohmann::json graph_to_json(const FiberSumGraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices;
  auto& e = j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges) e.push_back({u, v});
  return j;
}

/// Tube attachment site for one incident edge: a closed height interval
/// [center - radius, center + radius] on the (-1, 1) height axis of the
/// block's target sphere.  The poles at height +-1 carry the block's two
/// critical values and must stay clear of every interval.
struct DiskPlacement {
  double center = 0.0;  // height of the interval midpoint
  double radius = 0.0;  // half-width of the interval
};

struct BlockSpec {
  int valence = 0;
  std::vector<DiskPlacement> disks;
  double min_boundary_gap = 0.0;  // smallest gap between interval boundaries
  double pole_clearance = 0.0;    // gap from any interval to the nearer pole
  // gluing maps along tube boundaries are fixed once and for all; the
  // combinatorics never depend on the choice, so it is kept symbolic
  static constexpr const char* gluing = "orientation-reversing reflection";
};

inline BlockSpec plan_disks(int valence) {
  if (valence < 0) throw std::invalid_argument("valence cannot be negative");
  BlockSpec b;
  b.valence = valence;
  if (valence == 0) {
    b.min_boundary_gap = 2.0;  // whole height axis free
    b.pole_clearance = 1.0;
    return b;
  }
  // k equispaced intervals inside (-0.8, 0.8): centers -0.8 + 1.6 (i+1/2)/k,
  // half-width 0.6/k.  Adjacent centers sit 1.6/k apart, so boundaries keep
  // a 0.4/k gap and the outermost ends stop 0.2/k + 0.2 short of the poles.
  const double radius = 0.6 / valence;
  for (int k = 0; k < valence; ++k)
    b.disks.push_back({-0.8 + 1.6 * (k + 0.5) / valence, radius});
  b.min_boundary_gap = valence == 1 ? 1.0 - 0.6 : 0.4 / valence;
  b.pole_clearance = 0.2 + 0.2 / valence;
  return b;
}

inline ManifoldDescriptor phi_domain_descriptor(std::int64_t e, std::int64_t c, int n) {
  require_hopf_n(n);
  if (e < 0 || c < 0) throw std::invalid_argument("summand counts cannot be negative");
  std::vector<std::pair<Atom, std::int64_t>> atoms;
  if (e == 0 && c == 0) {
    atoms.emplace_back(Atom::sphere(2 * n), 1);
  } else {
    // the glued smoothing piece is a homotopy sphere; in dimension 4 it
    // is standard and drops out as a neutral summand
    if (n >= 4) atoms.emplace_back(Atom::homotopy_sphere(2 * n, true), 1);
    if (e > 0) atoms.emplace_back(Atom::product(n, n), e);
    if (c > 0) atoms.emplace_back(Atom::product(1, 2 * n - 1), c);
  }
  return make_descriptor(std::move(atoms));
}

inline ManifoldDescriptor phi_target_descriptor(std::int64_t c, int n) {
  require_hopf_n(n);
  if (c < 0) throw std::invalid_argument("summand counts cannot be negative");
  std::vector<std::pair<Atom, std::int64_t>> atoms;
  if (c == 0)
    atoms.emplace_back(Atom::sphere(n + 1), 1);
  else
    atoms.emplace_back(Atom::product(1, n), c);
  return make_descriptor(std::move(atoms));
}

struct AssemblyResult {
  int n = 0;
  int vertices = 0;
  int edges = 0;
  int cycle_rank = 0;
  ManifoldDescriptor domain;  // dimension 2n
  ManifoldDescriptor target;  // dimension n+1
  std::vector<BlockSpec> blocks;
  std::int64_t critical_count = 0;      // summed over blocks
  std::int64_t phi_formula_value = 0;   // 2e - 2c + 2
};

inline AssemblyResult assemble(const FiberSumGraph& g, int n) {
  require_hopf_n(n);
  validate_graph(g);
  AssemblyResult r;
  r.n = n;
  r.vertices = g.vertices;
  r.edges = g.edge_count();
  r.cycle_rank = g.cycle_rank();
  r.domain = phi_domain_descriptor(r.edges, r.cycle_rank, n);
  r.target = phi_target_descriptor(r.cycle_rank, n);
  for (int val : vertex_valences(g)) r.blocks.push_back(plan_disks(val));
  for (const BlockSpec& b : r.blocks) {
    (void)b;
    r.critical_count += 2;  // each block is a suspension with two critical points
  }
  r.phi_formula_value = 2 * static_cast<std::int64_t>(r.edges) - 2 * r.cycle_rank + 2;
  return r;
}

/// Smallest witness for a given (e, c): a path of e - c + 1 vertices with
/// c loops attached to its first vertex.  Needs e >= c.
inline FiberSumGraph canonical_witness_graph(std::int64_t e, std::int64_t c) {
  if (c < 0 || e < c) throw std::invalid_argument("witness graph needs e >= c >= 0");
  FiberSumGraph g;
  g.vertices = static_cast<int>(e - c + 1);
  for (int v = 0; v + 1 < g.vertices; ++v) g.edges.emplace_back(v, v + 1);
  for (std::int64_t k = 0; k < c; ++k) g.edges.emplace_back(0, 0);
  std::sort(g.edges.begin(), g.edges.end());
  validate_graph(g);
  return g;
}

enum class PhiKind { Exact, UpperBoundOnly, Unknown, FibrationZero };

inline const char* to_string(PhiKind k) {
  switch (k) {
    case PhiKind::Exact: return "exact";
    case PhiKind::UpperBoundOnly: return "upper-bound-only";
    case PhiKind::Unknown: return "unknown";
    case PhiKind::FibrationZero: return "fibration-zero";
  }
  return "?";
}

/// Best known statement about the minimal critical-point count for the
/// pair indexed by (e, c) in fibration dimension n.
struct PhiVerdict {
  PhiKind kind = PhiKind::Unknown;
  int n = 0;
  std::int64_t e = 0;
  std::int64_t c = 0;
  std::optional<std::int64_t> value;  // exact value, or the bound for UpperBoundOnly
  ManifoldDescriptor domain;
  ManifoldDescriptor target;
  std::string note;
  std::optional<std::int64_t> construction_count;  // witness-graph cross-check
  std::optional<std::int64_t> lower_bound_value;   // homological cross-check
  bool consistent = true;
};

inline PhiVerdict phi_verdict(std::int64_t e, std::int64_t c, int n) {
  require_hopf_n(n);
  if (e < 0 || c < 0) throw std::invalid_argument("summand counts cannot be negative");

  PhiVerdict v;
  v.n = n;
  v.e = e;
  v.c = c;
  v.domain = phi_domain_descriptor(e, c, n);
  v.target = phi_target_descriptor(c, n);

  if (c == 1 && e == 0) {
    v.kind = PhiKind::FibrationZero;
    v.value = 0;
    v.note = "the pair fibers (circle times the fibration), so no critical points at all";
    return v;
  }
  if (c == 1) {
    v.kind = PhiKind::UpperBoundOnly;
    v.value = 2 * e;
    v.note = "construction gives at most 2e; the homological lower bound needs free rank != 1";
  } else if (e < c) {
    v.kind = PhiKind::Unknown;
    v.note = "no construction with fewer handles than cycles is known; the value is open";
  } else {
    v.kind = PhiKind::Exact;
    v.value = 2 * e - 2 * c + 2;
    v.note = n == 2 ? "4-dimensional case: the smoothing piece is standard, so its punctured "
                      "embedding into S4 exists"
                    : "";
  }

  if (e >= c) {
    const AssemblyResult a = assemble(canonical_witness_graph(e, c), n);
    v.construction_count = a.critical_count;
    if (a.domain == v.domain && a.target == v.target) {
      ;  // descriptors agree by construction
    } else {
      v.consistent = false;
    }
    const LowerBoundReport lb = lower_bound(v.domain, n);
    if (lb.covered) v.lower_bound_value = *lb.bound;
    if (v.kind == PhiKind::Exact) {
      v.consistent &= v.construction_count == v.value;
      v.consistent &= lb.covered && v.lower_bound_value == v.value;
    }
    if (v.kind == PhiKind::UpperBoundOnly) v.consistent &= v.construction_count == v.value;
  }
  return v;
}

/// Visits every connected multigraph with labeled vertices, up to the
/// given edge budget (vertex count capped by max_vertices; a connected
/// graph never needs more than e + 1).
template <typename F>
void for_each_connected_multigraph(int max_edges, int max_vertices, F&& f) {
  if (max_edges < 0 || max_vertices < 1)
    throw std::invalid_argument("enumeration bounds out of range");
  for (int m = 1; m <= max_vertices; ++m) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) pairs.emplace_back(i, j);

    FiberSumGraph g;
    g.vertices = m;
    auto emit = [&]() {
      if (m > 1 && static_cast<int>(g.edges.size()) < m - 1) return;  // cannot be connected
      if (!is_connected(g)) return;
      f(const_cast<const FiberSumGraph&>(g));
    };

    // nondecreasing index sequences over the pair universe = edge multisets
    auto rec = [&](auto&& self, std::size_t from, int remaining) -> void {
      emit();
      if (remaining == 0) return;
      for (std::size_t k = from; k < pairs.size(); ++k) {
        g.edges.push_back(pairs[k]);
        self(self, k, remaining - 1);
        g.edges.pop_back();
      }
    };
    rec(rec, 0, max_edges);
  }
}

/// Isomorphism-invariant key: the lexicographically least sorted edge
/// list over all vertex relabelings.  Exhaustive over the symmetric
/// group, so intended for the small graphs this module traffics in.
inline std::vector<std::pair<int, int>> canonical_form(const FiberSumGraph& g) {
  if (g.vertices > 9)
    throw std::invalid_argument("canonical form supports at most 9 vertices");
  std::vector<std::pair<int, int>> best;
  bool have_best = false;
  std::vector<int> ids(static_cast<std::size_t>(g.vertices));
  std::vector<int> inv(ids.size());
  std::iota(ids.begin(), ids.end(), 0);
  do {
    // ids maps new label -> old label; invert once per candidate
    for (int w = 0; w < g.vertices; ++w) inv[static_cast<std::size_t>(ids[static_cast<std::size_t>(w)])] = w;
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
      const int nu = inv[static_cast<std::size_t>(u)];
      const int nv = inv[static_cast<std::size_t>(v)];
      mapped.emplace_back(std::min(nu, nv), std::max(nu, nv));
    }
    std::sort(mapped.begin(), mapped.end());
    if (!have_best || mapped < best) {
      best = std::move(mapped);
      have_best = true;
    }
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

}  // namespace hopfcrit
