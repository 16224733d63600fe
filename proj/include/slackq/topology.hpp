// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "slackq/dep_graph.hpp"
#include "slackq/mapping.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace slackq {

/// Physical-qubit connectivity. Edges are stored as canonical (a < b)
/// pairs in ascending order; for directed devices the stored orientation
/// is (control, target).
struct CouplingGraph {
  std::string name;
  int num_physical = 0;
  bool bidirectional = true;
  std::vector<std::pair<int, int>> edges;  // canonical order, deduplicated
  std::vector<std::pair<int, int>> directed_edges;  // as declared

  bool has_undirected_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::pair{a, b});
  }

  bool has_directed_edge(int control, int target) const {
    return std::find(directed_edges.begin(), directed_edges.end(),
                     std::pair{control, target}) != directed_edges.end();
  }
};

struct DistanceMatrix {
  std::vector<std::vector<int>> d;
  int operator()(int a, int b) const { return d[a][b]; }
};

namespace detail {

inline CouplingGraph finalizeGraph(std::string name, int n, bool bidir,
                                   std::vector<std::pair<int, int>> declared) {
  CouplingGraph g;
  g.name = std::move(name);
  g.num_physical = n;
  g.bidirectional = bidir;
  if (n < 1) throw std::runtime_error("topology '" + g.name + "': no qubits");

  std::set<std::pair<int, int>> canon;
  for (auto [a, b] : declared) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw std::runtime_error("topology '" + g.name + "': edge index out of range");
    }
    if (a == b) {
      throw std::runtime_error("topology '" + g.name + "': self edge");
    }
    canon.emplace(std::min(a, b), std::max(a, b));
  }
  g.directed_edges = std::move(declared);
  g.edges.assign(canon.begin(), canon.end());

  // connectivity over the undirected view
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [a, b] : g.edges) {
      int other = -1;
      if (a == v) other = b;
      if (b == v) other = a;
      if (other >= 0 && !seen[other]) {
        seen[other] = 1;
        ++count;
        stack.push_back(other);
      }
    }
  }
  if (count != n) {
    throw std::runtime_error("topology '" + g.name + "' is not connected");
  }
  return g;
}

inline CouplingGraph lineGraph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return finalizeGraph("line:" + std::to_string(n), n, true, std::move(e));
}

inline CouplingGraph gridGraph(int rows, int cols) {
  std::vector<std::pair<int, int>> e;
  auto at = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(at(r, c), at(r, c + 1));
      if (r + 1 < rows) e.emplace_back(at(r, c), at(r + 1, c));
    }
  }
  return finalizeGraph("grid:" + std::to_string(rows) + "x" + std::to_string(cols),
                       rows * cols, true, std::move(e));
}

// IBM Q20 Tokyo: 4x5 grid plus cross couplers, sourced from the public
// device description. Treated as bidirectional.
inline CouplingGraph tokyoGraph() {
  std::vector<std::pair<int, int>> e = {
      {0, 1},  {1, 2},   {2, 3},   {3, 4},   {5, 6},   {6, 7},   {7, 8},
      {8, 9},  {10, 11}, {11, 12}, {12, 13}, {13, 14}, {15, 16}, {16, 17},
      {17, 18}, {18, 19}, {0, 5},  {1, 6},   {2, 7},   {3, 8},   {4, 9},
      {5, 10}, {6, 11},  {7, 12},  {8, 13},  {9, 14},  {10, 15}, {11, 16},
      {12, 17}, {13, 18}, {14, 19}, {1, 7},  {2, 6},   {3, 9},   {4, 8},
      {5, 11}, {6, 10},  {7, 13},  {8, 12},  {11, 17}, {12, 16}, {13, 19},
      {14, 18}};
  return finalizeGraph("tokyo", 20, true, std::move(e));
}

}  // namespace detail

/// Load a topology from a JSON file:
///   {"name": ..., "num_qubits": n, "bidirectional": true, "edges": [[a,b],...]}
inline CouplingGraph load_topology_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topology file '" + path + "'");
  nlohmann::json j;
  in >> j;
  std::vector<std::pair<int, int>> e;
  for (const auto& pair : j.at("edges")) {
    e.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
  }
  return detail::finalizeGraph(j.value("name", path), j.at("num_qubits").get<int>(),
                               j.value("bidirectional", true), std::move(e));
}

/// Resolve a built-in name (`tokyo`, `line:<n>`, `grid:<r>x<c>`) or a path
/// to a topology JSON file.
inline CouplingGraph load_topology(const std::string& spec) {
  if (spec == "tokyo") return detail::tokyoGraph();
  if (spec.rfind("line:", 0) == 0) {
    int n = std::stoi(spec.substr(5));
    if (n < 1) throw std::runtime_error("line topology needs >= 1 qubit");
    return detail::lineGraph(n);
  }
  if (spec.rfind("grid:", 0) == 0) {
    std::string dims = spec.substr(5);
    auto x = dims.find('x');
    if (x == std::string::npos) {
      throw std::runtime_error("grid topology spec must be grid:<r>x<c>");
    }
    int r = std::stoi(dims.substr(0, x));
    int c = std::stoi(dims.substr(x + 1));
    if (r < 1 || c < 1) throw std::runtime_error("grid dimensions must be positive");
    return detail::gridGraph(r, c);
  }
  if (spec.find('.') != std::string::npos || spec.find('/') != std::string::npos) {
    return load_topology_json(spec);
  }
  throw std::runtime_error("unknown topology '" + spec + "'");
}

/// BFS hop counts over the undirected view.
inline DistanceMatrix all_pairs_distance(const CouplingGraph& g) {
  int n = g.num_physical;
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  DistanceMatrix m;
  m.d.assign(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    m.d[s][s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (m.d[s][w] < 0) {
          m.d[s][w] = m.d[s][v] + 1;
          q.push(w);
        }
      }
    }
  }
  return m;
}

struct ExecCheck {
  bool executable = false;
  bool needs_h_wrap = false;  // directed device, link usable in reverse only
  operator bool() const { return executable; }
};

/// Whether a gate can run under the current mapping. Single-qubit gates
/// always can; a cx needs its mapped pair on an edge. On directed devices
/// a reverse-oriented edge is usable with a Hadamard wrap.
inline ExecCheck check_executable(const CouplingGraph& g, const Mapping& pi,
                                  const RawGate& gate) {
  if (!gate.is_two_qubit()) return {true, false};
  int pa = pi.to_physical(gate.qubits[0]);
  int pb = pi.to_physical(gate.qubits[1]);
  if (gate.is_swap()) {
    // swaps may use any link regardless of direction
    return {g.has_undirected_edge(pa, pb), false};
  }
  if (g.bidirectional) return {g.has_undirected_edge(pa, pb), false};
  if (g.has_directed_edge(pa, pb)) return {true, false};
  if (g.has_directed_edge(pb, pa)) return {true, true};
  return {false, false};
}

inline bool is_executable(const CouplingGraph& g, const Mapping& pi,
                          const RawGate& gate) {
  return check_executable(g, pi, gate).executable;
}

/// Cost of one swap on this device: (gate count, cycles).
inline std::pair<int, int> swap_cost(const CouplingGraph& g,
                                     const LatencyModel& lm) {
  if (lm.swap_cycles_override > 0) return {3, lm.swap_cycles_override};
  if (g.bidirectional) return {3, 3 * lm.cnot_cycles};
  return {7, 3 * lm.cnot_cycles + 4 * lm.single_qubit_cycles};
}

}  // namespace slackq
