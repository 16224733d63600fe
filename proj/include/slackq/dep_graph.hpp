// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "slackq/circuit.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slackq {

/// Cycle counts per gate class. Barriers and measures are treated as
/// zero-latency markers throughout.
struct LatencyModel {
  int single_qubit_cycles = 1;
  int cnot_cycles = 2;
  int swap_cycles_override = 0;  // 0: derive as 3 * cnot_cycles

  int swap_cycles() const {
    return swap_cycles_override > 0 ? swap_cycles_override : 3 * cnot_cycles;
  }

  int latency_of(const RawGate& g) const {
    if (g.is_barrier() || g.is_measure()) return 0;
    if (g.is_cx()) return cnot_cycles;
    if (g.is_swap()) return swap_cycles();
    return single_qubit_cycles;
  }

  /// All gates one cycle, swaps three (the model used by small worked
  /// examples).
  static LatencyModel unit() { return LatencyModel{1, 1, 0}; }
};

/// Gate dependence DAG. Real gates keep their circuit indices; one
/// zero-latency dummy source per qubit follows them (ids num_gates()..).
struct DepGraph {
  int num_qubits = 0;
  int num_real = 0;
  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> succs;
  std::vector<int> latency;
  std::vector<char> is_barrier;  // per node; dummies count as barriers=false

  int num_nodes() const { return static_cast<int>(preds.size()); }
  int num_gates() const { return num_real; }
  int dummy_of(int qubit) const { return num_real + qubit; }
  bool is_dummy(int node) const { return node >= num_real; }
};

/// Build the dependence DAG: an edge g1 -> g2 exists iff g2 is the next
/// gate after g1 on some shared qubit.
inline DepGraph build_dep_graph(const SourceCircuit& c,
                                const LatencyModel& lm = LatencyModel{}) {
  DepGraph dg;
  dg.num_qubits = c.num_qubits;
  dg.num_real = static_cast<int>(c.gates.size());
  int n = dg.num_real + c.num_qubits;
  dg.preds.resize(n);
  dg.succs.resize(n);
  dg.latency.assign(n, 0);
  dg.is_barrier.assign(n, 0);

  std::vector<int> last(c.num_qubits);
  for (int q = 0; q < c.num_qubits; ++q) last[q] = dg.dummy_of(q);

  for (int i = 0; i < dg.num_real; ++i) {
    const RawGate& g = c.gates[i];
    dg.latency[i] = lm.latency_of(g);
    dg.is_barrier[i] = g.is_barrier() ? 1 : 0;
    for (int q : g.qubits) {
      int p = last[q];
      // a two-qubit gate may already be chained via its other operand
      if (std::find(dg.succs[p].begin(), dg.succs[p].end(), i) ==
          dg.succs[p].end()) {
        dg.succs[p].push_back(i);
        dg.preds[i].push_back(p);
      }
      last[q] = i;
    }
  }
  return dg;
}

/// ASAP start times by topological relaxation:
/// earliest_start[n] = max over predecessors p of earliest_start[p] + latency[p].
inline std::vector<int> earliest_starts(const DepGraph& dg) {
  int n = dg.num_nodes();
  std::vector<int> indeg(n, 0);
  for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(dg.preds[v].size());
  std::vector<int> start(n, 0);
  std::vector<int> queue;
  queue.reserve(n);
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  std::size_t head = 0;
  int processed = 0;
  while (head < queue.size()) {
    int v = queue[head++];
    ++processed;
    for (int s : dg.succs[v]) {
      start[s] = std::max(start[s], start[v] + dg.latency[v]);
      if (--indeg[s] == 0) queue.push_back(s);
    }
  }
  if (processed != n) throw std::runtime_error("dependence graph has a cycle");
  return start;
}

/// Length of the longest latency-weighted path; 0 for an empty graph.
inline int critical_path(const DepGraph& dg) {
  auto start = earliest_starts(dg);
  int cp = 0;
  for (int v = 0; v < dg.num_nodes(); ++v) {
    cp = std::max(cp, start[v] + dg.latency[v]);
  }
  return cp;
}

/// ALAP start times against the given horizon (defaults to the critical
/// path). alap[n] - asap[n] is the total float of node n.
inline std::vector<int> latest_starts(const DepGraph& dg, int horizon = -1) {
  if (horizon < 0) horizon = critical_path(dg);
  int n = dg.num_nodes();
  std::vector<int> outdeg(n, 0);
  std::vector<int> late(n);
  for (int v = 0; v < n; ++v) {
    outdeg[v] = static_cast<int>(dg.succs[v].size());
    late[v] = horizon - dg.latency[v];
  }
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (outdeg[v] == 0) queue.push_back(v);
  }
  std::size_t head = 0;
  while (head < queue.size()) {
    int v = queue[head++];
    for (int p : dg.preds[v]) {
      late[p] = std::min(late[p], late[v] - dg.latency[p]);
      if (--outdeg[p] == 0) queue.push_back(p);
    }
  }
  return late;
}

struct Layering {
  std::vector<std::vector<int>> layers;  // gate ids, ordered by start time
};

/// Group gates sharing an earliest start time into layers. Dummies and
/// barriers are markers, not executable gates, and are left out.
inline Layering partition_layers(const DepGraph& dg) {
  auto start = earliest_starts(dg);
  std::map<int, std::vector<int>> by_start;
  for (int v = 0; v < dg.num_gates(); ++v) {
    if (dg.is_barrier[v]) continue;
    by_start[start[v]].push_back(v);
  }
  Layering out;
  for (auto& [t, gates] : by_start) out.layers.push_back(std::move(gates));
  return out;
}

struct SlackWindow {
  enum class Kind { Fixed, Flexible };
  int qubit = 0;
  int start = 0;
  int end = 0;
  Kind kind = Kind::Fixed;
};

/// Idle intervals per qubit between consecutive gates under ASAP starts.
/// A window is fixed when neither bounding gate can move without growing
/// the critical path (zero total float); dummies are immovable.
inline std::vector<SlackWindow> idle_windows(const SourceCircuit& c,
                                             const DepGraph& dg) {
  auto asap = earliest_starts(dg);
  auto alap = latest_starts(dg);
  auto zero_float = [&](int node) {
    if (dg.is_dummy(node)) return true;
    return asap[node] == alap[node];
  };

  std::vector<SlackWindow> out;
  for (int q = 0; q < c.num_qubits; ++q) {
    int prev = dg.dummy_of(q);
    int prev_end = 0;
    for (int i = 0; i < dg.num_gates(); ++i) {
      const RawGate& g = c.gates[i];
      if (std::find(g.qubits.begin(), g.qubits.end(), q) == g.qubits.end()) {
        continue;
      }
      if (asap[i] > prev_end) {
        SlackWindow w;
        w.qubit = q;
        w.start = prev_end;
        w.end = asap[i];
        w.kind = (zero_float(prev) && zero_float(i)) ? SlackWindow::Kind::Fixed
                                                     : SlackWindow::Kind::Flexible;
        out.push_back(w);
      }
      prev = i;
      prev_end = asap[i] + dg.latency[i];
    }
  }
  return out;
}

/// DOT dump for debugging; node label "gN [start,end]".
inline std::string to_dot(const DepGraph& dg) {
  auto start = earliest_starts(dg);
  std::ostringstream os;
  os << "digraph deps {\n";
  for (int v = 0; v < dg.num_nodes(); ++v) {
    std::string name =
        dg.is_dummy(v) ? "q" + std::to_string(v - dg.num_gates())
                       : "g" + std::to_string(v + 1);
    os << "  n" << v << " [label=\"" << name << " [" << start[v] << ","
       << start[v] + dg.latency[v] << "]\"";
    if (dg.is_dummy(v)) os << " shape=point";
    os << "];\n";
  }
  for (int v = 0; v < dg.num_nodes(); ++v) {
    for (int s : dg.succs[v]) os << "  n" << v << " -> n" << s << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace slackq
