// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slackq {

/// One statement of a parsed program. Angle parameters are carried as
/// verbatim text and never evaluated by the routing passes.
struct RawGate {
  std::string name;                 // lowercase token: h, t, rz, cx, swap, barrier, measure, ...
  std::vector<std::string> params;  // opaque angle expressions
  std::vector<int> qubits;          // 1 or 2 qubits; barrier may list more
  int creg_bit = -1;                // measure only: target classical bit

  bool is_cx() const { return name == "cx"; }
  bool is_swap() const { return name == "swap"; }
  bool is_barrier() const { return name == "barrier"; }
  bool is_measure() const { return name == "measure"; }
  bool is_two_qubit() const { return is_cx() || is_swap(); }

  friend bool operator==(const RawGate&, const RawGate&) = default;
};

/// A single-register circuit in source order.
struct SourceCircuit {
  int num_qubits = 0;
  std::string qreg_name = "q";
  std::string creg_name;  // empty when no classical register
  int creg_size = 0;
  std::vector<std::string> includes = {"qelib1.inc"};
  std::vector<RawGate> gates;

  friend bool operator==(const SourceCircuit&, const SourceCircuit&) = default;
};

}  // namespace slackq
