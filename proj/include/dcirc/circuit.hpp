#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcirc/model.hpp"

namespace dcirc {

/// Flat slot layout for indicator and parameter leaves of a diagram.
/// Indicators: one slot per (variable, state). Parameters: one slot per family
/// instantiation (variable, parent row, state). Shared by circuits, leaf
/// assignments, and sweep workspaces.
struct FamilyLayout {
  explicit FamilyLayout(const InfluenceDiagram& d);

  std::int32_t indicator_slot(VarIndex v, std::int32_t state) const {
    return ind_offset[static_cast<std::size_t>(v)] + state;
  }
  std::int32_t parameter_slot(VarIndex v, std::size_t row, std::int32_t state) const {
    return par_offset[static_cast<std::size_t>(v)] +
           static_cast<std::int32_t>(row * width[static_cast<std::size_t>(v)]) + state;
  }

  std::vector<std::int32_t> ind_offset;  // per variable
  std::vector<std::int32_t> par_offset;  // per variable
  std::vector<std::int32_t> width;       // state count per variable
  std::vector<std::int32_t> rows;        // parent rows per variable
  std::int32_t ind_count = 0;
  std::int32_t par_count = 0;
};

enum class CircuitNodeKind : std::uint8_t { Constant, Indicator, Parameter, Sum, Product, Max };

std::string_view to_string(CircuitNodeKind k);

struct CircuitNode {
  CircuitNodeKind kind = CircuitNodeKind::Constant;
  double constant = 0.0;
  VarIndex var = kNoVar;       // indicator/parameter owner; branch variable for sum; decision for max
  std::int32_t state = -1;     // indicator/parameter state
  std::int32_t row = -1;       // parameter/max parent-instantiation row
  std::vector<std::int32_t> children;
  std::vector<std::int32_t> child_alternatives;  // max only, parallel to children

  bool operator==(const CircuitNode&) const = default;
};

/// How a (decision, parent-row) information state is represented in a circuit.
enum class PolicyState : std::uint8_t {
  Live,         // a max node picks the alternative
  Forced,       // collapsed to a single alternative during pruning
  Unreachable,  // the whole information state was pruned away (probability zero)
};

struct DecisionEntry {
  PolicyState state = PolicyState::Live;
  std::int32_t node = -1;         // max node id when Live
  std::int32_t alternative = -1;  // forced alternative when Forced
};

/// Immutable rooted DAG of constants, evidence indicators, network parameters,
/// sums, products, and maximizations. Children precede parents in index order.
class DecisionCircuit {
 public:
  const std::vector<CircuitNode>& nodes() const { return nodes_; }
  std::int32_t root() const { return root_; }
  std::size_t edge_count() const { return edges_; }
  const FamilyLayout& layout() const { return layout_; }

  /// Node id of a leaf, or -1 when the leaf does not occur in the circuit.
  std::int32_t indicator_leaf(VarIndex v, std::int32_t state) const {
    return ind_node_[static_cast<std::size_t>(layout_.indicator_slot(v, state))];
  }
  std::int32_t parameter_leaf(VarIndex v, std::size_t row, std::int32_t state) const {
    return par_node_[static_cast<std::size_t>(layout_.parameter_slot(v, row, state))];
  }

  const DecisionEntry& decision_entry(VarIndex decision, std::size_t row) const;

  bool operator==(const DecisionCircuit& o) const {
    return nodes_ == o.nodes_ && root_ == o.root_;
  }

 private:
  friend class CircuitBuilder;
  DecisionCircuit(FamilyLayout layout) : layout_(std::move(layout)) {}

  FamilyLayout layout_;
  std::vector<CircuitNode> nodes_;
  std::int32_t root_ = -1;
  std::size_t edges_ = 0;
  std::vector<std::int32_t> ind_node_;  // slot -> node id or -1
  std::vector<std::int32_t> par_node_;  // slot -> node id or -1
  std::vector<std::vector<DecisionEntry>> decision_entries_;  // [decision position][row]
  std::vector<std::int32_t> decision_entry_index_;            // var -> position in decision_entries_
};

/// Compile a validated diagram into a decision circuit. The elimination order
/// places each decision at its position in the decision ordering and each
/// chance variable at the latest position the information constraints allow.
DecisionCircuit compile(const InfluenceDiagram& diagram);

/// Remove every subcircuit multiplied by a structurally-zero parameter
/// (CPT entry exactly 0, availability 0). Root value and the derivatives of
/// all surviving leaves are unchanged under every leaf setting; max nodes left
/// with a single child collapse to it, recording the forced alternative.
DecisionCircuit prune(const DecisionCircuit& circuit, const InfluenceDiagram& diagram);

struct CircuitStats {
  std::size_t constants = 0, indicators = 0, parameters = 0;
  std::size_t sums = 0, products = 0, maxes = 0;
  std::size_t edges = 0;
  std::size_t depth = 0;  // longest root-to-leaf path, in edges
  std::size_t node_count() const { return constants + indicators + parameters + sums + products + maxes; }
};

CircuitStats circuit_stats(const DecisionCircuit& circuit);

/// Debug/golden-test dump: {"nodes":[{"id","kind","payload","children"}...],"root":n}.
std::string dump_circuit(const DecisionCircuit& circuit, const InfluenceDiagram& diagram);

}  // namespace dcirc
