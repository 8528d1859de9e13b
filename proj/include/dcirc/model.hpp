#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcirc/errors.hpp"

namespace dcirc {

using VarIndex = std::int32_t;
inline constexpr VarIndex kNoVar = -1;

enum class VarKind : std::uint8_t { Chance, Decision, Utility };

std::string_view to_string(VarKind k);

struct Variable {
  std::string id;
  VarKind kind = VarKind::Chance;
  std::vector<std::string> states;   // alternatives for decisions; {"u", "u_bar"} for the utility node
  std::vector<VarIndex> parents;     // declared order

  bool operator==(const Variable&) const = default;
};

/// Strictly increasing map from value units into utility space, with its inverse.
/// Linear: u(v) = u0*v + uinf.  Exponential: u(v) = -u0*exp(-gamma*v) + uinf.
class UtilityFunction {
 public:
  enum class Kind : std::uint8_t { Linear, Exponential };

  static UtilityFunction linear(double u0, double uinf);
  static UtilityFunction exponential(double gamma, double u0, double uinf);

  double operator()(double v) const;
  double inverse(double q) const;

  /// -u''(v)/u'(v): gamma for exponential, 0 for linear.
  double local_risk_aversion(double v) const;

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double u0() const { return u0_; }
  double uinf() const { return uinf_; }

  bool operator==(const UtilityFunction&) const = default;

 private:
  Kind kind_ = Kind::Linear;
  double gamma_ = 0.0;
  double u0_ = 1.0;
  double uinf_ = 0.0;
};

/// The "utility_function" block as given in a diagram document; u0/uinf may be
/// left for auto-derivation against the value-table range.
struct UtilitySpec {
  UtilityFunction::Kind kind = UtilityFunction::Kind::Linear;
  std::optional<double> risk_aversion;  // required iff exponential
  std::optional<double> u0;
  std::optional<double> uinf;

  bool operator==(const UtilitySpec&) const = default;
};

/// Margin used when auto-deriving u0/uinf: u(v_min) = kNormMargin, u(v_max) = 1 - kNormMargin.
inline constexpr double kNormMargin = 1e-3;

/// Resolve a spec against the value range [v_min, v_max], auto-deriving u0/uinf when absent.
/// Throws ValidationError if the resolved function leaves (0,1) anywhere on the range.
UtilityFunction resolve_utility(const UtilitySpec& spec, double v_min, double v_max);

/// theta_u rows: u(v) per value-table row, each checked to lie in (0,1).
std::vector<double> utility_parameters(const std::vector<double>& values, const UtilityFunction& u);

/// Validated influence diagram: DAG of chance/decision nodes plus a single
/// binary utility node, with CPTs, availability tables, a value table, a
/// utility function, and optional evidence. Immutable after construction.
class InfluenceDiagram {
 public:
  /// Parse and fully validate a diagram document (JSON text).
  static InfluenceDiagram parse(const std::string& document);
  /// Parse a document already loaded from a file path.
  static InfluenceDiagram load(const std::string& path);
  /// Serialize back to the document format; parse(to_document()) compares equal.
  std::string to_document() const;

  const std::string& name() const { return name_; }
  const std::string& value_unit() const { return value_unit_; }

  const std::vector<Variable>& variables() const { return vars_; }
  const Variable& var(VarIndex i) const { return vars_[static_cast<std::size_t>(i)]; }
  VarIndex find(std::string_view id) const;  // kNoVar if absent
  VarIndex require(std::string_view id) const;

  VarIndex utility_node() const { return utility_; }
  const std::vector<VarIndex>& decision_order() const { return decision_order_; }
  const std::vector<VarIndex>& value_attributes() const { return var(utility_).parents; }

  int state_count(VarIndex v) const { return static_cast<int>(var(v).states.size()); }
  std::size_t parent_rows(VarIndex v) const;
  /// Row index of v's parent instantiation under a full assignment
  /// (row-major, last declared parent varying fastest).
  std::size_t row_of(VarIndex v, const std::vector<std::int32_t>& assignment) const;
  /// Inverse of row_of: writes the parent states of row into `assignment`.
  void decode_row(VarIndex v, std::size_t row, std::vector<std::int32_t>& assignment) const;
  /// Human-readable parent instantiation, "p1=s1;p2=s2" (empty for no parents).
  std::string row_label(VarIndex v, std::size_t row) const;

  /// Flattened CPT of a chance variable: rows * states, row-major.
  const std::vector<double>& cpt(VarIndex chance) const;
  /// Availability flags of a decision: rows * alternatives (all ones unless given).
  const std::vector<std::uint8_t>& availability(VarIndex decision) const;
  /// Value per instantiation of Pa(U).
  const std::vector<double>& values() const { return values_; }

  const UtilitySpec& utility_spec() const { return spec_; }
  const UtilityFunction& utility_fn() const { return ufn_; }
  /// theta_u per Pa(U) row (u applied to the value table).
  const std::vector<double>& utility_params() const { return theta_u_; }

  const std::map<VarIndex, std::int32_t>& evidence() const { return evidence_; }

  /// Copy of this diagram under a different risk aversion; gamma == 0 selects
  /// the linear utility. u0/uinf are re-derived automatically.
  InfluenceDiagram with_risk_aversion(double gamma) const;

  bool operator==(const InfluenceDiagram& o) const;

 private:
  friend class DiagramBuilder;
  InfluenceDiagram() = default;
  void finalize();  // validates everything; fills derived members

  std::string name_;
  std::string value_unit_ = "M$";
  std::vector<Variable> vars_;
  std::map<std::string, VarIndex, std::less<>> index_;
  VarIndex utility_ = kNoVar;
  std::vector<VarIndex> decision_order_;
  std::map<VarIndex, std::vector<double>> cpts_;
  std::map<VarIndex, std::vector<std::uint8_t>> availability_;
  std::vector<double> values_;
  UtilitySpec spec_;
  UtilityFunction ufn_ = UtilityFunction::linear(1.0, 0.0);
  std::vector<double> theta_u_;
  std::map<VarIndex, std::int32_t> evidence_;
};

}  // namespace dcirc
