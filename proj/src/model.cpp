#include "dcirc/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dcirc {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(VarKind k) {
  switch (k) {
    case VarKind::Chance: return "chance";
    case VarKind::Decision: return "decision";
    case VarKind::Utility: return "utility";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// UtilityFunction

UtilityFunction UtilityFunction::linear(double u0, double uinf) {
  if (!(u0 > 0.0)) throw ValidationError("linear utility requires u0 > 0");
  UtilityFunction f;
  f.kind_ = Kind::Linear;
  f.u0_ = u0;
  f.uinf_ = uinf;
  return f;
}

UtilityFunction UtilityFunction::exponential(double gamma, double u0, double uinf) {
  if (!(gamma > 0.0)) throw ValidationError("exponential utility requires risk_aversion > 0");
  if (!(u0 > 0.0)) throw ValidationError("exponential utility requires u0 > 0");
  UtilityFunction f;
  f.kind_ = Kind::Exponential;
  f.gamma_ = gamma;
  f.u0_ = u0;
  f.uinf_ = uinf;
  return f;
}

double UtilityFunction::operator()(double v) const {
  if (kind_ == Kind::Linear) return u0_ * v + uinf_;
  return -u0_ * std::exp(-gamma_ * v) + uinf_;
}

double UtilityFunction::inverse(double q) const {
  if (kind_ == Kind::Linear) return (q - uinf_) / u0_;
  return -std::log((uinf_ - q) / u0_) / gamma_;
}

double UtilityFunction::local_risk_aversion(double) const {
  return kind_ == Kind::Exponential ? gamma_ : 0.0;
}

UtilityFunction resolve_utility(const UtilitySpec& spec, double v_min, double v_max) {
  const bool expo = spec.kind == UtilityFunction::Kind::Exponential;
  if (expo && !spec.risk_aversion)
    throw ValidationError("utility_function: risk_aversion is required for type \"exponential\"");
  if (!expo && spec.risk_aversion)
    throw ValidationError("utility_function: risk_aversion is only valid for type \"exponential\"");
  if (spec.u0.has_value() != spec.uinf.has_value())
    throw ValidationError("utility_function: u0 and uinf must be given together");

  if (spec.u0) {
    return expo ? UtilityFunction::exponential(*spec.risk_aversion, *spec.u0, *spec.uinf)
                : UtilityFunction::linear(*spec.u0, *spec.uinf);
  }

  const double eps = kNormMargin;
  if (expo) {
    const double g = *spec.risk_aversion;
    if (!(g > 0.0)) throw ValidationError("utility_function: risk_aversion must be > 0");
    if (v_min == v_max) {
      // Constant value table: map it to utility 1/2.
      const double u0 = 0.5 * std::exp(g * v_min);
      return UtilityFunction::exponential(g, u0, 1.0);
    }
    const double a = std::exp(-g * v_min), b = std::exp(-g * v_max);
    const double u0 = (1.0 - 2.0 * eps) / (a - b);
    if (!std::isfinite(u0) || !(u0 > 0.0))
      throw ValidationError("utility_function: normalization failed (value range too wide for this risk_aversion)");
    return UtilityFunction::exponential(g, u0, eps + u0 * a);
  }
  if (v_min == v_max) return UtilityFunction::linear(1.0, 0.5 - v_min);
  const double u0 = (1.0 - 2.0 * eps) / (v_max - v_min);
  return UtilityFunction::linear(u0, eps - u0 * v_min);
}

std::vector<double> utility_parameters(const std::vector<double>& values, const UtilityFunction& u) {
  std::vector<double> theta(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double q = u(values[i]);
    if (!(q > 0.0) || !(q < 1.0)) {
      std::ostringstream os;
      os << "utility normalization failure: u(" << values[i] << ") = " << q
         << " falls outside (0,1) at value-table row " << i;
      throw ValidationError(os.str());
    }
    theta[i] = q;
  }
  return theta;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void fail_parse(const std::string& msg) { throw ParseError("parse error: " + msg); }
[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

void reject_unknown_keys(const ordered_json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      fail_parse("unknown field \"" + it.key() + "\" in " + where);
  }
}

std::vector<std::string> string_list(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) fail_parse(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) fail_parse(where + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

double number_at(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) fail_parse(where + " must be a number");
  return j.get<double>();
}

struct RawNode {
  std::string id;
  std::string kind;
  std::vector<std::string> states;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> cpt;
  std::vector<std::vector<double>> availability;
  bool availability_given = false;
  std::vector<double> values;
};

}  // namespace

// Builder has access to InfluenceDiagram privates.
class DiagramBuilder {
 public:
  static InfluenceDiagram build(const ordered_json& doc) {
    if (!doc.is_object()) fail_parse("top-level document must be a JSON object");
    reject_unknown_keys(doc, {"name", "value_unit", "nodes", "utility_function", "evidence"}, "document");

    InfluenceDiagram d;
    if (doc.contains("name")) {
      if (!doc["name"].is_string()) fail_parse("\"name\" must be a string");
      d.name_ = doc["name"].get<std::string>();
    }
    if (doc.contains("value_unit")) {
      if (!doc["value_unit"].is_string()) fail_parse("\"value_unit\" must be a string");
      d.value_unit_ = doc["value_unit"].get<std::string>();
    }
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) fail_parse("\"nodes\" must be an array");

    std::vector<RawNode> raw;
    for (const auto& jn : doc["nodes"]) raw.push_back(parse_node(jn));

    // First pass: ids and kinds, so parent references can be resolved.
    for (const auto& rn : raw) {
      if (d.index_.count(rn.id)) fail("duplicate node id \"" + rn.id + "\"");
      Variable v;
      v.id = rn.id;
      if (rn.kind == "chance") v.kind = VarKind::Chance;
      else if (rn.kind == "decision") v.kind = VarKind::Decision;
      else if (rn.kind == "utility") v.kind = VarKind::Utility;
      else fail_parse("node \"" + rn.id + "\": unknown kind \"" + rn.kind + "\"");
      v.states = v.kind == VarKind::Utility ? std::vector<std::string>{"u", "u_bar"} : rn.states;
      d.index_.emplace(rn.id, static_cast<VarIndex>(d.vars_.size()));
      d.vars_.push_back(std::move(v));
    }

    // Second pass: parents and tables.
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const RawNode& rn = raw[i];
      Variable& v = d.vars_[i];
      for (const auto& pid : rn.parents) {
        const VarIndex p = d.find(pid);
        if (p == kNoVar) fail("node \"" + rn.id + "\": unknown parent \"" + pid + "\"");
        v.parents.push_back(p);
      }
    }
    check_acyclic(d);

    for (std::size_t i = 0; i < raw.size(); ++i) {
      const RawNode& rn = raw[i];
      const auto vi = static_cast<VarIndex>(i);
      switch (d.vars_[i].kind) {
        case VarKind::Chance: d.cpts_[vi] = check_cpt(d, vi, rn); break;
        case VarKind::Decision: d.availability_[vi] = check_availability(d, vi, rn); break;
        case VarKind::Utility:
          if (d.utility_ != kNoVar)
            fail("diagram must contain exactly one utility node (found \"" +
                 d.var(d.utility_).id + "\" and \"" + rn.id + "\")");
          d.utility_ = vi;
          d.values_ = rn.values;
          break;
      }
    }

    if (!doc.contains("utility_function")) fail_parse("missing \"utility_function\"");
    d.spec_ = parse_spec(doc["utility_function"]);

    if (doc.contains("evidence")) {
      if (!doc["evidence"].is_object()) fail_parse("\"evidence\" must be an object");
      for (auto it = doc["evidence"].begin(); it != doc["evidence"].end(); ++it) {
        const VarIndex v = d.find(it.key());
        if (v == kNoVar) fail("evidence on unknown variable \"" + it.key() + "\"");
        if (d.var(v).kind != VarKind::Chance)
          fail("evidence is only allowed on chance variables (got \"" + it.key() + "\")");
        if (!it.value().is_string()) fail_parse("evidence value for \"" + it.key() + "\" must be a state label");
        const auto& states = d.var(v).states;
        const auto s = std::find(states.begin(), states.end(), it.value().get<std::string>());
        if (s == states.end())
          fail("evidence on \"" + it.key() + "\": unknown state \"" + it.value().get<std::string>() + "\"");
        d.evidence_[v] = static_cast<std::int32_t>(s - states.begin());
      }
    }

    d.finalize();
    return d;
  }

 private:
  static RawNode parse_node(const ordered_json& jn) {
    if (!jn.is_object()) fail_parse("every node must be an object");
    if (!jn.contains("id") || !jn["id"].is_string()) fail_parse("node is missing a string \"id\"");
    RawNode rn;
    rn.id = jn["id"].get<std::string>();
    const std::string where = "node \"" + rn.id + "\"";
    if (!jn.contains("kind") || !jn["kind"].is_string()) fail_parse(where + " is missing \"kind\"");
    rn.kind = jn["kind"].get<std::string>();
    if (jn.contains("parents")) rn.parents = string_list(jn["parents"], where + ".parents");

    if (rn.kind == "chance") {
      reject_unknown_keys(jn, {"id", "kind", "states", "parents", "cpt"}, where);
      if (!jn.contains("states")) fail_parse(where + " is missing \"states\"");
      rn.states = string_list(jn["states"], where + ".states");
      if (!jn.contains("cpt") || !jn["cpt"].is_array()) fail_parse(where + " is missing \"cpt\" rows");
      for (const auto& row : jn["cpt"]) {
        std::vector<double> r;
        if (!row.is_array()) fail_parse(where + ".cpt must be an array of rows");
        for (const auto& e : row) r.push_back(number_at(e, where + ".cpt entry"));
        rn.cpt.push_back(std::move(r));
      }
    } else if (rn.kind == "decision") {
      reject_unknown_keys(jn, {"id", "kind", "alternatives", "parents", "availability"}, where);
      if (!jn.contains("alternatives")) fail_parse(where + " is missing \"alternatives\"");
      rn.states = string_list(jn["alternatives"], where + ".alternatives");
      if (jn.contains("availability")) {
        rn.availability_given = true;
        if (!jn["availability"].is_array()) fail_parse(where + ".availability must be an array of rows");
        for (const auto& row : jn["availability"]) {
          std::vector<double> r;
          if (!row.is_array()) fail_parse(where + ".availability must be an array of rows");
          for (const auto& e : row) r.push_back(number_at(e, where + ".availability entry"));
          rn.availability.push_back(std::move(r));
        }
      }
    } else if (rn.kind == "utility") {
      reject_unknown_keys(jn, {"id", "kind", "parents", "values"}, where);
      if (!jn.contains("values") || !jn["values"].is_array()) fail_parse(where + " is missing \"values\"");
      for (const auto& e : jn["values"]) rn.values.push_back(number_at(e, where + ".values entry"));
    }
    return rn;
  }

  static UtilitySpec parse_spec(const ordered_json& js) {
    if (!js.is_object()) fail_parse("\"utility_function\" must be an object");
    reject_unknown_keys(js, {"type", "risk_aversion", "u0", "uinf"}, "utility_function");
    if (!js.contains("type") || !js["type"].is_string()) fail_parse("utility_function is missing \"type\"");
    UtilitySpec s;
    const std::string t = js["type"].get<std::string>();
    if (t == "linear") s.kind = UtilityFunction::Kind::Linear;
    else if (t == "exponential") s.kind = UtilityFunction::Kind::Exponential;
    else fail_parse("utility_function.type must be \"linear\" or \"exponential\"");
    if (js.contains("risk_aversion")) s.risk_aversion = number_at(js["risk_aversion"], "risk_aversion");
    if (js.contains("u0")) s.u0 = number_at(js["u0"], "u0");
    if (js.contains("uinf")) s.uinf = number_at(js["uinf"], "uinf");
    return s;
  }

  static void check_acyclic(const InfluenceDiagram& d) {
    const std::size_t n = d.vars_.size();
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<VarIndex> stack;
    for (std::size_t s = 0; s < n; ++s) {
      if (state[s]) continue;
      stack.push_back(static_cast<VarIndex>(s));
      while (!stack.empty()) {
        const VarIndex v = stack.back();
        if (state[v] == 0) {
          state[v] = 1;
          for (VarIndex p : d.var(v).parents) {
            if (state[p] == 1) fail("cycle detected through \"" + d.var(p).id + "\"");
            if (state[p] == 0) stack.push_back(p);
          }
        } else {
          state[v] = 2;
          stack.pop_back();
        }
      }
    }
  }

  static std::vector<double> check_cpt(const InfluenceDiagram& d, VarIndex vi, const RawNode& rn) {
    const Variable& v = d.var(vi);
    if (v.states.size() < 2) fail("chance variable \"" + v.id + "\" must have at least 2 states");
    const std::size_t rows = d.parent_rows(vi), width = v.states.size();
    if (rn.cpt.size() != rows) {
      std::ostringstream os;
      os << "cpt of \"" << v.id << "\" has " << rn.cpt.size() << " rows, expected " << rows;
      fail(os.str());
    }
    std::vector<double> flat;
    flat.reserve(rows * width);
    for (std::size_t r = 0; r < rows; ++r) {
      if (rn.cpt[r].size() != width) {
        std::ostringstream os;
        os << "cpt row " << r << " of \"" << v.id << "\" has " << rn.cpt[r].size()
           << " entries, expected " << width;
        fail(os.str());
      }
      double sum = 0.0;
      for (double e : rn.cpt[r]) {
        if (!(e >= 0.0) || !(e <= 1.0)) {
          std::ostringstream os;
          os << "cpt row " << r << " of \"" << v.id << "\" has entry " << e << " outside [0,1]";
          fail(os.str());
        }
        sum += e;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "cpt row " << r << " of \"" << v.id << "\" sums to " << sum << " (must be 1 within 1e-9)";
        fail(os.str());
      }
      for (double e : rn.cpt[r]) flat.push_back(e / sum);
    }
    return flat;
  }

  static std::vector<std::uint8_t> check_availability(const InfluenceDiagram& d, VarIndex vi,
                                                      const RawNode& rn) {
    const Variable& v = d.var(vi);
    if (v.states.size() < 2) fail("decision \"" + v.id + "\" must have at least 2 alternatives");
    const std::size_t rows = d.parent_rows(vi), width = v.states.size();
    std::vector<std::uint8_t> flat(rows * width, 1);
    if (!rn.availability_given) return flat;
    if (rn.availability.size() != rows) {
      std::ostringstream os;
      os << "availability of \"" << v.id << "\" has " << rn.availability.size()
         << " rows, expected " << rows;
      fail(os.str());
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (rn.availability[r].size() != width) {
        std::ostringstream os;
        os << "availability row " << r << " of \"" << v.id << "\" has "
           << rn.availability[r].size() << " entries, expected " << width;
        fail(os.str());
      }
      bool any = false;
      for (std::size_t c = 0; c < width; ++c) {
        const double e = rn.availability[r][c];
        if (e != 0.0 && e != 1.0) {
          std::ostringstream os;
          os << "availability row " << r << " of \"" << v.id << "\" has entry " << e
             << " (must be 0 or 1)";
          fail(os.str());
        }
        flat[r * width + c] = e == 1.0 ? 1 : 0;
        any = any || e == 1.0;
      }
      if (!any) {
        std::ostringstream os;
        os << "availability row " << r << " of \"" << v.id << "\" leaves no alternative available";
        fail(os.str());
      }
    }
    return flat;
  }
};

InfluenceDiagram InfluenceDiagram::parse(const std::string& document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return DiagramBuilder::build(doc);
}

InfluenceDiagram InfluenceDiagram::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// ---------------------------------------------------------------------------
// Validation of global invariants + derived members

void InfluenceDiagram::finalize() {
  if (utility_ == kNoVar) fail("diagram has no utility node");

  // The utility node must be a sink.
  for (const Variable& v : vars_)
    for (VarIndex p : v.parents)
      if (p == utility_) fail("utility node \"" + var(utility_).id + "\" cannot be a parent of \"" + v.id + "\"");

  // Every chance variable owns exactly one CPT (construction guarantees the map);
  // the utility node's parents are the value attributes with the matching table size.
  const std::size_t expected = parent_rows(utility_);
  if (values_.size() != expected) {
    std::ostringstream os;
    os << "value table has " << values_.size() << " entries, expected " << expected;
    fail(os.str());
  }
  for (double v : values_)
    if (!std::isfinite(v)) fail("value table contains a non-finite entry");

  // Decisions: total order under no-forgetting. A later decision must have all
  // earlier decisions (and their parents) among its own parents.
  std::vector<VarIndex> decisions;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == VarKind::Decision) decisions.push_back(static_cast<VarIndex>(i));
  std::sort(decisions.begin(), decisions.end(), [&](VarIndex a, VarIndex b) {
    return var(a).parents.size() < var(b).parents.size();
  });
  for (std::size_t k = 0; k + 1 < decisions.size(); ++k) {
    const VarIndex cur = decisions[k], nxt = decisions[k + 1];
    const auto& np = var(nxt).parents;
    auto holds = [&](VarIndex q) { return std::find(np.begin(), np.end(), q) != np.end(); };
    if (!holds(cur))
      fail("decisions are not totally ordered: \"" + var(nxt).id + "\" does not observe \"" +
           var(cur).id + "\"");
    for (VarIndex q : var(cur).parents)
      if (!holds(q))
        fail("no-forgetting violated: \"" + var(nxt).id + "\" does not observe \"" + var(q).id +
             "\" which is known at \"" + var(cur).id + "\"");
  }
  decision_order_ = std::move(decisions);

  // Utility function against the value range.
  double v_min = 0.0, v_max = 0.0;
  if (!values_.empty()) {
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    v_min = *lo;
    v_max = *hi;
  }
  ufn_ = resolve_utility(spec_, v_min, v_max);
  theta_u_ = utility_parameters(values_, ufn_);
  for (double v : values_) {
    if (std::abs(ufn_.inverse(ufn_(v)) - v) >= 1e-9) {
      std::ostringstream os;
      os << "utility function does not round-trip at v = " << v;
      fail(os.str());
    }
  }
}

// ---------------------------------------------------------------------------
// Accessors

VarIndex InfluenceDiagram::find(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? kNoVar : it->second;
}

VarIndex InfluenceDiagram::require(std::string_view id) const {
  const VarIndex v = find(id);
  if (v == kNoVar) throw PreconditionError("unknown variable \"" + std::string(id) + "\"");
  return v;
}

std::size_t InfluenceDiagram::parent_rows(VarIndex v) const {
  std::size_t rows = 1;
  for (VarIndex p : var(v).parents) rows *= var(p).states.size();
  return rows;
}

std::size_t InfluenceDiagram::row_of(VarIndex v, const std::vector<std::int32_t>& assignment) const {
  std::size_t row = 0;
  for (VarIndex p : var(v).parents)
    row = row * var(p).states.size() + static_cast<std::size_t>(assignment[static_cast<std::size_t>(p)]);
  return row;
}

void InfluenceDiagram::decode_row(VarIndex v, std::size_t row, std::vector<std::int32_t>& assignment) const {
  const auto& ps = var(v).parents;
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    const std::size_t card = var(*it).states.size();
    assignment[static_cast<std::size_t>(*it)] = static_cast<std::int32_t>(row % card);
    row /= card;
  }
}

std::string InfluenceDiagram::row_label(VarIndex v, std::size_t row) const {
  std::vector<std::int32_t> asg(vars_.size(), -1);
  decode_row(v, row, asg);
  std::string out;
  for (VarIndex p : var(v).parents) {
    if (!out.empty()) out += ';';
    out += var(p).id;
    out += '=';
    out += var(p).states[static_cast<std::size_t>(asg[static_cast<std::size_t>(p)])];
  }
  return out;
}

const std::vector<double>& InfluenceDiagram::cpt(VarIndex chance) const {
  const auto it = cpts_.find(chance);
  if (it == cpts_.end()) throw InternalError("cpt requested for non-chance variable");
  return it->second;
}

const std::vector<std::uint8_t>& InfluenceDiagram::availability(VarIndex decision) const {
  const auto it = availability_.find(decision);
  if (it == availability_.end()) throw InternalError("availability requested for non-decision variable");
  return it->second;
}

InfluenceDiagram InfluenceDiagram::with_risk_aversion(double gamma) const {
  if (gamma < 0.0) throw PreconditionError("risk aversion must be >= 0");
  InfluenceDiagram d = *this;
  if (gamma > 0.0) {
    d.spec_.kind = UtilityFunction::Kind::Exponential;
    d.spec_.risk_aversion = gamma;
  } else {
    d.spec_.kind = UtilityFunction::Kind::Linear;
    d.spec_.risk_aversion.reset();
  }
  d.spec_.u0.reset();
  d.spec_.uinf.reset();
  d.finalize();
  return d;
}

bool InfluenceDiagram::operator==(const InfluenceDiagram& o) const {
  return name_ == o.name_ && value_unit_ == o.value_unit_ && vars_ == o.vars_ &&
         utility_ == o.utility_ && cpts_ == o.cpts_ && availability_ == o.availability_ &&
         values_ == o.values_ && spec_ == o.spec_ && evidence_ == o.evidence_;
}

// ---------------------------------------------------------------------------
// Serialization

std::string InfluenceDiagram::to_document() const {
  ordered_json doc;
  doc["name"] = name_;
  doc["value_unit"] = value_unit_;
  doc["nodes"] = ordered_json::array();
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const Variable& v = vars_[i];
    ordered_json jn;
    jn["id"] = v.id;
    jn["kind"] = std::string(to_string(v.kind));
    ordered_json parents = ordered_json::array();
    for (VarIndex p : v.parents) parents.push_back(var(p).id);
    const auto vi = static_cast<VarIndex>(i);
    switch (v.kind) {
      case VarKind::Chance: {
        jn["states"] = v.states;
        jn["parents"] = parents;
        const auto& flat = cpts_.at(vi);
        const std::size_t width = v.states.size();
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < flat.size() / width; ++r) {
          ordered_json row = ordered_json::array();
          for (std::size_t c = 0; c < width; ++c) row.push_back(flat[r * width + c]);
          rows.push_back(std::move(row));
        }
        jn["cpt"] = std::move(rows);
        break;
      }
      case VarKind::Decision: {
        jn["alternatives"] = v.states;
        jn["parents"] = parents;
        const auto& flat = availability_.at(vi);
        if (std::find(flat.begin(), flat.end(), 0) != flat.end()) {
          const std::size_t width = v.states.size();
          ordered_json rows = ordered_json::array();
          for (std::size_t r = 0; r < flat.size() / width; ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < width; ++c) row.push_back(static_cast<int>(flat[r * width + c]));
            rows.push_back(std::move(row));
          }
          jn["availability"] = std::move(rows);
        }
        break;
      }
      case VarKind::Utility:
        jn["parents"] = parents;
        jn["values"] = values_;
        break;
    }
    doc["nodes"].push_back(std::move(jn));
  }
  ordered_json ju;
  ju["type"] = spec_.kind == UtilityFunction::Kind::Exponential ? "exponential" : "linear";
  if (spec_.risk_aversion) ju["risk_aversion"] = *spec_.risk_aversion;
  if (spec_.u0) ju["u0"] = *spec_.u0;
  if (spec_.uinf) ju["uinf"] = *spec_.uinf;
  doc["utility_function"] = std::move(ju);
  if (!evidence_.empty()) {
    ordered_json je;
    for (const auto& [v, s] : evidence_)
      je[var(v).id] = var(v).states[static_cast<std::size_t>(s)];
    doc["evidence"] = std::move(je);
  }
  return doc.dump(2);
}

}  // namespace dcirc
