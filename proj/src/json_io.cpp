#include "pbnd/json_io.hpp"

#include <cmath>
#include <set>
#include <string>

namespace pbnd {

Json number_or_inf(double v) {
  if (std::isinf(v) && v > 0.0) return "inf";
  return v;
}

double read_number_or_inf(const Json& j, const char* field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "inf") return kInf;
  throw SchemaError(std::string("field '") + field + "' must be a number or \"inf\"");
}

namespace {

void check_keys(const Json& doc, const std::set<std::string>& required,
                const std::set<std::string>& optional) {
  if (!doc.is_object()) throw SchemaError("document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!required.count(key) && !optional.count(key))
      throw SchemaError("unknown field '" + key + "'");
  }
  for (const auto& key : required) {
    if (!doc.contains(key)) throw SchemaError("missing field '" + key + "'");
  }
}

long long get_int(const Json& doc, const char* field) {
  const Json& j = doc.at(field);
  if (!j.is_number_integer()) throw SchemaError(std::string("field '") + field + "' must be an integer");
  return j.get<long long>();
}

double get_number(const Json& doc, const char* field) {
  const Json& j = doc.at(field);
  if (!j.is_number()) throw SchemaError(std::string("field '") + field + "' must be a number");
  return j.get<double>();
}

std::vector<double> get_numbers(const Json& doc, const char* field, bool allow_inf) {
  const Json& j = doc.at(field);
  if (!j.is_array()) throw SchemaError(std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (allow_inf) {
      out.push_back(read_number_or_inf(v, field));
    } else {
      if (!v.is_number()) throw SchemaError(std::string("field '") + field + "' must hold numbers");
      out.push_back(v.get<double>());
    }
  }
  return out;
}

NodeId to_node(long long v, const char* what) {
  if (v < 0) throw ValidationError(std::string(what) + " must be nonnegative");
  return static_cast<NodeId>(v);
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const Json doc = parse_document(text);
  check_keys(doc, {"n", "arcs", "s", "t", "r", "c", "gamma", "B"}, {"ybar"});

  Instance inst;
  inst.graph.n = to_node(get_int(doc, "n"), "n");
  const Json& arcs = doc.at("arcs");
  if (!arcs.is_array()) throw SchemaError("field 'arcs' must be an array");
  for (const Json& a : arcs) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
      throw SchemaError("each arc must be a [tail, head] pair of integers");
    inst.graph.arcs.push_back({to_node(a[0].get<long long>(), "arc tail"),
                               to_node(a[1].get<long long>(), "arc head")});
  }
  inst.s = to_node(get_int(doc, "s"), "s");
  inst.t = to_node(get_int(doc, "t"), "t");
  inst.r = get_number(doc, "r");
  inst.c = get_numbers(doc, "c", false);
  inst.gamma = get_numbers(doc, "gamma", false);
  inst.B = get_number(doc, "B");
  if (doc.contains("ybar")) {
    inst.ybar = get_numbers(doc, "ybar", true);
  } else {
    inst.ybar.assign(inst.graph.m(), kInf);
  }
  validate(inst);
  return inst;
}

Json to_json(const Instance& inst) {
  Json doc;
  doc["n"] = inst.graph.n;
  Json arcs = Json::array();
  for (const Arc& a : inst.graph.arcs) arcs.push_back({a.tail, a.head});
  doc["arcs"] = std::move(arcs);
  doc["s"] = inst.s;
  doc["t"] = inst.t;
  doc["r"] = inst.r;
  doc["c"] = inst.c;
  doc["gamma"] = inst.gamma;
  if (!inst.unbounded()) {
    Json yb = Json::array();
    for (double v : inst.ybar) yb.push_back(number_or_inf(v));
    doc["ybar"] = std::move(yb);
  }
  doc["B"] = inst.B;
  return doc;
}

std::string write_instance(const Instance& inst) { return to_json(inst).dump() + "\n"; }

Json to_json(const Solution& sol) {
  Json doc;
  doc["x"] = sol.x;
  Json y = Json::array();
  for (double v : sol.y) y.push_back(number_or_inf(v));
  doc["y"] = std::move(y);
  doc["cost"] = number_or_inf(sol.cost);
  doc["achievedR"] = number_or_inf(sol.achievedR);
  return doc;
}

std::string write_solution(const Solution& sol) { return to_json(sol).dump() + "\n"; }

Solution parse_solution(const std::string& text) {
  const Json doc = parse_document(text);
  check_keys(doc, {"x", "y", "cost", "achievedR"}, {"meta"});
  Solution sol;
  const Json& x = doc.at("x");
  if (!x.is_array()) throw SchemaError("field 'x' must be an array");
  for (const Json& v : x) {
    if (!v.is_number_integer()) throw SchemaError("field 'x' must hold 0/1 integers");
    sol.x.push_back(v.get<int>());
  }
  sol.y = get_numbers(doc, "y", true);
  sol.cost = read_number_or_inf(doc.at("cost"), "cost");
  sol.achievedR = read_number_or_inf(doc.at("achievedR"), "achievedR");
  if (sol.x.size() != sol.y.size()) throw DimensionMismatch("x and y differ in length");
  return sol;
}

}  // namespace pbnd
