#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mpmdl/error.hpp"
#include "mpmdl/model.hpp"

namespace mpmdl {

namespace detail {

inline void reject_unknown_fields(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                                  const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ParseError(where + ": unknown field '" + key + "'");
  }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

inline double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

inline int require_int(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

inline bool require_bool(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_boolean()) throw ParseError(where + "." + key + ": expected true/false");
  return v.get<bool>();
}

}  // namespace detail

inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["takt_s"] = inst.takt_s;
  doc["rates"] = {{"e1", inst.rates.ventilation},
                  {"e2", inst.rates.lighting},
                  {"e3", inst.rates.disassembly},
                  {"e4", inst.rates.standby}};
  auto lines = nlohmann::ordered_json::array();
  for (const auto& line : inst.lines) {
    nlohmann::ordered_json l;
    l["line_index"] = line.line_index;
    l["vehicle_model"] = vehicle_model_name(line.vehicle_model);
    auto tasks = nlohmann::ordered_json::array();
    for (const auto& t : line.tasks) {
      tasks.push_back({{"id", t.id},
                       {"time_s", t.time_s},
                       {"energy_rate", t.energy_rate},
                       {"hazardous", t.hazardous},
                       {"high_value", t.high_value}});
    }
    l["tasks"] = std::move(tasks);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [from, to] : line.precedence.edges()) edges.push_back({from, to});
    l["edges"] = std::move(edges);
    lines.push_back(std::move(l));
  }
  doc["lines"] = std::move(lines);
  return doc;
}

inline std::string instance_to_string(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

/// Parses and validates an instance document.
inline Instance instance_from_json(const nlohmann::json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw ParseError("instance: expected a JSON object");
  reject_unknown_fields(doc, {"takt_s", "rates", "lines"}, "instance");
  Instance inst;
  inst.takt_s = require_number(doc, "takt_s", "instance");
  const auto& rates = require(doc, "rates", "instance");
  if (!rates.is_object()) throw ParseError("instance.rates: expected an object");
  reject_unknown_fields(rates, {"e1", "e2", "e3", "e4"}, "instance.rates");
  inst.rates.ventilation = require_number(rates, "e1", "instance.rates");
  inst.rates.lighting = require_number(rates, "e2", "instance.rates");
  inst.rates.disassembly = require_number(rates, "e3", "instance.rates");
  inst.rates.standby = require_number(rates, "e4", "instance.rates");

  const auto& lines = require(doc, "lines", "instance");
  if (!lines.is_array()) throw ParseError("instance.lines: expected an array");
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string where = "instance.lines[" + std::to_string(li) + "]";
    const auto& l = lines[li];
    if (!l.is_object()) throw ParseError(where + ": expected an object");
    reject_unknown_fields(l, {"line_index", "vehicle_model", "tasks", "edges"}, where);
    LineSpec line;
    line.line_index = require_int(l, "line_index", where);
    const auto& model = require(l, "vehicle_model", where);
    if (!model.is_string()) throw ParseError(where + ".vehicle_model: expected a string");
    auto parsed = parse_vehicle_model(model.get<std::string>());
    if (!parsed) throw ParseError(where + ".vehicle_model: expected fuel, pev or mixed");
    line.vehicle_model = *parsed;

    const auto& tasks = require(l, "tasks", where);
    if (!tasks.is_array()) throw ParseError(where + ".tasks: expected an array");
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
      const std::string tw = where + ".tasks[" + std::to_string(ti) + "]";
      const auto& t = tasks[ti];
      if (!t.is_object()) throw ParseError(tw + ": expected an object");
      reject_unknown_fields(t, {"id", "time_s", "energy_rate", "hazardous", "high_value"}, tw);
      Task task;
      task.id = require_int(t, "id", tw);
      task.time_s = require_number(t, "time_s", tw);
      task.energy_rate = require_number(t, "energy_rate", tw);
      task.hazardous = require_bool(t, "hazardous", tw);
      task.high_value = require_bool(t, "high_value", tw);
      line.tasks.push_back(task);
    }

    const auto& edges = require(l, "edges", where);
    if (!edges.is_array()) throw ParseError(where + ".edges: expected an array");
    std::vector<Edge> edge_list;
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
      const auto& e = edges[ei];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw ParseError(where + ".edges[" + std::to_string(ei) + "]: expected [n, m]");
      }
      edge_list.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    line.precedence = PrecedenceGraph(line.size(), std::move(edge_list));
    inst.lines.push_back(std::move(line));
  }
  return validate_instance(std::move(inst));
}

inline Instance instance_from_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance: malformed JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

inline Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_string(buf.str());
}

inline void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path);
  out << instance_to_string(inst);
  if (!out) throw Error(Errc::Io, "write failed for " + path);
}

/// FNV-1a over the canonical serialization; stable across platforms.
inline std::uint64_t instance_hash(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_to_string(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return s;
}

}  // namespace mpmdl
